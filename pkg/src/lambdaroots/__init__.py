"""Exact computations around Carmichael lambda and maximal-order residues.

Core layers:

- arith: factorization and the standard multiplicative functions
- unit_group: cyclic structure of the units mod n and the root count R(n)
- characters: the dual group, elementary characters, and exact character sums
- moments: counting functions, moment sums, and their exact decompositions
- constants: the Euler-product constants with certified error bounds
"""

from .arith import (
    FactoredInt,
    MultiplicativeProfile,
    carmichael_lambda,
    euler_phi,
    factorize,
    gcd,
    mobius,
    multiplicative_order,
    omega,
    profile,
    rad,
)
from .characters import (
    Character,
    CharacterCoefficient,
    b_sum,
    character_group,
    coefficient,
    rho,
    verify_decomposition,
    verify_t_expansion,
)
from .constants import (
    ConstantValue,
    EulerProductSpec,
    artin_constant,
    f_of_K,
    rho1_root,
    stephens_constant,
    theorem12_constant,
    theorem13_constant,
)
from .moments import (
    MomentConfig,
    SweepReport,
    corollary_density,
    mean_sum,
    n_count,
    p_count,
    phi_phi_mean,
    phi_phi_sum,
    second_moment,
    sigma1_direct,
    sigma1_gcd_form,
)
from .unit_group import (
    LambdaRootCount,
    UnitGroupStructure,
    decompose,
    e_membership,
    e_subgroup_exponent,
    is_lambda_primitive_root,
    r_count,
    r_count_bruteforce,
)

__version__ = "0.1.0"
