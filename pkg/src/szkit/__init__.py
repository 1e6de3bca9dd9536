"""Exact and certified computations around the Schinzel-Zassenhaus bound."""

__version__ = "0.1.0"

from .config import Config
from .congruence import (
    certify_square_mod4,
    congruence_witness,
    v_adic_radius,
    verify_mod4,
    verify_prime_congruence,
)
from .geometry import (
    Hedgehog,
    Interval,
    RootEnclosure,
    dubinin_bound,
    house,
    isolate_roots,
    leja_capacity_estimate,
    mahler_measure,
    regular_hedgehog,
    slit_disk_radius,
    unit_circle_roots,
)
from .pipelines import (
    RationalMap,
    UndecidedError,
    check_atoral_bound,
    check_holonomic_bound,
    check_smale_bound,
    check_sz_bound,
    critical_values,
    diagonal_series,
    matveev_bound,
    scan,
)
from .poly import (
    IntPoly,
    cyclotomic,
    is_cyclotomic_product,
    is_perfect_pth_power,
    parse_poly,
    power_sums,
    reciprocal,
    root_power_transform,
)
from .rationality import hankel_determinants, reconstruct_rational
from .series import (
    OdeOperator,
    TruncatedSeries,
    pth_root_series,
    quadratic_branch_ode,
    recurrence_from_ode,
    series_height,
    sqrt_series,
    sz_series,
)
