"""Exact model of a one-parameter nonexpansive semigroup on piecewise-linear
functions over {-1} u [0, inf), whose Cesaro means of the orbit of 0 tend to 0
although 0 is not a common fixed point."""
from .cesaro import CesaroResult, ZeroOrbitMean, cesaro_quadrature, cesaro_residual, cesaro_zero_exact
from .pl_function import (
    CMembership,
    DomainError,
    OmegaFn,
    StructureError,
    alpha_fn,
    canonicalize,
    constant,
    dumps,
    evaluate,
    in_C,
    integrate,
    lincomb,
    loads,
    pl_max,
    pl_min,
    sup_dist,
)
from .semigroup import (
    ZERO,
    Decomposition,
    Family,
    FixedPointFamily,
    apply,
    apply_basic,
    decompose,
    fixed_point,
    is_common_fixed_point,
    orbit_zero_closed_form,
    v,
    w,
)
from .verify import CheckReport, InstanceGen, gen_random_C, run_all, run_suite

__version__ = "0.1.0"
