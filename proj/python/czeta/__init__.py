"""High-precision cyclotomic multiple Hurwitz zeta values and identity residuals."""

from ._core import (
    ConfigError,
    ConsistencyError,
    DivergenceError,
    DomainError,
    Error,
    GenerationError,
    ParseError,
    PoleError,
    PreconditionError,
    PrecisionError,
    Value,
    check,
    cmhzv,
    cmzv,
    default_precision,
    expansion_scaling,
    generate_cases,
    hat_li,
    hat_ti,
    identities,
    jet_rhs_closed_form,
    li,
    mhs,
    mhs_hurwitz,
    mtv,
    mtv_T,
    phi,
    phi_ext,
    phi_general,
    run_suite,
    set_working_precision,
    sym_li_bracket,
    working_precision,
)

__all__ = [name for name in dir() if not name.startswith("_")]
