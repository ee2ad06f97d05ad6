from ._core import (
    CapError,
    InputError,
    PermGroup,
    decide,
    pk_exact,
    pk_montecarlo,
    tower_order,
    zeta,
)

__all__ = [
    "CapError",
    "InputError",
    "PermGroup",
    "decide",
    "pk_exact",
    "pk_montecarlo",
    "tower_order",
    "zeta",
]
