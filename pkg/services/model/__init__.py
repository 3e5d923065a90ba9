# Forward-model services: forcing, filter, implicit operators and the two flow models

from .burgers_service import burgers_step_explicit, burgers_step_implicit_single
from .euler_service import euler_step_explicit, euler_step_implicit_single
from .filter_service import sixth_order_filter
from .forcing_service import forcing_amplitude, inlet_value
from .operator_service import jacobi_sweep, operator_residual, relax
from .step_service import (
    SCHEME_EXPLICIT,
    SCHEME_IMPLICIT,
    advance,
    advance_ensemble,
    forcing_for,
    impose_boundaries,
    step_field,
)

__all__ = [
    "burgers_step_explicit",
    "burgers_step_implicit_single",
    "euler_step_explicit",
    "euler_step_implicit_single",
    "sixth_order_filter",
    "forcing_amplitude",
    "inlet_value",
    "jacobi_sweep",
    "operator_residual",
    "relax",
    "SCHEME_EXPLICIT",
    "SCHEME_IMPLICIT",
    "advance",
    "advance_ensemble",
    "forcing_for",
    "impose_boundaries",
    "step_field",
]
