"""Post-step sanity checks shared by the forward models"""

from typing import List

import numpy as np

from utils import ContractError, NumericalBlowupError, PositivityLossError


def step_index(t: float, dt: float) -> int:
    return int(round(t / dt))


def _location(index, names: List[str]) -> dict:
    # index addresses (..., variable, node); a leading axis is the member
    context = {"node": int(index[-1]), "variable": names[int(index[-2])]}
    if len(index) > 2:
        context["member"] = int(index[0])
    return context


def check_finite(values: np.ndarray, names: List[str], step: int):
    bad = ~np.isfinite(values)
    if np.any(bad):
        context = _location(np.argwhere(bad)[0], names)
        context["step"] = step
        raise NumericalBlowupError(
            f"non-finite value in '{context['variable']}' at node {context['node']} (step {step})",
            context=context,
        )


def check_positive(density: np.ndarray, pressure: np.ndarray, step: int):
    """density and pressure have shape (..., n_nodes)."""
    for name, values in (("rho", density), ("p", pressure)):
        bad = values <= 0.0
        if np.any(bad):
            index = np.argwhere(bad)[0]
            context = {"node": int(index[-1]), "variable": name, "step": step}
            if len(index) > 1:
                context["member"] = int(index[0])
            raise PositivityLossError(
                f"non-positive {name} at node {context['node']} (step {step})",
                context=context,
            )


def check_relaxation(relaxation: float):
    if not 0.0 < relaxation <= 1.0:
        raise ContractError(
            f"relaxation must be in (0, 1], got {relaxation}",
            context={"relaxation": relaxation},
        )


def check_grid(state_grid, model_grid):
    if state_grid != model_grid:
        raise ContractError(
            f"state has {state_grid.n_nodes} nodes but the model grid has {model_grid.n_nodes}",
        )
