"""Model Factory - forward models on the fine and coarse grids"""

import logging
from typing import Optional, Tuple, Union

from pydantic import ValidationError

from models import BurgersModel, EulerModel, GridPair
from schemas import BurgersSection, EulerSection
from utils import ConfigurationError

logger = logging.getLogger("menkf_app")

FlowModel = Union[BurgersModel, EulerModel]

# Parameters of the assimilated forcing law per model kind
N_PARAMS = {"burgers": 2, "euler": 1}


def configuration_error(error: ValidationError, prefix: Optional[str] = None) -> ConfigurationError:
    """Render pydantic errors as dotted key paths, optionally below prefix."""
    field_errors = {}
    for item in error.errors():
        parts = [prefix] if prefix else []
        for part in item["loc"]:
            # Discriminated-union tags are not config keys
            if parts[-1:] == ["model"] and part in N_PARAMS:
                continue
            parts.append(str(part))
        path = ".".join(parts) or "config"
        field_errors[path] = item["msg"]
    key = next(iter(field_errors), prefix)
    message = "; ".join(f"{path}: {msg}" for path, msg in field_errors.items())
    return ConfigurationError(message, key=key, field_errors=field_errors)


class ModelFactory:
    """Factory for Burgers/Euler models with the CFL and gas-state rules applied."""

    @staticmethod
    def create_models(
        section: Union[BurgersSection, EulerSection], pair: GridPair
    ) -> Tuple[FlowModel, FlowModel]:
        """Returns (fine_model, coarse_model) sharing every setting but the grid."""
        fine = ModelFactory._build(section, pair)
        coarse = fine.with_grid(pair.coarse)
        logger.info(
            f"FACTORY: {section.kind} model on {pair.fine.n_nodes} fine nodes, dt={fine.dt:.6g}"
        )
        return fine, coarse

    @staticmethod
    def _build(section, pair: GridPair) -> FlowModel:
        try:
            if isinstance(section, BurgersSection):
                return BurgersModel(
                    grid=pair.fine, reynolds=section.reynolds, dt=section.dt, u0=section.u0
                )
            return EulerModel(
                grid=pair.fine,
                dt=section.dt,
                gamma=section.gamma,
                rho0=section.rho0,
                T0=section.T0,
                mach=section.mach,
                gas_constant=section.gas_constant,
                filter_strength=section.filter_strength,
            )
        except ValidationError as e:
            logger.error(f"FACTORY: invalid {section.kind} model: {e}")
            raise configuration_error(e, "model") from e

    @staticmethod
    def n_params(kind: str) -> int:
        return N_PARAMS[kind]
