"""Multigrid EnKF state models"""

from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .flow_models import BurgersModel, EulerModel
from .grid_models import GridPair, StateField
from .kalman_models import Ensemble


class MenkfState(BaseModel):
    """Single fine-grid simulation plus the coarse Dual EnKF ensemble"""

    fine_state: StateField
    ensemble: Ensemble
    theta_mean: np.ndarray
    pair: GridPair
    cycle_index: int = 0
    time: float = 0.0

    class Config:
        arbitrary_types_allowed = True

    @field_validator("theta_mean", mode="before")
    @classmethod
    def _as_array(cls, value):
        return np.atleast_1d(np.asarray(value, dtype=float))

    @model_validator(mode="after")
    def _check_layout(self):
        if self.fine_state.grid != self.pair.fine:
            raise ValueError("fine state does not live on the fine grid of the pair")
        expected = len(self.fine_state.names) * self.pair.coarse.n_nodes
        if self.ensemble.state_dim != expected:
            raise ValueError(
                f"ensemble state dimension {self.ensemble.state_dim} != coarse state dimension {expected}"
            )
        if self.theta_mean.shape != (self.ensemble.n_params,):
            raise ValueError("theta_mean must have one entry per parameter")
        return self

    @property
    def variables(self):
        return self.fine_state.names


class AnalysisReport(BaseModel):
    """Intermediate products of one MEnKF analysis, kept for diagnostics"""

    state: MenkfState
    previous_fine: StateField
    forecast_fine: StateField
    corrected_fine: Optional[StateField] = None
    smoothing_ratio: Optional[float] = None

    class Config:
        arbitrary_types_allowed = True


class MenkfSettings(BaseModel):
    """Fixed ingredients of the MEnKF loop"""

    fine_model: Union[BurgersModel, EulerModel]
    coarse_model: Union[BurgersModel, EulerModel]
    param_inflation: List[float]
    smoothing_relaxation: float = Field(default=0.5, gt=0.0, le=1.0)
    enable_state_correction: bool = True
    enable_smoothing: bool = True
    n_jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_models(self):
        if type(self.fine_model) is not type(self.coarse_model):
            raise ValueError("fine and coarse models must be of the same kind")
        return self
