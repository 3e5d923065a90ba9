"""Twin experiment domain models"""

from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .flow_models import BurgersModel, EulerModel
from .grid_models import GridPair, StateField

FlowModel = Union[BurgersModel, EulerModel]


class TwinExperiment(BaseModel):
    """Everything needed to run truth generation and assimilation"""

    fine_model: FlowModel
    coarse_model: FlowModel
    pair: GridPair
    truth_params: List[float]
    amplitude_period_ratio: Optional[float] = None
    prior_mean: List[float]
    prior_variance: List[float]
    param_inflation: List[float]
    n_ensemble: int = Field(ge=2)
    # Internal units (already scaled by the model's observation scale)
    obs_noise_variance: float = Field(ge=0.0)
    obs_every_n_steps: int = Field(gt=0)
    obs_window: Tuple[float, float]
    spinup_time: float = Field(default=0.0, ge=0.0)
    reset_clock_after_spinup: bool = False
    da_window: float = Field(gt=0.0)
    snapshot_times: List[float] = Field(default_factory=list)
    seed: int = 0
    smoothing_relaxation: float = Field(default=0.5, gt=0.0, le=1.0)
    enable_state_correction: bool = True
    enable_smoothing: bool = True
    n_jobs: int = 1

    @model_validator(mode="after")
    def _check_windows(self):
        start, end = self.obs_window
        grid = self.pair.fine
        if not (grid.origin <= start < end <= grid.origin + grid.length + 1e-12):
            raise ValueError(f"observation window {self.obs_window} is not inside the domain")
        return self

    @property
    def dt(self) -> float:
        return self.fine_model.dt

    @property
    def n_steps(self) -> int:
        return int(round(self.da_window / self.dt))

    @property
    def n_spinup_steps(self) -> int:
        return int(round(self.spinup_time / self.dt))

    @property
    def variables(self) -> List[str]:
        return self.fine_model.variables

    @property
    def observed_variable(self) -> str:
        return self.fine_model.momentum_variable


class TruthRecord(BaseModel):
    """Truth trajectory restricted to what the harness needs"""

    steps: np.ndarray
    times: np.ndarray
    # Observed/momentum variable on the fine grid at each recorded step
    fields: np.ndarray
    theta: np.ndarray
    snapshots: Dict[float, StateField] = Field(default_factory=dict)
    variable: str

    class Config:
        arbitrary_types_allowed = True

    def field_at_step(self, step: int) -> np.ndarray:
        idx = int(np.searchsorted(self.steps, step))
        if idx >= len(self.steps) or self.steps[idx] != step:
            raise KeyError(step)
        return self.fields[idx]


class DiagnosticsSeries(BaseModel):
    """Per-analysis diagnostics"""

    times: np.ndarray
    theta_mean: np.ndarray
    theta_std: np.ndarray
    theta_truth: np.ndarray
    rmse: np.ndarray
    gamma_max: np.ndarray
    gamma_hf: np.ndarray
    smoothing_ratio: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def _check_series(self):
        n = len(self.times)
        for name in ("theta_mean", "theta_std", "theta_truth", "rmse", "gamma_max", "gamma_hf", "smoothing_ratio"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"series '{name}' has length {len(getattr(self, name))}, expected {n}")
        if n > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("diagnostic times must be strictly increasing")
        return self

    @property
    def theta_ci_low(self) -> np.ndarray:
        """Lower end of the 95% credible interval, mean - 1.96 std."""
        return self.theta_mean - 1.96 * self.theta_std

    @property
    def theta_ci_high(self) -> np.ndarray:
        return self.theta_mean + 1.96 * self.theta_std


class Snapshot(BaseModel):
    time: float
    estimate: StateField
    truth: StateField


class ExperimentResult(BaseModel):
    """Diagnostics plus final states of a twin experiment"""

    diagnostics: DiagnosticsSeries
    final_fine: StateField
    final_theta_mean: np.ndarray
    snapshots: List[Snapshot] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True

    @field_validator("final_theta_mean", mode="before")
    @classmethod
    def _as_array(cls, value):
        return np.atleast_1d(np.asarray(value, dtype=float))
