"""Filter domain models: dense Gaussian states, ensembles, anomalies and observations"""

from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class DenseGaussianState(BaseModel):
    """Mean and covariance of a Gaussian state (classical Kalman filter)"""

    mean: np.ndarray
    covariance: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    @field_validator("mean", "covariance", mode="before")
    @classmethod
    def _as_float(cls, value):
        return np.asarray(value, dtype=float)

    @model_validator(mode="after")
    def _check_covariance(self):
        self.mean = np.atleast_1d(self.mean)
        self.covariance = np.atleast_2d(self.covariance)
        n = self.mean.shape[0]
        if self.covariance.shape != (n, n):
            raise ValueError(f"covariance shape {self.covariance.shape} does not match mean ({n},)")
        scale = max(float(np.max(np.abs(self.covariance))), 1e-300)
        if np.max(np.abs(self.covariance - self.covariance.T)) > 1e-10 * scale:
            raise ValueError("covariance is not symmetric")
        trace = float(np.trace(self.covariance))
        if n > 0 and np.min(np.linalg.eigvalsh(self.covariance)) < -1e-10 * max(trace, 1e-300):
            raise ValueError("covariance is not positive semidefinite")
        return self


class Ensemble(BaseModel):
    """N_e member states (rows) with their parameter vectors"""

    members: np.ndarray
    params: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    @field_validator("members", "params", mode="before")
    @classmethod
    def _as_2d(cls, value):
        arr = np.asarray(value, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        return arr

    @model_validator(mode="after")
    def _check_dims(self):
        if self.members.ndim != 2 or self.params.ndim != 2:
            raise ValueError("members and params must be 2D arrays (n_members, dim)")
        if self.members.shape[0] != self.params.shape[0]:
            raise ValueError(
                f"{self.members.shape[0]} members but {self.params.shape[0]} parameter vectors"
            )
        if self.members.shape[0] < 2:
            raise ValueError("an ensemble needs at least 2 members")
        return self

    @property
    def n_members(self) -> int:
        return self.members.shape[0]

    @property
    def state_dim(self) -> int:
        return self.members.shape[1]

    @property
    def n_params(self) -> int:
        return self.params.shape[1]

    @property
    def mean(self) -> np.ndarray:
        return self.members.mean(axis=0)

    @property
    def param_mean(self) -> np.ndarray:
        return self.params.mean(axis=0)

    @property
    def param_std(self) -> np.ndarray:
        return self.params.std(axis=0, ddof=1)

    def covariance(self) -> np.ndarray:
        return np.cov(self.members, rowvar=False, ddof=1)


class AnomalySet(BaseModel):
    """Normalized anomaly matrices, one column per member"""

    X: np.ndarray
    Y: np.ndarray
    Theta: np.ndarray
    E_o: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    @property
    def n_members(self) -> int:
        return self.Y.shape[1]


class ObservationSet(BaseModel):
    """Sensor readings at one analysis instant.

    sensor_nodes are grid-node indices; state_indices are the positions of the
    observed components in the stacked state vector (equal to sensor_nodes for
    single-variable states).
    """

    sensor_nodes: np.ndarray
    values: np.ndarray
    noise_variance: float = Field(ge=0.0)
    state_indices: Optional[np.ndarray] = None
    obs_every_n_steps: int = Field(default=1, gt=0)
    step: int = 0
    time: float = 0.0

    class Config:
        arbitrary_types_allowed = True

    @field_validator("sensor_nodes", "state_indices", mode="before")
    @classmethod
    def _as_index(cls, value):
        if value is None:
            return None
        return np.asarray(value, dtype=np.int64).reshape(-1)

    @field_validator("values", mode="before")
    @classmethod
    def _as_values(cls, value):
        return np.asarray(value, dtype=float).reshape(-1)

    @model_validator(mode="after")
    def _check_sensors(self):
        if self.state_indices is None:
            self.state_indices = self.sensor_nodes.copy()
        if self.sensor_nodes.size and np.any(np.diff(self.sensor_nodes) <= 0):
            raise ValueError("sensor nodes must be strictly increasing")
        if self.sensor_nodes.size and self.sensor_nodes[0] < 0:
            raise ValueError("sensor nodes must be non-negative")
        if not (self.values.shape == self.sensor_nodes.shape == self.state_indices.shape):
            raise ValueError("sensor nodes, state indices and values must share a length")
        return self

    @property
    def n_obs(self) -> int:
        return self.values.shape[0]

    def apply(self, states: np.ndarray) -> np.ndarray:
        """Observation operator H as an index gather; states (..., m) -> (..., N_y)."""
        return np.asarray(states)[..., self.state_indices]


class DualCycleResult(BaseModel):
    """Outcome of one Dual EnKF cycle"""

    ensemble: Ensemble
    state_gain: np.ndarray
    param_gain: np.ndarray
    predicted_obs: np.ndarray

    class Config:
        arbitrary_types_allowed = True
