"""Forward-model domain models: Burgers and Euler configurations, inlet forcing, implicit operators"""

import math
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .grid_models import Grid1D

BURGERS_VARIABLES = ["u"]
EULER_VARIABLES = ["rho", "rho_u", "rho_E"]


class BurgersModel(BaseModel):
    """Viscous 1D Burgers equation, nondimensionalized with u0 and lambda"""

    grid: Grid1D
    reynolds: float = Field(gt=0.0)
    dt: float = Field(gt=0.0)
    u0: float = 1.0
    omega: float = 2.0 * math.pi

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_cfl(self):
        courant = self.courant_number
        if courant >= 1.0:
            raise ValueError(
                f"explicit step is not CFL-stable: dt*|u0|/dx = {courant:.4g} >= 1"
            )
        return self

    @property
    def viscosity(self) -> float:
        return 1.0 / self.reynolds

    @property
    def courant_number(self) -> float:
        return self.dt * abs(self.u0) / self.grid.spacing

    @property
    def variables(self) -> List[str]:
        return BURGERS_VARIABLES

    @property
    def momentum_variable(self) -> str:
        return "u"

    @property
    def observation_scale(self) -> float:
        return 1.0

    def reference_values(self) -> np.ndarray:
        """Uniform u0 on every node, shape (1, n_nodes)."""
        return np.full((1, self.grid.n_nodes), self.u0)

    def with_grid(self, grid: Grid1D) -> "BurgersModel":
        return self.model_copy(update={"grid": grid})


class EulerModel(BaseModel):
    """Inviscid 1D Euler equations for an ideal gas.

    Inputs are the physical inlet state (rho0, T0 in SI, Mach number). The
    solver works in reference units rho0, u_c = u0 + a, lambda and t_c.
    """

    grid: Grid1D
    dt: float = Field(gt=0.0)
    gamma: float = Field(default=1.4, gt=1.0)
    rho0: float = Field(default=1.17, gt=0.0)
    T0: float = Field(default=300.0, gt=0.0)
    mach: float = Field(default=0.4, gt=0.0)
    gas_constant: float = Field(default=287.05, gt=0.0)
    filter_strength: float = Field(default=1.0, ge=0.0, le=1.0)

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_state(self):
        if not self.sound_speed > 0.0:
            raise ValueError("speed of sound must be positive")
        if abs(self.u0 / self.sound_speed - self.mach) > 1e-12:
            raise ValueError("inlet velocity inconsistent with the configured Mach number")
        courant = self.dt * (self.u0 + self.sound_speed) / self.grid.spacing
        if courant >= 1.0:
            raise ValueError(
                f"explicit step is not CFL-stable: dt*(u0+a)/dx = {courant:.4g} >= 1"
            )
        return self

    # Dimensional reference quantities
    @property
    def dimensional_pressure(self) -> float:
        return self.rho0 * self.gas_constant * self.T0

    @property
    def dimensional_sound_speed(self) -> float:
        return math.sqrt(self.gamma * self.dimensional_pressure / self.rho0)

    @property
    def dimensional_velocity(self) -> float:
        return self.mach * self.dimensional_sound_speed

    # Reference-unit quantities
    @property
    def density(self) -> float:
        return 1.0

    @property
    def sound_speed(self) -> float:
        return 1.0 / (1.0 + self.mach)

    @property
    def u0(self) -> float:
        return self.mach / (1.0 + self.mach)

    @property
    def pressure(self) -> float:
        return self.density * self.sound_speed**2 / self.gamma

    @property
    def internal_energy(self) -> float:
        return self.pressure / ((self.gamma - 1.0) * self.density)

    @property
    def total_energy(self) -> float:
        """E0 = e + u0^2 / 2."""
        return self.internal_energy + 0.5 * self.u0**2

    @property
    def omega(self) -> float:
        return 2.0 * math.pi

    @property
    def variables(self) -> List[str]:
        return EULER_VARIABLES

    @property
    def momentum_variable(self) -> str:
        return "rho_u"

    @property
    def observation_scale(self) -> float:
        """One dimensional momentum unit (kg m^-2 s^-1) in reference units.

        rho0 u0 in SI maps to density * u0 in reference units.
        """
        return self.density * self.u0 / (self.rho0 * self.dimensional_velocity)

    def reference_values(self) -> np.ndarray:
        """Inlet reference state (rho0, rho0 u0, rho0 E0) on every node, shape (3, n_nodes)."""
        column = np.array([self.density, self.density * self.u0, self.density * self.total_energy])
        return np.repeat(column[:, None], self.grid.n_nodes, axis=1)

    def with_grid(self, grid: Grid1D) -> "EulerModel":
        return self.model_copy(update={"grid": grid})


class ForcingKind(str, Enum):
    BURGERS_PHASE_AMPLITUDE = "burgers_phase_amplitude"
    EULER_MODULATED_AMPLITUDE = "euler_modulated_amplitude"


class InletForcing(BaseModel):
    """Dirichlet inlet velocity law.

    theta has shape (n_params,) or (n_members, n_params); the latter yields one
    inlet value per member.
    """

    kind: ForcingKind
    theta: np.ndarray
    omega: float
    u0: float
    # b in omega_theta = omega / b; when set the Euler amplitude follows theta0 (1 + sin(omega_theta t))
    amplitude_period_ratio: Optional[float] = Field(default=None, gt=0.0)

    class Config:
        arbitrary_types_allowed = True

    @field_validator("theta", mode="before")
    @classmethod
    def _as_array(cls, value):
        return np.atleast_1d(np.asarray(value, dtype=float))

    @model_validator(mode="after")
    def _check_theta(self):
        expected = 2 if self.kind == ForcingKind.BURGERS_PHASE_AMPLITUDE else 1
        if self.theta.shape[-1] != expected:
            raise ValueError(
                f"{self.kind.value} forcing needs {expected} parameter(s), got {self.theta.shape[-1]}"
            )
        return self

    @property
    def is_truth_mode(self) -> bool:
        return self.amplitude_period_ratio is not None


class ModelOperator(BaseModel):
    """Interior rows of the linearized implicit system Psi x = c.

    Block tridiagonal: arrays lower/diag/upper have shape (..., n_interior, b, b)
    and rhs has shape (..., n_interior, b); row j acts on nodes j, j+1, j+2.
    """

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    class Config:
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def _check_shapes(self):
        if not (self.lower.shape == self.diag.shape == self.upper.shape):
            raise ValueError("operator blocks must share a shape")
        if self.rhs.shape != self.diag.shape[:-1]:
            raise ValueError("right-hand side does not match the operator blocks")
        return self

    @property
    def block_size(self) -> int:
        return self.diag.shape[-1]

    @property
    def n_interior(self) -> int:
        return self.diag.shape[-3]
