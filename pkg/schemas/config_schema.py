from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator, model_validator
from typing_extensions import Annotated

MAX_SEED = 2**64 - 1


class BurgersSection(BaseModel):
    """Viscous Burgers model, nondimensionalized with u0, lambda and t_c"""

    kind: Literal["burgers"]
    reynolds: float = Field(gt=0.0, description="Reynolds number Re")
    dt: float = Field(gt=0.0, description="Time step in t_c units")
    u0: float = Field(default=1.0, description="Reference (inlet mean) velocity")

    class Config:
        extra = "forbid"


class EulerSection(BaseModel):
    """Inviscid Euler model given by its physical inlet state"""

    kind: Literal["euler"]
    dt: float = Field(gt=0.0, description="Time step in t_c units")
    mach: float = Field(default=0.4, gt=0.0)
    gamma: float = Field(default=1.4, gt=1.0)
    rho0: float = Field(default=1.17, gt=0.0, description="Inlet density [kg/m^3]")
    T0: float = Field(default=300.0, gt=0.0, description="Inlet temperature [K]")
    gas_constant: float = Field(default=287.05, gt=0.0, description="Specific gas constant [J/(kg K)]")
    filter_strength: float = Field(default=1.0, ge=0.0, le=1.0)

    class Config:
        extra = "forbid"


ModelSection = Annotated[Union[BurgersSection, EulerSection], Field(discriminator="kind")]


class GridSection(BaseModel):
    # Element counts: N elements -> N + 1 nodes
    n_elements: int = Field(gt=1)
    domain_length: float = Field(gt=0.0)
    coarsening_ratio: int = Field(default=1, gt=0)

    class Config:
        extra = "forbid"


class FilterSection(BaseModel):
    """Dual EnKF settings; give either obs_every_n_steps or analysis_frequency"""

    n_ensemble: int = Field(ge=2)
    obs_noise_variance: float = Field(ge=0.0, description="R in units of the observed variable")
    obs_every_n_steps: Optional[int] = Field(default=None, gt=0)
    analysis_frequency: Optional[float] = Field(default=None, gt=0.0, description="f_a = t_c / t_a")
    param_prior_mean: List[float] = Field(min_length=1)
    param_prior_variance: List[float] = Field(min_length=1)
    param_inflation: List[float] = Field(min_length=1)

    class Config:
        extra = "forbid"

    @field_validator("param_prior_variance", "param_inflation")
    @classmethod
    def _non_negative(cls, value):
        if any(v < 0 for v in value):
            raise ValueError("variances must be non-negative")
        return value

    @model_validator(mode="after")
    def _one_schedule(self):
        if (self.obs_every_n_steps is None) == (self.analysis_frequency is None):
            raise ValueError("give exactly one of obs_every_n_steps and analysis_frequency")
        return self


class MenkfSection(BaseModel):
    smoothing_relaxation: float = Field(default=0.5, gt=0.0, le=1.0)
    enable_state_correction: bool = True
    enable_smoothing: bool = True
    # None -> MENKF_N_JOBS from the environment
    n_jobs: Optional[int] = Field(default=None, ge=1)

    class Config:
        extra = "forbid"


class ExperimentSection(BaseModel):
    truth_params: List[float] = Field(min_length=1)
    amplitude_period_ratio: Optional[float] = Field(default=None, gt=0.0, description="b in omega_theta = omega / b")
    obs_window: Tuple[float, float]
    spinup_time: float = Field(default=0.0, ge=0.0)
    reset_clock_after_spinup: bool = False
    da_window: float = Field(gt=0.0)
    snapshot_times: List[float] = Field(default_factory=list)

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _check_times(self):
        start, end = self.obs_window
        if not end > start:
            raise ValueError("obs_window must satisfy start < end")
        if any(t < 0 or t > self.da_window for t in self.snapshot_times):
            raise ValueError("snapshot_times must lie inside [0, da_window]")
        return self


class AssimilationConfig(BaseModel):
    """Schema for a complete twin-experiment configuration file"""

    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    output_dir: str = "output"
    model: ModelSection
    grid: GridSection
    filter: FilterSection
    menkf: MenkfSection = Field(default_factory=MenkfSection)
    experiment: ExperimentSection

    class Config:
        extra = "forbid"
        json_schema_extra = {
            "title": "MEnKF twin experiment",
            "example": {
                "seed": 2024,
                "output_dir": "output/burgers_rc4",
                "model": {"kind": "burgers", "reynolds": 200.0, "dt": 0.0002},
                "grid": {"n_elements": 800, "domain_length": 10.0, "coarsening_ratio": 4},
                "filter": {
                    "n_ensemble": 100,
                    "obs_noise_variance": 0.0025,
                    "obs_every_n_steps": 30,
                    "param_prior_mean": [0.0, 0.3],
                    "param_prior_variance": [0.0025, 0.0025],
                    "param_inflation": [1e-8, 1e-8],
                },
                "experiment": {
                    "truth_params": [0.2, 0.0],
                    "obs_window": [0.0, 1.0],
                    "spinup_time": 10.0,
                    "da_window": 19.0,
                },
            },
        }
