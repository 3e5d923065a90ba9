# Models package - Pydantic models for clean domain objects


from .experiment_models import (
    DiagnosticsSeries,
    ExperimentResult,
    FlowModel,
    Snapshot,
    TruthRecord,
    TwinExperiment,
)
from .flow_models import (
    BURGERS_VARIABLES,
    EULER_VARIABLES,
    BurgersModel,
    EulerModel,
    ForcingKind,
    InletForcing,
    ModelOperator,
)
from .grid_models import Grid1D, GridPair, StateField
from .kalman_models import (
    AnomalySet,
    DenseGaussianState,
    DualCycleResult,
    Ensemble,
    ObservationSet,
)
from .menkf_models import AnalysisReport, MenkfSettings, MenkfState
from .stream_model import SeededStream

__all__ = [
    "Grid1D",
    "GridPair",
    "StateField",
    "SeededStream",
    "BURGERS_VARIABLES",
    "EULER_VARIABLES",
    "BurgersModel",
    "EulerModel",
    "FlowModel",
    "ForcingKind",
    "InletForcing",
    "ModelOperator",
    "AnomalySet",
    "DenseGaussianState",
    "DualCycleResult",
    "Ensemble",
    "ObservationSet",
    "AnalysisReport",
    "MenkfState",
    "MenkfSettings",
    "DiagnosticsSeries",
    "ExperimentResult",
    "Snapshot",
    "TruthRecord",
    "TwinExperiment",
]
