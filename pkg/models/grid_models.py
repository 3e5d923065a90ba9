"""Grid domain models: uniform 1D grids, fine/coarse pairs and fields living on them"""

from typing import Dict, List

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator


class Grid1D(BaseModel):
    """Uniform 1D node set"""

    n_nodes: int = Field(gt=1)
    spacing: float = Field(gt=0.0)
    origin: float = 0.0

    class Config:
        # Grids are used as cache keys for projection matrices
        frozen = True

    @classmethod
    def from_elements(cls, n_elements: int, domain_length: float, origin: float = 0.0):
        """Build a grid from an element count (N elements -> N + 1 nodes)."""
        return cls(
            n_nodes=n_elements + 1,
            spacing=domain_length / n_elements,
            origin=origin,
        )

    @property
    def n_elements(self) -> int:
        return self.n_nodes - 1

    @property
    def length(self) -> float:
        return self.n_elements * self.spacing

    @property
    def nodes(self) -> np.ndarray:
        return self.origin + self.spacing * np.arange(self.n_nodes, dtype=float)


class GridPair(BaseModel):
    """Fine grid and its suppression-coarsened companion"""

    fine: Grid1D
    coarse: Grid1D
    r_c: int = Field(gt=0)

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_nesting(self):
        if self.fine.n_elements != self.coarse.n_elements * self.r_c:
            raise ValueError(
                f"coarse grid with {self.coarse.n_elements} elements is not the "
                f"r_C={self.r_c} coarsening of {self.fine.n_elements} elements"
            )
        if not np.isclose(self.coarse.spacing, self.fine.spacing * self.r_c, rtol=1e-12):
            raise ValueError("coarse spacing must equal fine spacing times r_C")
        return self


class StateField(BaseModel):
    """Per-node values of one or more conserved variables on a grid"""

    grid: Grid1D
    variables: Dict[str, np.ndarray]

    class Config:
        arbitrary_types_allowed = True

    @field_validator("variables")
    @classmethod
    def _as_float_arrays(cls, value):
        return {name: np.asarray(arr, dtype=float) for name, arr in value.items()}

    @model_validator(mode="after")
    def _check_lengths(self):
        for name, arr in self.variables.items():
            if arr.shape != (self.grid.n_nodes,):
                raise ValueError(
                    f"variable '{name}' has shape {arr.shape}, expected ({self.grid.n_nodes},)"
                )
        return self

    @property
    def names(self) -> List[str]:
        return list(self.variables.keys())

    def __getitem__(self, name: str) -> np.ndarray:
        return self.variables[name]

    def stacked(self) -> np.ndarray:
        """Variables as an array of shape (n_variables, n_nodes)."""
        return np.stack([self.variables[name] for name in self.names])

    def to_vector(self) -> np.ndarray:
        """Variables concatenated in declaration order."""
        return self.stacked().reshape(-1)

    @classmethod
    def from_stacked(cls, grid: Grid1D, names: List[str], values: np.ndarray):
        values = np.asarray(values, dtype=float).reshape(len(names), grid.n_nodes)
        return cls(grid=grid, variables={n: values[i].copy() for i, n in enumerate(names)})

    def with_stacked(self, values: np.ndarray) -> "StateField":
        return StateField.from_stacked(self.grid, self.names, values)
