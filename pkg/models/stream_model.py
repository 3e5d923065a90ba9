"""Seeded random stream model"""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, field_validator

MAX_U64 = 2**64 - 1


class SeededStream(BaseModel):
    """Gaussian source fully determined by a master seed and a lineage of labels.

    The underlying bit generator is Philox (counter based) keyed by
    SeedSequence(master_seed, spawn_key=lineage), so streams never share state.
    """

    master_seed: int = Field(ge=0, le=MAX_U64)
    lineage: Tuple[int, ...] = ()

    _generator: np.random.Generator = PrivateAttr(default=None)

    class Config:
        frozen = True

    @field_validator("lineage", mode="before")
    @classmethod
    def _labels_are_u64(cls, value):
        labels = tuple(int(v) for v in value)
        for label in labels:
            if label < 0 or label > MAX_U64:
                raise ValueError(f"lineage label {label} is not a 64-bit unsigned integer")
        return labels

    def model_post_init(self, __context):
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=self.lineage)
        self._generator = np.random.Generator(np.random.Philox(seq))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def child(self, *labels: int) -> "SeededStream":
        """Stream whose lineage extends this one; independent of this stream's draws."""
        return SeededStream(master_seed=self.master_seed, lineage=self.lineage + tuple(labels))
