"""Grid Factory - fine grid and its coarsened companion"""

import logging

from models import Grid1D, GridPair
from schemas import GridSection
from utils import ConfigurationError

logger = logging.getLogger("menkf_app")


class GridFactory:
    """Factory for grid pairs with the element-count and divisibility rules applied."""

    @staticmethod
    def create_pair(section: GridSection) -> GridPair:
        """N elements over the domain -> N + 1 fine nodes, coarsened by r_C."""
        fine = Grid1D.from_elements(section.n_elements, section.domain_length)
        pair = GridFactory.coarsen(fine, section.coarsening_ratio)
        logger.info(
            f"FACTORY: grid pair with {fine.n_elements} fine / {pair.coarse.n_elements} coarse elements "
            f"(dx={fine.spacing:.6g}, r_C={pair.r_c})"
        )
        return pair

    @staticmethod
    def coarsen(fine: Grid1D, r_c: int) -> GridPair:
        """Suppression coarsening: keep every r_c-th fine node, both endpoints included."""
        if r_c < 1:
            raise ConfigurationError(
                f"coarsening ratio must be positive, got {r_c}", key="grid.coarsening_ratio"
            )
        if fine.n_elements % r_c != 0:
            raise ConfigurationError(
                f"{fine.n_elements} fine elements are not divisible by coarsening ratio {r_c}",
                key="grid.coarsening_ratio",
                context={"n_elements": fine.n_elements, "coarsening_ratio": r_c},
            )
        if r_c == 1:
            coarse = fine
        else:
            coarse = Grid1D(
                n_nodes=fine.n_elements // r_c + 1,
                spacing=fine.spacing * r_c,
                origin=fine.origin,
            )
        return GridPair(fine=fine, coarse=coarse, r_c=r_c)
