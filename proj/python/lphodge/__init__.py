"""Vanishing thresholds for L^p cohomology and discrete p-Hodge solvers."""

from ._lphodge import (
    gromov_table,
    gromov_table_csv,
    high_threshold,
    low_threshold,
    pinched,
    solve,
    symmetric,
    verify,
)

__all__ = [
    "gromov_table",
    "gromov_table_csv",
    "high_threshold",
    "low_threshold",
    "pinched",
    "solve",
    "symmetric",
    "verify",
]
