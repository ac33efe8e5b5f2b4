"""Prescribed-curvature solver and conformal geometry lab for disks of revolution."""

from ._courbure import (
    dr_sweep,
    extremal_length,
    modulus_revolution,
    quasimax_trials,
    solve_cap,
    uniformize,
)

__all__ = [
    "dr_sweep",
    "extremal_length",
    "modulus_revolution",
    "quasimax_trials",
    "solve_cap",
    "uniformize",
]
