"""Sandpile transience laboratory.

Chip-firing dynamics on sinked n^d grids, electrical-network potentials, and
exact constrained-walk combinatorics, with verification suites for the bounds
the laboratory is built around.
"""

from sandpile_lab._core import (
    Config,
    DriveReport,
    GridShape,
    Odometer,
    __version__,
    add_and_stabilize,
    burning_test,
    corner_potential_series,
    corner_to_corner_resistance,
    corridor_count,
    count_end,
    count_end_max,
    drive_to_recurrence,
    effective_resistance,
    monte_carlo_escape,
    neg_binom_sum,
    new_config,
    path_potential,
    potentials,
    prob_corridor,
    render_frames,
    run_suite,
    stabilize,
    tcl_exact,
)

__all__ = [
    "Config",
    "DriveReport",
    "GridShape",
    "Odometer",
    "__version__",
    "add_and_stabilize",
    "burning_test",
    "corner_potential_series",
    "corner_to_corner_resistance",
    "corridor_count",
    "count_end",
    "count_end_max",
    "drive_to_recurrence",
    "effective_resistance",
    "monte_carlo_escape",
    "neg_binom_sum",
    "new_config",
    "path_potential",
    "potentials",
    "prob_corridor",
    "render_frames",
    "run_suite",
    "stabilize",
    "tcl_exact",
]
