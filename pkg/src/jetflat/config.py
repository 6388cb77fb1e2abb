"""Run-level configuration and numeric defaults.

The module constants are the knobs every numerical routine consumes; the
RunConfig dataclass is the CLI-facing bundle of the reproducibility-relevant
ones.  Tolerances form a ladder: Newton refinement residual (1e-12) sits
three orders below the value-clustering / equality tolerance (1e-9), which
itself sits well below any quantity of interest.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

# Scan resolutions.  The truncation degree bounds oscillation, so these
# cannot skip extremum basins for the degrees used here.
DEFAULT_CIRCLE_SCAN = 4096
DEFAULT_TORUS_SCAN = 256

# Newton refinement on derivatives.
NEWTON_RESIDUAL = 1e-12
NEWTON_MAX_ITER = 50

# Critical-value clustering and point deduplication.  The point radius is
# wide because Newton stalls anywhere inside the flat basin of a degenerate
# root; distinct critical points of the degrees used here sit far apart.
VALUE_CLUSTER_TOL = 1e-9
POINT_CLUSTER_TOL = 1e-6

# Plateau detection: fraction of scan points with |f'| below this.
PLATEAU_POINT_TOL = 1e-9
PLATEAU_FRACTION = 0.01

# Hessian degeneracy threshold for the Morse test, relative to the
# second-derivative scale.
HESSIAN_DEGENERACY_TOL = 1e-4

# Equality / axiom-check tolerance and the boundary used by the pointwise
# partial order ("marginal" band).
EQUALITY_TOL = 1e-9
ORDER_BOUNDARY_TOL = 1e-12

# Witness tolerances for quasi-autonomy checks.
WITNESS_VALUE_TOL = 1e-9
WITNESS_DERIV_TOL = 1e-9

# Segments whose sup-norm is below this are treated as zero length.
ZERO_SEGMENT_TOL = 1e-12

THREADS_ENV_VAR = "JETFLAT_THREADS"


def thread_cap() -> int:
    """Parallelism cap from the JETFLAT_THREADS environment variable."""
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


@dataclass(frozen=True)
class RunConfig:
    """Reproducibility bundle surfaced by the command line.

    grid_size drives the circle scan directly; the torus scan uses
    grid_size // 16 points per axis (256 at the default 4096).
    """

    grid_size: int = DEFAULT_CIRCLE_SCAN
    tolerance: float = EQUALITY_TOL
    truncation_degree: int = 16
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.grid_size < 64 or self.grid_size & (self.grid_size - 1):
            raise ValueError("grid_size must be a power of two >= 64")
        if not 0.0 < self.tolerance <= 1e-3:
            raise ValueError("tolerance must lie in (0, 1e-3]")
        if self.truncation_degree < 1:
            raise ValueError("truncation_degree must be positive")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be 'json' or 'csv'")

    @property
    def torus_grid(self) -> int:
        return max(64, self.grid_size // 16)
