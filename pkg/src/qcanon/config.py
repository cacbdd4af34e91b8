"""Numerical thresholds shared by every algorithm in the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative thresholds.

    eps_rank
        pivots and singular values below ``eps_rank * scale`` count as zero.
    eps_eig
        eigenvalue clustering and real-snapping threshold (relative to ``1 + |A|``).
    eps_canon
        snapping threshold used by the case dispatch of the canonical reductions.
    """

    eps_rank: float = 1e-9
    eps_eig: float = 1e-8
    eps_canon: float = 1e-8

    def __post_init__(self):
        for name in ("eps_rank", "eps_eig", "eps_canon"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOL = Tolerance()
