"""Scheme/regime identifiers and the shared parameter record.

A single frozen dataclass carries every knob the closed forms need; each
evaluator reads the subset it cares about.  ``J`` is a real number on purpose:
the formulas are continuous in the user count and the sweeps treat it as a
free axis.  Integer enforcement only matters when actual signatures are drawn,
which is the simulator's job.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Scheme(Enum):
    CLASSICAL = "classical"
    CC_NOMA = "cc-noma"
    CC_OMA = "cc-oma"
    IR_OMA = "ir-oma"


class Regime(Enum):
    SUM_OPTIMAL = "sum"
    TIN = "tin"


@dataclass(frozen=True)
class SchemeParams:
    """Common parameters for all access schemes.

    rho     per-user received SNR per transmission attempt (linear)
    T       number of (re)transmission attempts per frame
    J       total user count (real, >= T)
    eta     non-orthogonality factor in [0, 1]
    sigma2  noise power per dimension (linear)
    B       frequency-bin count
    c_buf   receiver combining-buffer size, normalized by packet length
    L       per-user payload in bits (only the density mapping reads this)

    ``rho = 0`` is storable (the evaluators reject it with DegenerateRate,
    limit values live in :mod:`harqscale.limits`); everything else follows the
    physical ranges.
    """

    rho: float = 1.0
    T: int = 1
    J: float = 1.0
    eta: float = 1.0
    sigma2: float = 1.0
    B: int = 1
    c_buf: float = 10.0
    L: float = 100.0

    def __post_init__(self) -> None:
        for name in ("T", "B"):
            raw = getattr(self, name)
            if raw != int(raw):
                raise ValueError(f"{name} must be an integer, got {raw!r}")
            object.__setattr__(self, name, int(raw))
        if not self.rho >= 0:
            raise ValueError(f"rho must be >= 0, got {self.rho!r}")
        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be > 0, got {self.sigma2!r}")
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T!r}")
        if not self.J >= self.T:
            raise ValueError(f"J must be >= T ({self.T}), got {self.J!r}")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must be in [0, 1], got {self.eta!r}")
        if self.B < 1:
            raise ValueError(f"B must be >= 1, got {self.B!r}")
        if not self.c_buf > 0:
            raise ValueError(f"c_buf must be > 0, got {self.c_buf!r}")
        if not self.L > 0:
            raise ValueError(f"L must be > 0, got {self.L!r}")
