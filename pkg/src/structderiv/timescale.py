"""Time scales: nonempty closed subsets of the real line.

Each variant answers membership queries and provides the forward and backward
jump operators, the graininess, point classification, membership in
``T^kappa`` and sequences of points of the scale converging to a dense point.

    >>> Integers().sigma(2)
    3.0
    >>> IntervalUnion([(0, 1), (2, 3)]).mu(1)
    1.0
    >>> QuantumScale(2.0).rho(1)
    0.5
"""

from __future__ import annotations

import bisect
import enum
import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any, ClassVar

from .errors import PointNotInScale, SideNotDense

__all__ = [
    "Density",
    "Side",
    "PointClass",
    "TimeScale",
    "Reals",
    "Integers",
    "UniformGrid",
    "QuantumScale",
    "FiniteSet",
    "IntervalUnion",
    "from_json",
]


class Density(enum.Enum):
    DENSE = "Dense"
    SCATTERED = "Scattered"


class Side(enum.Enum):
    """Side from which an approach sequence converges."""

    BELOW = "FromBelow"
    ABOVE = "FromAbove"
    BOTH = "TwoSided"


@dataclass(frozen=True)
class PointClass:
    """Classification of a point of a time scale.

    At a maximum ``sigma(t) == t`` and ``right`` is reported as dense; the
    ``is_max`` flag tells the two situations apart (likewise on the left).
    """

    right: Density
    left: Density
    is_max: bool
    is_min: bool


class TimeScale:
    """Base class. Subclasses implement membership and the raw jump operators."""

    kind: ClassVar[str] = ""

    # -- variant hooks -----------------------------------------------------
    def contains(self, x: float) -> bool:
        raise NotImplementedError

    def _sigma(self, t: float) -> float:
        raise NotImplementedError

    def _rho(self, t: float) -> float:
        raise NotImplementedError

    def _project(self, t: float, x: float) -> float:
        """Member of the scale near ``x``, on the same side of ``t`` as ``x``.

        Only called for a side on which ``t`` is dense.
        """
        raise NotImplementedError

    def nearest(self, x: float) -> float:
        """Member of the scale closest to ``x``."""
        raise NotImplementedError

    def to_json(self) -> dict[str, Any]:
        raise NotImplementedError

    @property
    def maximum(self) -> float | None:
        return None

    @property
    def minimum(self) -> float | None:
        return None

    # -- public operators --------------------------------------------------
    def _check(self, t: float) -> float:
        t = float(t)
        if not self.contains(t):
            raise PointNotInScale(f"{t!r} is not a point of {self!r}")
        return t

    def sigma(self, t: float) -> float:
        """Forward jump ``inf{s in T : s > t}``; ``t`` itself at the maximum."""
        return self._sigma(self._check(t))

    def rho(self, t: float) -> float:
        """Backward jump ``sup{s in T : s < t}``; ``t`` itself at the minimum."""
        return self._rho(self._check(t))

    def mu(self, t: float) -> float:
        """Graininess ``sigma(t) - t``."""
        t = self._check(t)
        return self._sigma(t) - t

    def classify(self, t: float) -> PointClass:
        t = self._check(t)
        right = Density.SCATTERED if self._sigma(t) > t else Density.DENSE
        left = Density.SCATTERED if self._rho(t) < t else Density.DENSE
        return PointClass(right, left, t == self.maximum, t == self.minimum)

    def in_kappa(self, t: float) -> bool:
        """False only at a left-scattered maximum."""
        t = self._check(t)
        m = self.maximum
        return not (m is not None and t == m and self._rho(m) < m)

    def is_dense_side(self, t: float, side: Side) -> bool:
        """Whether points of the scale accumulate at ``t`` from ``side``."""
        t = self._check(t)
        if side is Side.BOTH:
            return self.is_dense_side(t, Side.BELOW) and self.is_dense_side(t, Side.ABOVE)
        if side is Side.ABOVE:
            return self._sigma(t) == t and t != self.maximum
        return self._rho(t) == t and t != self.minimum

    def approach(
        self,
        t: float,
        side: Side = Side.BOTH,
        start: float | None = None,
        ratio: float = 0.5,
    ) -> Iterator[float]:
        """Points of the scale converging to ``t`` from ``side``.

        The default schedule is ``t -/+ start * ratio**k`` projected into the
        scale with ``start = max(1, |t|) / 16``. Projected points that do not
        move strictly closer to ``t`` are skipped. The sequence ends when the
        offsets vanish in floating point. ``Side.BOTH`` interleaves the two
        one-sided sequences, below first.

            >>> from itertools import islice
            >>> list(islice(Reals().approach(0.0, Side.ABOVE), 3))
            [0.0625, 0.03125, 0.015625]
        """
        t = self._check(t)
        if not 0.0 < ratio < 1.0:
            raise ValueError("ratio must lie in (0, 1)")
        if not self.is_dense_side(t, side):
            raise SideNotDense(f"{t!r} is not dense from {side.value} in {self!r}")
        if start is None:
            start = max(1.0, abs(t)) / 16.0
        if side is Side.BOTH:
            return _interleave(
                self._walk(t, -1.0, start, ratio), self._walk(t, 1.0, start, ratio)
            )
        return self._walk(t, -1.0 if side is Side.BELOW else 1.0, start, ratio)

    def _walk(self, t: float, sign: float, start: float, ratio: float) -> Iterator[float]:
        last = math.inf
        k = 0
        while True:
            delta = start * ratio**k
            x = t + sign * delta
            if delta == 0.0 or x == t:
                return
            s = self._project(t, x)
            d = abs(s - t)
            if 0.0 < d < last and (s - t) * sign > 0:
                last = d
                yield s
            k += 1


def _interleave(a: Iterator[float], b: Iterator[float]) -> Iterator[float]:
    for x, y in zip(a, b):
        yield x
        yield y


@dataclass(frozen=True)
class Reals(TimeScale):
    kind: ClassVar[str] = "reals"

    def contains(self, x: float) -> bool:
        return math.isfinite(x)

    def _sigma(self, t: float) -> float:
        return t

    def _rho(self, t: float) -> float:
        return t

    def _project(self, t: float, x: float) -> float:
        return x

    def nearest(self, x: float) -> float:
        return float(x)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Integers(TimeScale):
    kind: ClassVar[str] = "integers"

    def contains(self, x: float) -> bool:
        return math.isfinite(x) and float(x).is_integer()

    def _sigma(self, t: float) -> float:
        return t + 1.0

    def _rho(self, t: float) -> float:
        return t - 1.0

    def nearest(self, x: float) -> float:
        return float(round(x))

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True)
class UniformGrid(TimeScale):
    """The lattice ``offset + h*Z``.

    Membership is tested on ``(x - offset) / h`` with relative tolerance
    ``rtol``, since steps such as 0.1 have no exact binary multiples.
    The jumps are ``t +/- h`` and the graininess is ``h`` itself, so forward
    differences on the grid are the textbook ``[f(t+h) - f(t)] / h``.
    """

    h: float
    offset: float = 0.0
    rtol: float = 1e-9
    kind: ClassVar[str] = "grid"

    def __post_init__(self) -> None:
        if not (self.h > 0 and math.isfinite(self.h)):
            raise ValueError("grid step must be positive and finite")

    def contains(self, x: float) -> bool:
        if not math.isfinite(x):
            return False
        k = (x - self.offset) / self.h
        return abs(k - round(k)) <= self.rtol * max(1.0, abs(k))

    def _sigma(self, t: float) -> float:
        return t + self.h

    def _rho(self, t: float) -> float:
        return t - self.h

    def mu(self, t: float) -> float:
        self._check(t)
        return float(self.h)

    def nearest(self, x: float) -> float:
        return self.offset + round((x - self.offset) / self.h) * self.h

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "h": self.h, "offset": self.offset}


@dataclass(frozen=True)
class QuantumScale(TimeScale):
    """The powers ``{q**k : k in Z}``, optionally with 0 (their only limit point).

    Membership tolerates a relative error ``rtol`` on ``log_q(x)``. Without
    the origin the set is not closed in R; it is still usable away from 0.
    """

    q: float
    include_zero: bool = True
    rtol: float = 1e-12
    kind: ClassVar[str] = "quantum"

    def __post_init__(self) -> None:
        if not (self.q > 1 and math.isfinite(self.q)):
            raise ValueError("quantum scale needs q > 1")

    def _log_q(self, x: float) -> float:
        return math.log(x) / math.log(self.q)

    def contains(self, x: float) -> bool:
        if x == 0:
            return self.include_zero
        if not (x > 0 and math.isfinite(x)):
            return False
        k = self._log_q(x)
        return abs(k - round(k)) <= self.rtol * max(1.0, abs(k))

    @property
    def minimum(self) -> float | None:
        return 0.0 if self.include_zero else None

    def _sigma(self, t: float) -> float:
        return t * self.q

    def _rho(self, t: float) -> float:
        return t / self.q

    def _project(self, t: float, x: float) -> float:
        # only t = 0 is dense, and only from above
        return self.q ** round(self._log_q(x))

    def nearest(self, x: float) -> float:
        if x <= 0:
            if self.include_zero:
                return 0.0
            raise PointNotInScale(f"no point of {self!r} near {x!r}")
        k = math.floor(self._log_q(x))
        cands = [self.q**k, self.q ** (k + 1)]
        if self.include_zero:
            cands.append(0.0)
        return min(cands, key=lambda s: abs(s - x))

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "q": self.q, "include_zero": self.include_zero}


@dataclass(frozen=True)
class FiniteSet(TimeScale):
    points: tuple[float, ...]
    kind: ClassVar[str] = "finite"

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points)
        if not pts:
            raise ValueError("a time scale must be nonempty")
        if any(not math.isfinite(p) for p in pts):
            raise ValueError("points must be finite")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def maximum(self) -> float:
        return self.points[-1]

    @property
    def minimum(self) -> float:
        return self.points[0]

    def contains(self, x: float) -> bool:
        i = bisect.bisect_left(self.points, x)
        return i < len(self.points) and self.points[i] == x

    def _sigma(self, t: float) -> float:
        i = bisect.bisect_right(self.points, t)
        return self.points[i] if i < len(self.points) else t

    def _rho(self, t: float) -> float:
        i = bisect.bisect_left(self.points, t)
        return self.points[i - 1] if i > 0 else t

    def nearest(self, x: float) -> float:
        i = bisect.bisect_left(self.points, x)
        cands = self.points[max(0, i - 1) : i + 1]
        return min(cands, key=lambda s: abs(s - x))

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "points": list(self.points)}


@dataclass(frozen=True)
class IntervalUnion(TimeScale):
    """Finite union of closed intervals ``[a, b]`` (``a == b`` is an isolated point).

    Overlapping or touching intervals are merged on construction, so the
    stored intervals are sorted with strict gaps between them.
    """

    intervals: tuple[tuple[float, float], ...]
    kind: ClassVar[str] = "intervals"
    _starts: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        raw = sorted((float(a), float(b)) for a, b in self.intervals)
        if not raw:
            raise ValueError("a time scale must be nonempty")
        merged: list[list[float]] = []
        for a, b in raw:
            if not (math.isfinite(a) and math.isfinite(b)) or a > b:
                raise ValueError(f"bad interval [{a}, {b}]")
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        ivs = tuple((a, b) for a, b in merged)
        object.__setattr__(self, "intervals", ivs)
        object.__setattr__(self, "_starts", tuple(a for a, _ in ivs))

    @property
    def maximum(self) -> float:
        return self.intervals[-1][1]

    @property
    def minimum(self) -> float:
        return self.intervals[0][0]

    def _index(self, x: float) -> int:
        """Index of the interval containing ``x``, or -1."""
        i = bisect.bisect_right(self._starts, x) - 1
        if i >= 0 and x <= self.intervals[i][1]:
            return i
        return -1

    def contains(self, x: float) -> bool:
        return self._index(x) >= 0

    def _sigma(self, t: float) -> float:
        i = self._index(t)
        if t < self.intervals[i][1] or i + 1 == len(self.intervals):
            return t
        return self.intervals[i + 1][0]

    def _rho(self, t: float) -> float:
        i = self._index(t)
        if t > self.intervals[i][0] or i == 0:
            return t
        return self.intervals[i - 1][1]

    def _project(self, t: float, x: float) -> float:
        a, b = self.intervals[self._index(t)]
        return min(max(x, a), b)

    def nearest(self, x: float) -> float:
        if self.contains(x):
            return float(x)
        ends = [e for iv in self.intervals for e in iv]
        return min(ends, key=lambda s: abs(s - x))

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, "intervals": [list(iv) for iv in self.intervals]}


_KINDS: dict[str, type[TimeScale]] = {
    cls.kind: cls
    for cls in (Reals, Integers, UniformGrid, QuantumScale, FiniteSet, IntervalUnion)
}


def from_json(obj: dict[str, Any]) -> TimeScale:
    """Inverse of ``TimeScale.to_json``.

        >>> from_json({"kind": "intervals", "intervals": [[0, 1], [1, 2]]})
        IntervalUnion(intervals=((0.0, 2.0),))
    """
    obj = dict(obj)
    try:
        cls = _KINDS[obj.pop("kind")]
    except KeyError as exc:
        raise ValueError(f"unknown or missing time scale kind: {exc}") from None
    if cls is FiniteSet:
        return FiniteSet(tuple(obj.pop("points")), **obj)
    if cls is IntervalUnion:
        return IntervalUnion(tuple(tuple(iv) for iv in obj.pop("intervals")), **obj)
    return cls(**obj)

