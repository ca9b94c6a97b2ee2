"""Depth-k approximations of the address space.

Three independent routes to the same finite word set:

* :func:`omega_approx` iterates the prepend operator :func:`refine`, driven
  only by the critical itineraries ``alpha`` and ``beta``;
* :func:`admissible_words` brute-forces every word of length ``k`` through
  the positional membership test :func:`is_admissible`;
* :func:`geometric_addresses` cuts ``[0, 1]`` at the preimages of ``rho``
  and reads off the itinerary of each interval's midpoint.
"""

from __future__ import annotations

import csv
import io
import itertools
import warnings
from dataclasses import dataclass

from itinerary_lab.maps import LEFT_CLOSED, RIGHT_CLOSED, MapSystem, preimages
from itinerary_lab.words import (
    DEFAULT_EPS_AMB, GE, LE, ItineraryResult, Word, itinerary, lex_compare,
)

MODES = ("omega", "omega_plus", "closure")
MERGE_TOL = 1e-10


class ReliabilityError(RuntimeError):
    """Critical itineraries are not certified deep enough for the request."""


@dataclass(frozen=True)
class CriticalPair:
    alpha: ItineraryResult
    beta: ItineraryResult

    @property
    def tau_rho(self) -> Word:
        return "0" + self.alpha.word

    @property
    def tau_plus_rho(self) -> Word:
        return "1" + self.beta.word

    @property
    def depth(self) -> int:
        """Number of certified digits common to ``alpha`` and ``beta``."""
        return min(self.alpha.reliable_len, self.beta.reliable_len)

    def require(self, k: int) -> None:
        if self.depth < k:
            raise ReliabilityError(
                f"critical itineraries reliable to depth {self.depth}, need {k}")

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
                "tau_rho": self.tau_rho, "tau_plus_rho": self.tau_plus_rho}


@dataclass(frozen=True)
class PrefixSet:
    depth: int
    words: tuple
    mode: str = "closure"

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(sorted(set(self.words))))

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return w in self.as_set()

    def as_set(self) -> frozenset:
        return frozenset(self.words)

    def to_json(self) -> dict:
        return {"depth": self.depth, "mode": self.mode, "words": list(self.words)}


@dataclass(frozen=True)
class DiscontinuitySet:
    level: int
    points: tuple
    interval_addresses: tuple

    def widths(self) -> list:
        return [self.points[i + 1] - self.points[i] for i in range(len(self.interval_addresses))]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["level", "index", "point", "address"])
        for i, addr in enumerate(self.interval_addresses):
            writer.writerow([self.level, i, _fmt(self.points[i]), addr])
        return buf.getvalue()


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def critical_itineraries(system: MapSystem, n: int,
                         eps_amb: float = DEFAULT_EPS_AMB) -> CriticalPair:
    """``alpha = tau(W0(rho))|n`` and ``beta = tau+(W1(rho))|n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    rho = system.rho
    alpha = itinerary(system, system.branch(0, rho), n, LEFT_CLOSED, eps_amb)
    beta = itinerary(system, system.branch(1, rho), n, RIGHT_CLOSED, eps_amb)
    crit = CriticalPair(alpha, beta)
    if crit.depth < n:
        warnings.warn(f"critical itineraries reliable only to depth {crit.depth} < {n}",
                      stacklevel=2)
    assert alpha.word[0] == "1" and beta.word[0] == "0", "critical pair invariant"
    return crit


def refine(prefixes: PrefixSet, crit: CriticalPair) -> PrefixSet:
    """One step of the prepend operator: depth ``k`` words to depth ``k + 1``.

    ``0w`` survives when ``w`` does not exceed ``alpha|k`` and ``1w`` when
    ``w`` is not below ``beta|k``.  A word equal to the boundary prefix is
    kept in every mode: a finite prefix cannot show whether the boundary
    cylinder meets the open side of the interval, so all three modes produce
    the same outer approximation at finite depth.
    """
    k = prefixes.depth
    crit.require(k)
    alpha, beta = crit.alpha.word[:k], crit.beta.word[:k]
    out = []
    for w in prefixes.words:
        if lex_compare(w, alpha) in LE:
            out.append("0" + w)
        if lex_compare(w, beta) in GE:
            out.append("1" + w)
    return PrefixSet(k + 1, tuple(out), prefixes.mode)


def is_admissible(w: Word, crit: CriticalPair) -> bool:
    """Positional membership test against ``tau(rho)`` and ``tau+(rho)``.

    For every position ``j``: digit 0 requires the suffix from ``j`` not to
    exceed ``tau(rho)`` and digit 1 requires it not to fall below
    ``tau+(rho)``; undecided prefix comparisons pass.
    """
    crit.require(max(len(w) - 1, 0))
    lo, hi = crit.tau_plus_rho, crit.tau_rho
    for j, c in enumerate(w):
        tail = w[j:]
        if c == "0":
            if lex_compare(tail, hi) not in LE:
                return False
        elif lex_compare(tail, lo) not in GE:
            return False
    return True


def admissible_words(crit: CriticalPair, k: int) -> PrefixSet:
    """Brute-force enumeration of the admissible words of length ``k``."""
    words = ("".join(t) for t in itertools.product("01", repeat=k))
    return PrefixSet(k, tuple(w for w in words if is_admissible(w, crit)), "closure")


def discontinuities(system: MapSystem, k: int) -> DiscontinuitySet:
    """Cut points of ``W^k`` and the address of every interval between them."""
    if k < 1:
        raise ValueError("k must be at least 1")
    level = [system.rho]
    found = {system.rho}
    for _ in range(k - 1):
        nxt = []
        for y in level:
            nxt.extend(preimages(system, y))
        level = nxt
        found.update(nxt)
    found.update((system.num(0), system.num(1)))
    pts = sorted(found)
    if not system.exact:
        tiny = 10 * 2.0 ** -52
        merged = [pts[0]]
        for p in pts[1:]:
            gap = p - merged[-1]
            if gap < tiny:
                warnings.warn(f"cut points {merged[-1]!r} and {p!r} closer than {tiny:.1e}",
                              stacklevel=2)
            if gap < MERGE_TOL:
                continue
            merged.append(p)
        merged[-1] = 1.0
        pts = merged
    addrs = []
    for lo, hi in zip(pts, pts[1:]):
        mid = (lo + hi) / 2
        addrs.append(itinerary(system, mid, k, LEFT_CLOSED).word)
    return DiscontinuitySet(k, tuple(pts), tuple(addrs))


def geometric_addresses(system: MapSystem, k: int) -> PrefixSet:
    return PrefixSet(k, discontinuities(system, k).interval_addresses, "closure")


def omega_approx(system: MapSystem, k: int, mode: str = "closure",
                 eps_amb: float = DEFAULT_EPS_AMB) -> PrefixSet:
    """Depth-``k`` prefix set by ``k``-fold refinement of the empty word."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    crit = critical_itineraries(system, k + 1, eps_amb)
    crit.require(k)
    prefixes = PrefixSet(0, ("",), mode)
    for _ in range(k):
        prefixes = refine(prefixes, crit)
    return prefixes

