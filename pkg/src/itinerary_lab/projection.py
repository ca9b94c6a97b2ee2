"""Maps from words back to the interval.

``pi_hat`` is the order-preserving projection that inverts the itinerary
map; ``coding_pi`` is the plain binary-expansion map; ``homeo`` composes
itinerary, star and ``pi_hat`` into an orientation-reversing involution of
``[0, 1]`` when the threshold sits at the symmetric parameter.

A finite word ``w`` stands for the infinite word obtained by repeating its
last digit, so ``0^n`` projects to 0, ``1^n`` to 1, and projection commutes
with shift and star exactly on finite inputs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from itinerary_lab.maps import MapSystem
from itinerary_lab.words import (
    FLOAT_DEPTH_CAP, Word, itinerary, itinerary_codes, star, word_to_code,
)

DEFAULT_TOL = 1e-12
HOMEO_DEPTH = 48
SYMMETRY_WARN_DEPTH = 20


@dataclass(frozen=True)
class WordInterval:
    word: Word
    lo: object
    hi: object
    empty: bool = False

    @property
    def width(self):
        return 0 if self.empty else self.hi - self.lo


def _cmp_itinerary(system: MapSystem, x, w: Word) -> int:
    """Sign of ``tau(x)|n - w`` in lexicographic order, stopping at the first difference."""
    rho = system.rho
    for c in w:
        if x <= rho:
            d, x = "0", system.branch(0, x)
        else:
            d, x = "1", system.branch(1, x)
        if d != c:
            return -1 if d < c else 1
    return 0


def _threshold(system: MapSystem, w: Word, strict: bool, tol, seen: list | None = None):
    """``inf {x : tau(x)|n >= w}`` (or ``> w`` when ``strict``) by bisection."""
    def past(x):
        c = _cmp_itinerary(system, x, w)
        if c == 0 and seen is not None:
            seen.append(x)
        return c > 0 or (c == 0 and not strict)

    lo, hi = system.num(0), system.num(1)
    if past(lo):
        return lo
    if not past(hi):
        return hi
    if system.exact:
        tol = Fraction(tol)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if past(mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def pi_hat(system: MapSystem, w: Word, tol=DEFAULT_TOL):
    """Projection of ``w`` (extended by its last digit) onto ``[0, 1]``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not w:
        return system.num(0)
    return _threshold(system, w, w[-1] == "1", tol)


def pi_hat_codes(system: MapSystem, codes, n: int, last_one, tol=DEFAULT_TOL) -> np.ndarray:
    """Vectorized float ``pi_hat`` for words packed by :func:`itinerary_codes`."""
    codes = np.asarray(codes, dtype=np.uint64)
    strict = np.asarray(last_one, dtype=bool)

    def past(x):
        c = itinerary_codes(system, x, n)
        return np.where(strict, c > codes, c >= codes)

    lo = np.zeros(codes.shape)
    hi = np.ones(codes.shape)
    at_zero = past(lo)
    never = ~past(hi)
    for _ in range(max(1, math.ceil(math.log2(1.0 / tol)))):
        mid = 0.5 * (lo + hi)
        p = past(mid)
        hi = np.where(p, mid, hi)
        lo = np.where(p, lo, mid)
    out = 0.5 * (lo + hi)
    out[at_zero] = 0.0
    out[never] = 1.0
    return out


def pi_hat_many(system: MapSystem, words: list, tol=DEFAULT_TOL) -> np.ndarray:
    """``pi_hat`` over a list of equal-length words (vectorized in float mode)."""
    if not words:
        return np.zeros(0)
    n = len(words[0])
    if system.exact or n > FLOAT_DEPTH_CAP or n == 0 or any(len(w) != n for w in words):
        return np.array([float(pi_hat(system, w, tol)) for w in words])
    codes = np.array([word_to_code(w) for w in words], dtype=np.uint64)
    return pi_hat_codes(system, codes, n, [w[-1] == "1" for w in words], tol)


def coding_pi(w: Word) -> WordInterval:
    """Dyadic cylinder ``[0.w, 0.w + 2^-n]`` of the binary coding map."""
    n = len(w)
    lo = Fraction(int(w, 2), 2 ** n) if n else Fraction(0)
    return WordInterval(w, lo, lo + Fraction(1, 2 ** n))


def word_interval(system: MapSystem, w: Word, tol=DEFAULT_TOL) -> WordInterval:
    """Closure of the set of points whose itinerary starts with ``w``.

    Both ends come from bisection; the interval is reported empty when no
    probed point carries the prefix ``w``.  A nonempty interval narrower
    than ``tol`` can be missed, which is the stated accuracy of the probe.
    """
    seen: list = []
    lo = _threshold(system, w, False, tol, seen)
    hi = _threshold(system, w, True, tol, seen)
    for x in (lo, hi, (lo + hi) / 2):
        if _cmp_itinerary(system, x, w) == 0:
            seen.append(x)
    if not seen:
        return WordInterval(w, lo, lo, empty=True)
    return WordInterval(w, lo, hi)


def _check_symmetric(system: MapSystem) -> None:
    from itinerary_lab.symmetry import symmetry_defect

    n = 2 * SYMMETRY_WARN_DEPTH
    defect = symmetry_defect(system, system.rho, n)
    if defect.decided_at is not None and defect.decided_at < SYMMETRY_WARN_DEPTH:
        warnings.warn(f"rho={float(system.rho)} is not symmetric: defect decided at digit "
                      f"{defect.decided_at}; h is meaningless here", stacklevel=3)


def homeo(system: MapSystem, x, n: int = HOMEO_DEPTH, tol=DEFAULT_TOL, check: bool = True):
    """``h(x) = pi_hat(star(tau(x)|n))``; error budget ``d^-n + tol``."""
    if check:
        _check_symmetric(system)
    return pi_hat(system, star(itinerary(system, x, n).word), tol)


def homeo_many(system: MapSystem, xs, n: int = HOMEO_DEPTH, tol=DEFAULT_TOL,
               check: bool = True) -> np.ndarray:
    """Vectorized :func:`homeo` over an array of points (float mode)."""
    if check:
        _check_symmetric(system)
    xs = np.asarray(xs, dtype=float)
    if system.exact or n > FLOAT_DEPTH_CAP:
        return np.array([float(homeo(system, x, n, tol, check=False)) for x in xs])
    codes = itinerary_codes(system, xs, n)
    mask = np.uint64((1 << n) - 1)
    starred = (~codes) & mask
    return pi_hat_codes(system, starred, n, (starred & np.uint64(1)) == 1, tol)
