"""Finite binary words and itineraries.

Words are plain ``str`` objects over ``"0"``/``"1"``.  Python's string order
coincides with the lexicographic order on equal-length words, which keeps
sorting and set operations cheap.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from itinerary_lab.maps import LEFT_CLOSED, RIGHT_CLOSED, MapSystem

Word = str

FLOAT_DEPTH_CAP = 64
DEFAULT_EPS_AMB = 1e-12

_STAR = str.maketrans("01", "10")


class Order(enum.Enum):
    LESS = "less"
    EQUAL_PREFIX = "equal_prefix"
    GREATER = "greater"


LE = (Order.LESS, Order.EQUAL_PREFIX)
GE = (Order.GREATER, Order.EQUAL_PREFIX)


def check_word(w: str) -> Word:
    if any(c not in "01" for c in w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def lex_compare(u: Word, v: Word) -> Order:
    """Compare by the first differing digit; prefixes compare as EQUAL_PREFIX."""
    n = min(len(u), len(v))
    a, b = u[:n], v[:n]
    if a == b:
        return Order.EQUAL_PREFIX
    return Order.LESS if a < b else Order.GREATER


def word_metric(u: Word, v: Word) -> float:
    for k, (x, y) in enumerate(zip(u, v)):
        if x != y:
            return 2.0 ** -k
    return 0.0


def star(w: Word) -> Word:
    return w.translate(_STAR)


def shift(w: Word) -> Word:
    if not w:
        raise ValueError("cannot shift the empty word")
    return w[1:]


def prepend(i: int, w: Word) -> Word:
    return str(int(i)) + w


@dataclass(frozen=True)
class ItineraryResult:
    word: Word
    reliable_len: int
    hit_critical: int | None = None

    @property
    def reliable(self) -> Word:
        return self.word[: self.reliable_len]

    def to_json(self) -> dict:
        return {"word": self.word, "reliable_len": self.reliable_len,
                "hit_critical": self.hit_critical}


def itinerary(system: MapSystem, x, n: int, variant: str = LEFT_CLOSED,
              eps_amb: float = DEFAULT_EPS_AMB) -> ItineraryResult:
    """First ``n`` digits of the itinerary of ``x`` under ``W`` or ``W+``.

    Digit ``k`` is 0 when the k-th iterate lies in the branch-0 region.  The
    starting point is taken as exact; in float mode any later iterate within
    ``eps_amb`` of ``rho`` ends the reliable prefix at that index.  In
    rational mode ``hit_critical`` records the first exact visit to ``rho``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if variant not in (LEFT_CLOSED, RIGHT_CLOSED):
        raise ValueError(f"unknown variant {variant!r}")
    x = system.num(x)
    if not 0 <= x <= 1:
        raise ValueError(f"x={x} outside [0, 1]")
    rho = system.rho
    left = variant == LEFT_CLOSED
    digits = []
    reliable = n
    hit = None
    for k in range(n):
        if system.exact or k == 0:
            if hit is None and x == rho:
                hit = k
        elif abs(x - rho) < eps_amb:
            if hit is None:
                hit = k
            reliable = min(reliable, k)
        if x < rho or (left and x == rho):
            digits.append("0")
            x = system.branch(0, x)
        else:
            digits.append("1")
            x = system.branch(1, x)
    if not system.exact:
        reliable = min(reliable, FLOAT_DEPTH_CAP)
    return ItineraryResult("".join(digits), reliable, hit)


def itinerary_codes(system: MapSystem, xs, n: int, variant: str = LEFT_CLOSED) -> np.ndarray:
    """Vectorized float itineraries packed into ``uint64`` codes, first digit most significant.

    For equal ``n`` the integer order of the codes is the lexicographic order
    of the words, so batched comparisons reduce to integer comparisons.
    """
    if not 0 < n <= FLOAT_DEPTH_CAP:
        raise ValueError(f"n must lie in 1..{FLOAT_DEPTH_CAP}")
    x = np.array(xs, dtype=float)
    rho = float(system.rho)
    codes = np.zeros(x.shape, dtype=np.uint64)
    one = np.uint64(1)
    for _ in range(n):
        bit = (x > rho) if variant == LEFT_CLOSED else (x >= rho)
        codes = (codes << one) | bit.astype(np.uint64)
        x = np.where(bit, system.branch_vec(1, x), system.branch_vec(0, x))
    return codes


def word_to_code(w: Word) -> int:
    return int(w, 2) if w else 0


def code_to_word(code: int, n: int) -> Word:
    return format(int(code), f"0{n}b") if n else ""
