"""Locating the threshold at which the address space is star-invariant.

Both ``tau(rho)`` and ``tau+(rho)`` increase with ``rho``, so the order of
``tau(rho)`` against ``star(tau+(rho))`` flips exactly once across
``[1 - b, a]``.  :func:`solve_symmetric` bisects on that sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from itinerary_lab.addresses import critical_itineraries, omega_approx
from itinerary_lab.maps import LEFT_CLOSED, RIGHT_CLOSED, MapSystem
from itinerary_lab.words import DEFAULT_EPS_AMB, Order, itinerary, lex_compare, star

START_DEPTH = 32
DEPTH_CAP = {"rational": 128, "float": 52}
MIN_RELIABLE = 8


class SolverError(RuntimeError):
    """No sign change to bisect on, or the digits became unreliable."""


class Defect(enum.Enum):
    TAU_LESS = "tau_less"
    EQUAL_TO_DEPTH = "equal_to_depth"
    TAU_GREATER = "tau_greater"


class Solution(NamedTuple):
    rho_star: object
    certificate: "SymmetryDefect"
    bracket: tuple


@dataclass(frozen=True)
class SymmetryDefect:
    ordering: Defect
    decided_at: int | None
    depth_used: int

    def to_json(self) -> dict:
        return {"ordering": self.ordering.value, "decided_at": self.decided_at,
                "depth_used": self.depth_used}


def symmetry_defect(system: MapSystem, rho, n: int,
                    eps_amb: float = DEFAULT_EPS_AMB) -> SymmetryDefect:
    """Compare ``tau(rho)|m`` with ``star(tau+(rho)|m)`` for the threshold ``rho``."""
    s = system.with_rho(rho)
    tau = itinerary(s, s.rho, n, LEFT_CLOSED, eps_amb)
    tau_plus = itinerary(s, s.rho, n, RIGHT_CLOSED, eps_amb)
    m = min(n, tau.reliable_len, tau_plus.reliable_len)
    u, v = tau.word[:m], star(tau_plus.word[:m])
    order = lex_compare(u, v)
    if order is Order.EQUAL_PREFIX:
        return SymmetryDefect(Defect.EQUAL_TO_DEPTH, None, m)
    k = next(i for i, (x, y) in enumerate(zip(u, v)) if x != y)
    kind = Defect.TAU_LESS if order is Order.LESS else Defect.TAU_GREATER
    return SymmetryDefect(kind, k, m)


def _deepened(system, rho, n, cap, eps_amb):
    defect = symmetry_defect(system, rho, n, eps_amb)
    while defect.ordering is Defect.EQUAL_TO_DEPTH and n < cap:
        n = min(2 * n, cap)
        defect = symmetry_defect(system, rho, n, eps_amb)
    if defect.depth_used < MIN_RELIABLE:
        raise SolverError(f"reliability collapsed to {defect.depth_used} digits at rho={rho}")
    return defect


def solve_symmetric(system: MapSystem, rho_tol=1e-12, n: int = START_DEPTH,
                    max_iter: int = 200, bracket=None, eps_amb: float = DEFAULT_EPS_AMB):
    """Bisect on the defect sign; return ``(rho_star, certificate, final bracket)``.

    The system's own ``rho`` is ignored.  ``bracket`` defaults to
    ``(1 - b, a)``.  A finite-depth tie counts for either side; before it is
    accepted the depth is doubled up to ``min(4 n, mode cap)``.
    """
    if rho_tol <= 0:
        raise ValueError("rho_tol must be positive")
    cap = min(4 * n, DEPTH_CAP[system.mode])
    lo, hi = (1 - system.b, system.a) if bracket is None else map(system.num, bracket)
    if not (1 - system.b <= lo < hi <= system.a):
        raise SolverError(f"bracket [{lo}, {hi}] not inside [1 - b, a]")
    if system.exact:
        rho_tol = Fraction(rho_tol)
    d_lo = _deepened(system, lo, n, cap, eps_amb)
    d_hi = _deepened(system, hi, n, cap, eps_amb)
    if d_lo.ordering is Defect.TAU_GREATER or d_hi.ordering is Defect.TAU_LESS:
        raise SolverError(f"defect does not change sign on [{lo}, {hi}]: "
                          f"{d_lo.ordering.value} .. {d_hi.ordering.value}")
    for _ in range(max_iter):
        if hi - lo <= rho_tol:
            break
        mid = (lo + hi) / 2
        d = _deepened(system, mid, n, cap, eps_amb)
        if d.ordering is Defect.TAU_LESS:
            lo = mid
        else:
            hi = mid
    else:
        raise SolverError(f"no convergence in {max_iter} steps; bracket width {hi - lo}")
    rho_star = (lo + hi) / 2
    return Solution(rho_star, _deepened(system, rho_star, n, cap, eps_amb), (lo, hi))


@dataclass
class SymmetryReport:
    k: int
    critical_match: bool
    critical_mismatch_at: int | None
    star_invariant: bool
    star_mismatch_word: str | None

    @property
    def passed(self) -> bool:
        return self.critical_match and self.star_invariant

    def to_json(self) -> dict:
        return {"k": self.k, "critical_match": self.critical_match,
                "critical_mismatch_at": self.critical_mismatch_at,
                "star_invariant": self.star_invariant,
                "star_mismatch_word": self.star_mismatch_word, "passed": self.passed}


def verify_symmetry(system: MapSystem, rho, k: int) -> SymmetryReport:
    """Check ``alpha|k == star(beta|k)`` and ``star(P_k) == P_k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    s = system.with_rho(rho)
    crit = critical_itineraries(s, k + 1)
    alpha, beta = crit.alpha.word[:k], star(crit.beta.word[:k])
    at = next((i for i, (x, y) in enumerate(zip(alpha, beta)) if x != y), None)
    words = omega_approx(s, k).as_set()
    flipped = {star(w) for w in words}
    odd = sorted(words ^ flipped)
    return SymmetryReport(k, at is None, at, not odd, odd[0] if odd else None)
