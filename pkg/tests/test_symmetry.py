from fractions import Fraction

import pytest

from itinerary_lab.maps import MapSystem
from itinerary_lab.symmetry import (
    Defect, SolverError, solve_symmetric, symmetry_defect, verify_symmetry,
)
from itinerary_lab.words import itinerary, word_metric

RANK = {Defect.TAU_LESS: -1, Defect.EQUAL_TO_DEPTH: 0, Defect.TAU_GREATER: 1}


@pytest.mark.parametrize("rho,expected", [
    ("9/20", Defect.TAU_LESS), ("1/2", Defect.EQUAL_TO_DEPTH), ("11/20", Defect.TAU_GREATER),
])
def test_defect_examples(sym, rho, expected):
    assert symmetry_defect(sym, Fraction(rho), 64).ordering is expected


def test_exact_symmetry_never_decided(sym):
    defect = symmetry_defect(sym, Fraction(1, 2), 128)
    assert defect.decided_at is None and defect.depth_used == 128


@pytest.mark.parametrize("a", ["11/20", "3/5", "3/4"])
def test_equal_branches_solve_to_half(a):
    s = MapSystem.affine(a, a, "1/2", mode="rational")
    sol = solve_symmetric(s, rho_tol=1e-12)
    assert abs(sol.rho_star - Fraction(1, 2)) <= Fraction(1, 10**10)
    lo, hi = sol.bracket
    assert lo <= sol.rho_star <= hi and hi - lo <= Fraction(1, 10**12)


def test_lopsided_solution_is_reproducible(lopsided):
    first = solve_symmetric(lopsided, rho_tol=1e-12)
    second = solve_symmetric(lopsided, rho_tol=1e-12)
    assert first == second
    assert Fraction(9, 20) < first.rho_star < Fraction(7, 10)
    approx = solve_symmetric(MapSystem.affine(0.7, 0.55, 0.6), rho_tol=1e-12)
    assert abs(float(first.rho_star) - approx.rho_star) <= 1e-9


def test_bracket_without_sign_change(sym):
    with pytest.raises(SolverError, match="does not change sign"):
        solve_symmetric(sym, bracket=(Fraction(41, 100), Fraction(9, 20)))
    with pytest.raises(SolverError, match="not inside"):
        solve_symmetric(sym, bracket=(Fraction(1, 10), Fraction(1, 2)))


def test_verify_examples(sym):
    assert verify_symmetry(sym, Fraction(1, 2), 10).passed
    off = verify_symmetry(sym, Fraction(12, 25), 10)
    assert not off.critical_match and off.critical_mismatch_at is not None


@pytest.mark.parametrize("k", range(2, 12))
def test_verify_passes_downward(lopsided, k):
    rho = solve_symmetric(lopsided, rho_tol=1e-12).rho_star
    if verify_symmetry(lopsided, rho, k).passed:
        assert verify_symmetry(lopsided, rho, k - 1).passed


@pytest.mark.parametrize("system", ["sym", "lopsided"])
def test_defect_monotone_on_grid(system, request):
    s = request.getfixturevalue(system)
    lo, hi = 1 - s.b, s.a
    ranks = [RANK[symmetry_defect(s, lo + (hi - lo) * Fraction(i, 99), 64).ordering]
             for i in range(100)]
    assert ranks == sorted(ranks)
    zeros = [i for i, r in enumerate(ranks) if r == 0]
    assert not zeros or zeros == list(range(zeros[0], zeros[-1] + 1))


@pytest.mark.parametrize("rho", [Fraction(9, 20), Fraction(1, 2), Fraction(53, 100)])
def test_one_sided_continuity(sym, rho):
    n = 40

    def tau(r, variant):
        return itinerary(sym.with_rho(r), r, n, variant).word

    target = tau(rho, "left_closed")
    left = [word_metric(tau(rho - Fraction(1, 10 ** (2 * j)), "left_closed"), target)
            for j in range(1, 6)]
    assert left[-1] <= 2.0 ** -10 and left[-1] <= left[0]
    target = tau(rho, "right_closed")
    right = [word_metric(tau(rho + Fraction(1, 10 ** (2 * j)), "right_closed"), target)
             for j in range(1, 6)]
    assert right[-1] <= 2.0 ** -10 and right[-1] <= right[0]
