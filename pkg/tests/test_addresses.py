import random
import warnings
from fractions import Fraction

import pytest

from itinerary_lab.addresses import (
    MODES, PrefixSet, ReliabilityError, admissible_words, critical_itineraries,
    discontinuities, geometric_addresses, is_admissible, omega_approx, refine,
)
from itinerary_lab.maps import MapSystem
from itinerary_lab.words import itinerary, star


def test_critical_pair_example(sym):
    crit = critical_itineraries(sym, 14)
    assert crit.alpha.word.startswith("1110")
    assert crit.beta.word.startswith("0001")
    assert crit.beta.word == star(crit.alpha.word)
    assert crit.tau_rho == itinerary(sym, sym.rho, 15).word
    assert crit.tau_plus_rho == itinerary(sym, sym.rho, 15, "right_closed").word


def test_float_critical_pair_agrees_with_exact(sym, sym_float):
    exact = critical_itineraries(sym, 30)
    approx = critical_itineraries(sym_float, 30)
    m = approx.depth
    assert m >= 30
    assert approx.alpha.word[:m] == exact.alpha.word[:m]


def test_refine_first_steps(sym):
    crit = critical_itineraries(sym, 4)
    p1 = refine(PrefixSet(0, ("",)), crit)
    assert p1.words == ("0", "1")
    assert refine(p1, crit).words == ("00", "01", "10", "11")


def test_require_raises_when_too_shallow(sym):
    crit = critical_itineraries(sym, 3)
    with pytest.raises(ReliabilityError):
        refine(PrefixSet(5, ("00000",)), crit)


@pytest.mark.parametrize("k", [1, 5, 9])
def test_constant_words_admissible(sym, lopsided, k):
    for s in (sym, lopsided):
        crit = critical_itineraries(s, k + 2)
        assert is_admissible("0" * k, crit) and is_admissible("1" * k, crit)


def test_0100_verdict_matches_geometry(sym):
    # the filter and the cut-point construction must agree on this word
    crit = critical_itineraries(sym, 6)
    inside = "0100" in geometric_addresses(sym, 4)
    assert is_admissible("0100", crit) == inside
    assert itinerary(sym, Fraction(8, 25), 4).word == "0100"


def test_forbidden_word_example(sym):
    crit = critical_itineraries(sym, 7)
    assert not is_admissible("01111", crit)
    assert "01111" not in omega_approx(sym, 5)


def test_level_one_and_two(sym):
    one = discontinuities(sym, 1)
    assert one.points == (0, Fraction(1, 2), 1)
    assert one.interval_addresses == ("0", "1")
    two = discontinuities(sym, 2)
    assert two.points == (0, Fraction(3, 10), Fraction(1, 2), Fraction(7, 10), 1)
    assert two.interval_addresses == ("00", "01", "10", "11")


@pytest.mark.parametrize("system", ["sym", "lopsided", "wavy"])
@pytest.mark.parametrize("k", [3, 6, 9])
def test_addresses_strictly_increase(system, k, request):
    cut = discontinuities(request.getfixturevalue(system), k)
    addrs = cut.interval_addresses
    assert all(u < v for u, v in zip(addrs, addrs[1:]))
    assert list(cut.points) == sorted(cut.points)
    assert sum(cut.widths()) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("system", ["sym", "lopsided"])
@pytest.mark.parametrize("k", range(1, 11))
def test_three_routes_agree(system, k, request):
    s = request.getfixturevalue(system)
    crit = critical_itineraries(s, k + 1)
    a = omega_approx(s, k).as_set()
    assert a == admissible_words(crit, k).as_set()
    assert a == geometric_addresses(s, k).as_set()


@pytest.mark.parametrize("k", range(1, 12))
def test_shift_stability_and_growth(lopsided, k):
    big, small = omega_approx(lopsided, k + 1), omega_approx(lopsided, k)
    assert {w[1:] for w in big.words} <= small.as_set()
    assert len(small) <= len(big) <= 2 * len(small)
    assert len(small) == len(discontinuities(lopsided, k).interval_addresses)


@pytest.mark.parametrize("k", [4, 8, 12])
def test_outer_approximation_of_random_itineraries(sym, wavy, k):
    rng = random.Random(k)
    for s in (sym, wavy):
        prefixes = omega_approx(s, k).as_set()
        for _ in range(1000):
            x = s.num(Fraction(rng.randrange(10**9), 10**9))
            res = itinerary(s, x, k)
            if res.reliable_len >= k:
                assert res.word in prefixes


@pytest.mark.parametrize("k", [3, 7, 10])
def test_modes_nest_in_closure(lopsided, k):
    closure = omega_approx(lopsided, k, "closure").as_set()
    for mode in MODES:
        assert omega_approx(lopsided, k, mode).as_set() <= closure


def test_prefix_set_json(sym):
    data = omega_approx(sym, 2).to_json()
    assert data == {"depth": 2, "mode": "closure", "words": ["00", "01", "10", "11"]}


def test_csv_shape(sym):
    text = discontinuities(sym, 2).to_csv().splitlines()
    assert text[0] == "level,index,point,address"
    assert text[1:] == ["2,0,0,00", "2,1,3/10,01", "2,2,1/2,10", "2,3,7/10,11"]


def test_periodic_critical_orbit():
    # W1(W1(W0(rho))) = rho at rho = 24/49, so the critical orbit returns to rho
    exact = MapSystem.affine("3/5", "3/5", "24/49", mode="rational")
    crit = critical_itineraries(exact, 12)
    assert crit.alpha.hit_critical == 2
    assert crit.alpha.word == ("110" * 4)[:12]
    approx = MapSystem.affine(0.6, 0.6, 24 / 49)
    with pytest.warns(UserWarning, match="reliable only"):
        crit = critical_itineraries(approx, 12)
    assert crit.alpha.reliable_len == 2
    with pytest.raises(ReliabilityError), warnings.catch_warnings():
        warnings.simplefilter("ignore")
        omega_approx(approx, 5)
