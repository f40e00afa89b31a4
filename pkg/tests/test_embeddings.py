import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homspace.embeddings import (FIXTURES, DirectPoly, OrbitDatum, OrbitPoset, fixture,
                                 format_poset, group_completion_check, group_completion_quotient,
                                 orbit_divisibility, parse_poset, pgl2_wonderful, poset_from_dict,
                                 poset_to_dict, projective_even, projective_odd, q_open, r_poly,
                                 sl2xsl2_counterexample, total_half_poincare)
from homspace.errors import NegativeCoefficient, NotDivisible, ParseError
from homspace.exactalg import IntPoly, poly_gcd
from homspace.homogeneous import half_poincare, pair
from homspace.weylcore import ReductiveType

P = IntPoly
geo = IntPoly.geometric
mono = IntPoly.monomial


# -- projective spaces --

@pytest.mark.parametrize("m", [1, 2, 3])
def test_projective_odd(m):
    x = projective_odd(m)
    assert total_half_poincare(x) == geo(2 * m + 2)
    assert q_open(x) == geo(m + 1)
    assert r_poly(x) == mono(m + 1) + P([1])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_quadric_betti_data(m):
    quadric = projective_odd(m)[f"Q^{2 * m}"].half_poincare()
    assert quadric == geo(2 * m + 1) + mono(m)
    assert geo(2 * m + 2) - quadric == mono(m) * (mono(m + 1) - P([1]))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_projective_even(m):
    x = projective_even(m)
    assert q_open(x) == P([1])
    assert total_half_poincare(x) == geo(2 * m + 1)
    assert r_poly(x) == geo(2 * m + 1)


def test_p3_pieces():
    x = projective_odd(1)
    assert x["Q^2"].half_poincare() == P([1, 2, 1])
    assert x["SO(4)/SO(3)"].half_poincare() == P([0, -1, 0, 1])


def test_mixed_payload_consistency():
    x = projective_odd(1)
    direct = OrbitPoset((x.open(), OrbitDatum("P1xP1", DirectPoly(P([1, 2, 1]), P([1, 2, 1])))),
                        x.open_orbit)
    assert total_half_poincare(direct) == total_half_poincare(x)
    assert r_poly(direct) == r_poly(x)


# -- group completion --

def test_pgl2():
    x = pgl2_wonderful()
    assert total_half_poincare(x) == P([1, 1, 1, 1])
    a1 = ReductiveType.of("A1")
    assert group_completion_check(a1, x)
    assert group_completion_quotient(a1, x) == P([1, 0, 1])
    # the same total as the P^3 fixture built from a different open orbit
    assert total_half_poincare(x) == total_half_poincare(projective_odd(1))


def test_torus_completion():
    # P^1 as a completion of the one-dimensional torus
    t1 = ReductiveType(central_torus_rank=1)
    x = OrbitPoset((OrbitDatum("T", pair("T1", "T0")),
                    OrbitDatum("0", DirectPoly(P([1]))),
                    OrbitDatum("inf", DirectPoly(P([1])))), "T")
    assert total_half_poincare(x) == P([1, 1])
    assert group_completion_check(t1, x)


def test_group_completion_fails():
    assert not group_completion_check(ReductiveType.of("A2"), pgl2_wonderful())


# -- counterexample --

def test_counterexample():
    x = sl2xsl2_counterexample()
    total = total_half_poincare(x)
    assert total == P([1, 3, 6, 3, 1])
    assert q_open(x) == P([1, 0, 1])
    assert x.open().half_poincare() == P([0, 0, 1, 0, 1])
    assert poly_gcd(total, q_open(x)) == P([1])
    with pytest.raises(NotDivisible):
        r_poly(x)


def test_counterexample_orbit_divisibility_fails():
    rep = orbit_divisibility(sl2xsl2_counterexample())
    assert not rep.passed
    assert len(rep.failures()) == 5


# -- divisibility reports --

def test_p3_orbit_divisibility():
    rep = orbit_divisibility(projective_odd(1))
    assert rep.passed
    assert "(z + 1)" in rep.items[0].detail


def test_single_orbit():
    x = OrbitPoset((OrbitDatum("G/H", pair("D3", "B2")),), "G/H")
    assert total_half_poincare(x) == half_poincare(pair("D3", "B2"))
    assert orbit_divisibility(x).passed and not orbit_divisibility(x).items


@pytest.mark.parametrize("name", [n for n in FIXTURES if n != "sl2xsl2_counterexample"])
def test_fixture_consistency(name):
    x = fixture(name)
    r, q, total = r_poly(x), q_open(x), total_half_poincare(x)
    assert r.is_nonnegative()
    assert r(1) * q(1) == total(1)


def test_negative_remainder_complete():
    x = OrbitPoset((OrbitDatum("G/H", pair("A1", "T1")),), "G/H", complete=True)
    with pytest.raises(NegativeCoefficient):
        r_poly(OrbitPoset((OrbitDatum("G/H", pair("D2", "B1")),), "G/H", complete=True))
    assert r_poly(x) == P([0, 1])


def test_incomplete_allows_negative():
    x = OrbitPoset((OrbitDatum("G/H", pair("D2", "B1")),), "G/H", complete=False)
    assert r_poly(x) == P([0, -1, 1])


# -- validation --

def test_poset_validation():
    o = OrbitDatum("a", pair("A1", "T1"))
    with pytest.raises(ValueError):
        OrbitPoset((), "a")
    with pytest.raises(ValueError):
        OrbitPoset((o, o), "a")
    with pytest.raises(ValueError):
        OrbitPoset((o,), "b")
    with pytest.raises(ValueError):
        OrbitPoset((OrbitDatum("small", DirectPoly(P([1]))), o), "small")
    with pytest.raises(ValueError):
        DirectPoly(P([1, -1]))


@given(st.permutations(range(6)))
@settings(max_examples=20, deadline=None)
def test_orbit_order_irrelevant(perm):
    x = sl2xsl2_counterexample()
    y = OrbitPoset(tuple(x.orbits[i] for i in perm), x.open_orbit)
    assert total_half_poincare(y) == total_half_poincare(x)


# -- formats --

@pytest.mark.parametrize("name", list(FIXTURES))
def test_json_round_trip(name):
    x = fixture(name)
    d = json.loads(json.dumps(poset_to_dict(x)))
    y = poset_from_dict(d)
    assert poset_to_dict(y) == poset_to_dict(x)
    assert total_half_poincare(y) == total_half_poincare(x)
    assert q_open(y) == q_open(x)


@pytest.mark.parametrize("name", list(FIXTURES))
def test_text_round_trip(name):
    x = fixture(name)
    y = parse_poset(format_poset(x))
    assert format_poset(y) == format_poset(x)
    assert total_half_poincare(y) == total_half_poincare(x)
    assert q_open(y) == q_open(x)


def test_parse_poset_file():
    text = """# P^3
complete true
open G/H
orbit G/H pair SO(4) SO(3)
orbit P1xP1 poly 1,2,1 q 1,2,1
"""
    x = parse_poset(text)
    assert r_poly(x) == P([1, 0, 1])


@pytest.mark.parametrize("text", [
    "open a\norbit a poly 1",
    "complete yes\nopen a\norbit a poly 1",
    "complete true\nopen a\norbit a poly 1,x",
    "complete true\nopen a\norbit a triple 1",
    "complete true\nopen a\nfoo",
])
def test_parse_poset_errors(text):
    with pytest.raises(ParseError):
        parse_poset(text)


def test_fixture_names():
    assert fixture("projective_odd(2)").name == fixture("projective_odd_2").name
    with pytest.raises(ParseError):
        fixture("nope")
