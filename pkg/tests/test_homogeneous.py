from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homspace.errors import InvalidPair, InvalidRank, ParseError
from homspace.exactalg import IntPoly, palindrome_check
from homspace.fq_oracle import order_formula
from homspace.grammar import format_group_spec, parse_group_spec
from homspace.homogeneous import (GroupSpec, HomogeneousPair, chain_check, disconnected_pairs,
                                  e_monomials, e_render, half_poincare, half_poincare_routes, pair,
                                  point_count, q_poly, sl2xsl2_normalizer_subgroup,
                                  orthogonal_even_subgroup, standard_pairs, verify_theorem1,
                                  z_duality_holds, z_poincare)
from homspace.weylcore import ReductiveType, flag_poly

P = IntPoly
T = ReductiveType.of


def disconnected():
    return HomogeneousPair(GroupSpec(T("A1", "A1")), sl2xsl2_normalizer_subgroup())


# -- Q --

def test_q_sphere():
    assert q_poly(pair("D3", "B2")) == P([1, 1, 1])


def test_q_same_group():
    for name in ("A2", "G2", "B2xT1"):
        assert q_poly(pair(name, name)) == P([1])


def test_q_disconnected():
    assert q_poly(disconnected()) == P([1, 0, 1])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_q_odd_sphere_family(m):
    assert q_poly(pair(f"D{m + 1}", f"B{m}")) == P([1] * (m + 1))


@pytest.mark.parametrize("m", [1, 2])
def test_q_orthogonal_even_weyl_data(m):
    # computed from W(O(2m)) = W(B_m) acting on the Cartan of SO(2m+1)
    p = HomogeneousPair(GroupSpec(T(f"B{m}")), orthogonal_even_subgroup(m))
    assert q_poly(p) == IntPoly.monomial(m)


# -- half-Poincare --

def test_half_poincare_sl2_torus():
    assert half_poincare(pair("A1", "T1")) == P([0, 1, 1])


def test_half_poincare_disconnected():
    assert half_poincare(disconnected()) == P([0, 0, 1, 0, 1])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_half_poincare_odd_sphere(m):
    # z^m (z^(m+1) - 1)
    assert half_poincare(pair(f"D{m + 1}", f"B{m}")) == (
        IntPoly.monomial(m) * (IntPoly.monomial(m + 1) - P([1])))


def test_unipotent_shift():
    # G/H^red picks up a factor z^u relative to G/H
    base = half_poincare(pair("A2", "T2"))
    borel = half_poincare(pair("A2", "T2+U3"))
    assert base == IntPoly.monomial(3) * borel


def test_half_poincare_borel_is_flag():
    for name in ("A2", "B2", "G2"):
        t = T(name)
        b = GroupSpec(ReductiveType(central_torus_rank=t.rank), t.u_red)
        assert half_poincare(HomogeneousPair(GroupSpec(t), b)) == flag_poly(t)


def test_invalid_pair_rank():
    with pytest.raises(InvalidPair):
        pair("A1", "A2")


# -- point counts --

@pytest.mark.parametrize("g,h,q,want", [("A1", "T1", 3, 12), ("A2", "T2", 2, 168), ("B2", "B2", 7, 1)])
def test_point_count(g, h, q, want):
    assert point_count(pair(g, h), q) == want


def test_point_count_rejects_composite():
    with pytest.raises(ValueError):
        point_count(pair("A1", "T1"), 6)


@pytest.mark.parametrize("label,p", standard_pairs())
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_point_count_is_group_order_ratio(label, p, q):
    og = order_formula(p.g.reductive, p.g.unipotent_extra, q)
    oh = order_formula(p.h.reductive, p.h.unipotent_extra, q)
    assert Fraction(og, oh) == point_count(p, q)


# -- E-polynomials --

def test_e_render():
    assert e_render(P([0, 1, 1])) == "s^2 t^2 + s t"
    assert e_render(P([1])) == "1"
    assert e_render(half_poincare(disconnected())) == "s^4 t^4 + s^2 t^2"


def test_e_render_signs():
    assert e_render(P([0, -1, 0, 1])) == "s^3 t^3 - s t"
    assert sorted(e_monomials(P([0, -1, 0, 1]))) == [(-1, 1), (1, 3)]


# -- Z-space --

def test_z_poincare_examples():
    assert z_poincare(pair("A1", "T1")) == P([1, 1])
    assert z_poincare(pair("B2", "B2")) == P([1])
    assert z_poincare(disconnected()) == P([1, 0, 1])


def test_z_poincare_needs_reductive():
    with pytest.raises(ValueError):
        z_poincare(pair("A2", "T2+U3"))


@pytest.mark.parametrize("label,p", [x for x in standard_pairs() if x[1].reductive])
def test_z_duality(label, p):
    zp = z_poincare(p)
    assert zp.is_nonnegative()
    assert z_duality_holds(p)


# -- Theorem 1 reports --

@pytest.mark.parametrize("label,p", standard_pairs())
def test_standard_pairs_verify(label, p):
    rep = verify_theorem1(p)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("label,p", disconnected_pairs())
def test_disconnected_pairs_verify(label, p):
    rep = verify_theorem1(p)
    assert rep.passed, rep.failures()
    names = [i.name for i in rep.items]
    assert "Q palindromic" not in names


def test_report_sphere():
    rep = verify_theorem1(pair("D3", "B2"))
    q1 = next(i for i in rep.items if i.name.startswith("Q(1)"))
    assert q1.passed and "Q(1) = 3" in q1.detail


def test_report_disconnected_values():
    p = disconnected()
    q = q_poly(p)
    assert q(1) == 2          # |W(A1xA1)| / |{+-I}| = 4 / 2
    assert q[0] == 1


def test_routes_agree_everywhere():
    for _, p in standard_pairs() + disconnected_pairs():
        a, b = half_poincare_routes(p)
        assert a == b


def test_palindromic_connected():
    for _, p in standard_pairs():
        q = q_poly(p)
        assert palindrome_check(q, q.degree)


# -- chains --

@pytest.mark.parametrize("chain", [("A2", "A1xT1", "T2"), ("D3", "B2", "D2"), ("B3", "B2xT1", "T3"),
                                   ("G2", "G2", "G2"), ("A3", "C2", "A1xA1")])
def test_chain(chain):
    assert chain_check(*chain)


# -- grammar --

@pytest.mark.parametrize("text,expected", [
    ("SO(6)", "D3"), ("SO(5)", "B2"), ("SO(2)", "T1"), ("SO(3)", "B1"), ("Sp(4)", "C2"),
    ("GL(3)", "A2xT1"), ("PGL(3)", "A2"), ("SL(2)", "A1"), ("GL(1)", "T1"),
    ("B2xT1+U4", "B2xT1+U4"), ("T0", "T0"), ("A1 x A1", "A1xA1"), ("T1xA2xT2", "A2xT3"),
])
def test_parse(text, expected):
    assert str(parse_group_spec(text)) == expected


def test_parse_fields():
    g = parse_group_spec("B2xT1+U4")
    assert g.reductive.factors == T("B2").factors
    assert g.reductive.central_torus_rank == 1 and g.unipotent_extra == 4


@pytest.mark.parametrize("text", ["", "X3", "A2x", "A2+V3", "SL(2", "A2B3", "SO"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_group_spec(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_group_spec("A2xQ1")
    assert exc.value.position == 3


@pytest.mark.parametrize("text", ["F3", "E5", "G3", "Sp(3)", "SL(0)", "D1"])
def test_parse_invalid_rank(text):
    with pytest.raises(InvalidRank):
        parse_group_spec(text)


simple_names = st.sampled_from(["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"])


@given(st.lists(simple_names, max_size=3), st.integers(0, 3), st.integers(0, 5))
def test_parse_format_round_trip(names, torus, unip):
    g = GroupSpec(ReductiveType.of(*names, torus=torus), unip)
    assert parse_group_spec(format_group_spec(g)) == g
