from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
import sympy

from homspace.errors import CapExceeded, InvalidRank, ParseError
from homspace.exactalg import IntPoly, RatFunc, cancel_eval_at_one, ratfunc_degree
from homspace.weylcore import (ReductiveType, SimpleType, cartan_matrix, f_series, flag_poly,
                               format_generator_file, fundamental_degrees, group_from_generators,
                               molien_series, parse_generator_file, simple_reflections,
                               weyl_enumerate)

T = ReductiveType.of
z = sympy.Symbol("z")


def coxeter_length_poly(t):
    """Length generating function by BFS on the Cayley graph of simple reflections."""
    mats = []
    for s in t.factors:
        a = np.array(cartan_matrix(s), dtype=np.int64)
        n = len(a)
        for i in range(n):
            m = np.eye(n, dtype=np.int64)
            m[i, :] -= a[i, :]          # s_i(alpha_j) = alpha_j - a_ij alpha_i, row convention
            mats.append((s, m))
    counts = Counter({0: 1})
    for s in t.factors:
        gens = [m for f, m in mats if f == s]
        n = len(gens[0])
        start = np.eye(n, dtype=np.int64).tobytes()
        seen = {start: 0}
        frontier = [np.eye(n, dtype=np.int64)]
        dist = 0
        while frontier:
            dist += 1
            nxt = []
            for w in frontier:
                for g in gens:
                    v = g @ w
                    key = v.tobytes()
                    if key not in seen:
                        seen[key] = dist
                        nxt.append(v)
            frontier = nxt
        counts = _conv(counts, Counter(seen.values()))
    poly = [0] * (max(counts) + 1)
    for k, v in counts.items():
        poly[k] += v
    return IntPoly(poly)


def _conv(a, b):
    out = Counter()
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] += x * y
    return out


RANK_LE_4 = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"]


# -- degree table --

@pytest.mark.parametrize("name,degrees", [
    ("A2", [2, 3]), ("D3", [2, 3, 4]), ("B3", [2, 4, 6]), ("D4", [2, 4, 4, 6]),
    ("G2", [2, 6]), ("E6", [2, 5, 6, 8, 9, 12]),
])
def test_degrees(name, degrees):
    assert fundamental_degrees(T(name)) == degrees


def test_torus_degrees():
    assert ReductiveType(central_torus_rank=2).degrees == [1, 1]


@pytest.mark.parametrize("f,n", [("F", 3), ("E", 5), ("G", 3), ("D", 1), ("A", 0), ("H", 3)])
def test_invalid_rank(f, n):
    with pytest.raises(InvalidRank):
        SimpleType(f, n)


@pytest.mark.parametrize("name", ["A1", "A3", "B2", "C3", "D4", "G2", "F4", "E6", "E7", "E8"])
def test_order_and_dimension(name):
    known = {"A1": (2, 3), "A3": (24, 15), "B2": (8, 10), "C3": (48, 21), "D4": (192, 28),
             "G2": (12, 14), "F4": (1152, 52), "E6": (51840, 78), "E7": (2903040, 133),
             "E8": (696729600, 248)}
    t = T(name)
    assert (t.weyl_order, t.dim) == known[name]


# -- Hilbert series and flag polynomials --

def test_fseries_examples():
    assert f_series(T("A1")) == RatFunc(1, IntPoly([1, 0, -1]))
    assert f_series(T("A1", "A1")) == RatFunc(1, IntPoly([1, 0, -1]) ** 2)
    assert f_series(ReductiveType(central_torus_rank=1)) == RatFunc(1, IntPoly([1, -1]))


def test_flag_examples():
    assert flag_poly(T("A1")) == IntPoly([1, 1])
    assert flag_poly(T("A2")) == IntPoly([1, 2, 2, 1])
    assert flag_poly(T("B2")) == IntPoly([1, 2, 2, 2, 1])


@pytest.mark.parametrize("name", RANK_LE_4 + ["A1xA2", "B2xG2"])
def test_flag_poly_is_length_generating_function(name):
    t = T(*name.split("x"))
    assert flag_poly(t) == coxeter_length_poly(t)


def test_torus_identity():
    # F_T = F_G * B for the maximal torus T of G
    for name in ("A2", "B3", "G2"):
        t = T(name)
        torus = ReductiveType(central_torus_rank=t.rank)
        assert f_series(torus) == f_series(t) * RatFunc(flag_poly(t))


# -- enumeration --

@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("B3", 48), ("G2", 12)])
def test_enumeration_size(name, order):
    assert weyl_enumerate(T(name)).order == order


def test_a1_elements():
    els = sorted(weyl_enumerate(T("A1")).elements())
    assert els == [(Fraction(-1),), (Fraction(1),)]


@pytest.mark.parametrize("name", RANK_LE_4)
def test_reflections(name):
    t = T(name)
    for g in simple_reflections(t):
        assert int(np.trace(g)) == t.rank - 2
        assert (g @ g == np.eye(t.rank, dtype=np.int64)).all()
        assert round(np.linalg.det(g)) == -1


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "A2xB2"])
def test_molien_equals_degree_table(name):
    t = T(*name.split("x"))
    assert molien_series(weyl_enumerate(t)) == f_series(t)


def test_molien_plus_minus_identity():
    w = group_from_generators(2, [[-1, 0, 0, -1]])
    assert molien_series(w) == RatFunc(IntPoly([1, 0, 1]), IntPoly([1, 0, -1]) ** 2)


def test_molien_trivial_group():
    w = group_from_generators(3, [])
    assert molien_series(w) == RatFunc(1, IntPoly([1, -1]) ** 3)


def _sympy_molien(mats):
    n = mats[0].shape[0]
    total = sum(1 / sympy.Matrix(sympy.eye(n) - z * sympy.Matrix(m)).det() for m in mats)
    return sympy.cancel(total / len(mats))


def test_molien_cyclic_rotation_vs_sympy():
    rot = [0, -1, 1, -1]                      # order 3 in the A2 lattice basis
    w = group_from_generators(2, [rot])
    assert w.order == 3
    got = molien_series(w)
    mats = [np.array(e, dtype=object).reshape(2, 2) for e in w.elements()]
    ref = _sympy_molien(mats)
    mine = sum(c * z ** i for i, c in enumerate(got.num.coeffs)) / \
        sum(c * z ** i for i, c in enumerate(got.den.coeffs))
    assert sympy.simplify(mine - ref) == 0


def test_rational_generators():
    # a reflection conjugated by diag(1, 2) has fractional entries
    refl = [0, 2, Fraction(1, 2), 0]
    w = group_from_generators(2, [refl])
    assert w.order == 2 and not w.integral
    assert molien_series(w) == RatFunc(1, IntPoly([1, -1]) * IntPoly([1, 0, -1]))


@pytest.mark.parametrize("name", ["A2", "B3", "D4"])
def test_limit_and_degree(name):
    t = T(name)
    f = molien_series(weyl_enumerate(t))
    assert cancel_eval_at_one(f, t.rank) == Fraction(1, t.weyl_order)
    assert ratfunc_degree(f) == -sum(t.degrees)


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        weyl_enumerate(T("E7"))
    with pytest.raises(CapExceeded):
        weyl_enumerate(T("B3"), cap=10)


def test_cap_env(monkeypatch):
    monkeypatch.setenv("HOMSPACE_WEYL_CAP", "20")
    with pytest.raises(CapExceeded):
        weyl_enumerate(T("A3"))


# -- generator files --

def test_generator_file_round_trip():
    gens = [[0, 2, Fraction(1, 2), 0], [-1, 0, 0, -1]]
    text = format_generator_file(2, gens)
    dim, back = parse_generator_file(text)
    assert dim == 2 and back == [[Fraction(x) for x in g] for g in gens]


def test_generator_file_comments():
    dim, gens = parse_generator_file("# W = {+-1}\ndim 1\n\n-1  # negation\n")
    assert dim == 1 and gens == [[Fraction(-1)]]


@pytest.mark.parametrize("text", ["", "dim x\n1", "size 2\n1 0 0 1", "dim 2\n1 0 0", "dim 1\n1/0"])
def test_generator_file_errors(text):
    with pytest.raises(ParseError):
        parse_generator_file(text)
