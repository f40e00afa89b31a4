"""Root data, Weyl groups as exact matrix groups, and their invariant series.

The degree table below is the only place the fundamental degrees are
written down; the test suite re-derives each entry from the Molien series
of the enumerated reflection representation.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

import numpy as np

from .errors import CapExceeded, InvalidRank, ParseError
from .exactalg import IntPoly, RatFunc

DEFAULT_CAP = 51840  # |W(E6)|
CAP_ENV = "HOMSPACE_WEYL_CAP"

FAMILIES = "ABCDEFG"


def default_cap():
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise InvalidRank(f"unknown family {f!r}")
        ok = {
            "A": n >= 1, "B": n >= 1, "C": n >= 1, "D": n >= 2,
            "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
        }[f]
        if not ok:
            raise InvalidRank(f"{f}{n} is not a valid simple type")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def degrees(self):
        return _simple_degrees(self.family, self.rank)


def _simple_degrees(f, n):
    if f == "A":
        return list(range(2, n + 2))
    if f in "BC":
        return list(range(2, 2 * n + 1, 2))
    if f == "D":
        return sorted(list(range(2, 2 * n - 1, 2)) + [n])
    return {
        ("G", 2): [2, 6],
        ("F", 4): [2, 6, 8, 12],
        ("E", 6): [2, 5, 6, 8, 9, 12],
        ("E", 7): [2, 6, 8, 10, 12, 14, 18],
        ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30],
    }[(f, n)]


@dataclass(frozen=True)
class ReductiveType:
    """Connected reductive type: simple factors times a central torus."""

    factors: tuple = ()
    central_torus_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        if self.central_torus_rank < 0:
            raise InvalidRank("negative torus rank")

    @classmethod
    def of(cls, *names, torus=0):
        """``ReductiveType.of("A2", "B1", torus=1)``."""
        return cls(tuple(SimpleType(s[0], int(s[1:])) for s in names), torus)

    @property
    def rank(self):
        return sum(f.rank for f in self.factors) + self.central_torus_rank

    @property
    def degrees(self):
        out = [1] * self.central_torus_rank
        for f in self.factors:
            out.extend(f.degrees)
        return sorted(out)

    @property
    def weyl_order(self):
        return prod(self.degrees)

    @property
    def u_red(self):
        return sum(d - 1 for d in self.degrees)

    @property
    def dim(self):
        return self.rank + 2 * self.u_red

    def __mul__(self, other):
        return ReductiveType(self.factors + other.factors,
                             self.central_torus_rank + other.central_torus_rank)

    def __str__(self):
        parts = [str(f) for f in self.factors]
        if self.central_torus_rank or not parts:
            parts.append(f"T{self.central_torus_rank}")
        return "x".join(parts)


def fundamental_degrees(T):
    return T.degrees


def f_series(T):
    """Hilbert series 1/prod(1 - z^d) of the invariant ring."""
    den = IntPoly.one()
    for d in T.degrees:
        den = den * IntPoly([1] + [0] * (d - 1) + [-1])
    return RatFunc(IntPoly.one(), den)


def flag_poly(T):
    """prod (1 + z + ... + z^(d-1)): the flag variety's polynomial in z = t^2."""
    out = IntPoly.one()
    for d in T.degrees:
        out = out * IntPoly.geometric(d)
    return out


# -- Cartan matrices and reflections --

def cartan_matrix(s):
    """Cartan matrix a_ij = <alpha_i^vee, alpha_j> (Bourbaki numbering)."""
    f, n = s.family, s.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if f in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if f == "B" and n >= 2:
            link(n - 2, n - 1, -2, -1)
        elif f == "C" and n >= 2:
            link(n - 2, n - 1, -1, -2)
    elif f == "D":
        for i in range(n - 3):
            link(i, i + 1)
        if n >= 3:
            link(n - 3, n - 2)
            link(n - 3, n - 1)
    elif f == "G":
        link(0, 1, -1, -3)
    elif f == "F":
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif f == "E":
        link(0, 2)
        link(1, 3)
        link(2, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    return a


def simple_reflections(T):
    """Simple reflections of T acting on its Cartan subalgebra, block-diagonal.

    In the simple-root basis, s_i(alpha_j) = alpha_j - a_ij alpha_i.  The
    central torus coordinates are fixed by every reflection.
    """
    r = T.rank
    gens = []
    offset = 0
    for s in T.factors:
        a = cartan_matrix(s)
        for i in range(s.rank):
            m = np.eye(r, dtype=np.int64)
            for j in range(s.rank):
                m[offset + i, offset + j] -= a[i][j]
            gens.append(m)
        offset += s.rank
    return gens


class WeylMatrixGroup:
    """Finite group of exact rational dim x dim matrices.

    Integral groups (all Weyl groups in the simple-root basis) are stored as
    an int64 array of shape (order, dim, dim); anything else as tuples of
    Fractions.
    """

    def __init__(self, dim, elements, generators=()):
        self.dim = dim
        self.generators = list(generators)
        if isinstance(elements, np.ndarray):
            self._array = elements
            self._frac = None
        else:
            self._array = None
            self._frac = [tuple(Fraction(x) for x in e) for e in elements]

    @property
    def integral(self):
        return self._array is not None

    @property
    def order(self):
        return len(self._array) if self.integral else len(self._frac)

    def __len__(self):
        return self.order

    def elements(self):
        """Elements as row-major tuples of Fractions."""
        if self.integral:
            return [tuple(Fraction(int(x)) for x in m.ravel()) for m in self._array]
        return list(self._frac)

    def as_array(self):
        if not self.integral:
            raise TypeError("group is not integral")
        return self._array

    def det_polys(self):
        """Multiset {det(1 - z w) : w in W} as a dict IntPoly -> count."""
        if self.integral:
            return _det_polys_integral(self._array)
        counts = {}
        for e in self._frac:
            p = _det_one_minus_zw(_frac_matrix(e, self.dim))
            counts[p] = counts.get(p, 0) + 1
        return counts


def _frac_matrix(flat, n):
    return [list(flat[i * n:(i + 1) * n]) for i in range(n)]


def _newton_det_poly(power_traces):
    """det(1 - zW) from traces p_k = tr(W^k), k = 1..n, by Newton's identities."""
    n = len(power_traces)
    e = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * power_traces[i - 1]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(n + 1)]
    # finite order forces a product of cyclotomic factors, hence integrality
    if any(c.denominator != 1 for c in coeffs):
        raise ValueError("non-integral characteristic polynomial")
    return IntPoly([int(c) for c in coeffs])


def _det_one_minus_zw(m):
    n = len(m)
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    traces = []
    for _ in range(n):
        p = [[sum(p[i][k] * m[k][j] for k in range(n)) for j in range(n)]
             for i in range(n)]
        traces.append(sum(p[i][i] for i in range(n)))
    return _newton_det_poly(traces)


def _det_polys_integral(arr):
    n = arr.shape[1]
    counts = {}
    if n == 0:
        counts[IntPoly.one()] = len(arr)
        return counts
    traces = np.empty((len(arr), n), dtype=np.int64)
    power = arr.copy()
    for k in range(n):
        traces[:, k] = np.trace(power, axis1=1, axis2=2)
        if k < n - 1:
            power = power @ arr
    keys, mult = np.unique(traces, axis=0, return_counts=True)
    for key, m in zip(keys, mult):
        p = _newton_det_poly([int(x) for x in key])
        counts[p] = counts.get(p, 0) + int(m)
    return counts


def molien_series(W):
    """Molien series (1/|W|) sum_w 1/det(1 - z w^-1), exactly.

    Inversion permutes W, so the sum runs over det(1 - z w) directly.
    """
    total = RatFunc(0)
    for poly, count in sorted(W.det_polys().items(), key=lambda kv: kv[0].coeffs):
        total = total + RatFunc(IntPoly((count,)), poly)
    return total.scale(Fraction(1, W.order))


def _closure_integral(gens, dim, cap):
    ident = np.eye(dim, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for g in gens:
            prods = batch @ g
            for m in prods:
                key = m.tobytes()
                if key not in seen:
                    seen[key] = m
                    frontier.append(m)
                    if len(seen) > cap:
                        raise CapExceeded(f">{cap}", cap)
    keys = sorted(seen)
    return np.stack([seen[k] for k in keys]) if keys else ident[None]


def _closure_fraction(gens, dim, cap):
    def mul(a, b):
        return tuple(sum(a[i * dim + k] * b[k * dim + j] for k in range(dim))
                     for i in range(dim) for j in range(dim))

    ident = tuple(Fraction(int(i == j)) for i in range(dim) for j in range(dim))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                m = mul(a, g)
                if m not in seen:
                    seen.add(m)
                    nxt.append(m)
                    if len(seen) > cap:
                        raise CapExceeded(f">{cap}", cap)
        frontier = nxt
    return sorted(seen)


def group_from_generators(dim, generators, cap=None):
    """Close a list of rational matrices (row-major flat or nested) under product."""
    cap = default_cap() if cap is None else cap
    flat = []
    for g in generators:
        g = list(g)
        if g and isinstance(g[0], (list, tuple)):
            g = [x for row in g for x in row]
        if len(g) != dim * dim:
            raise ValueError(f"generator has {len(g)} entries, expected {dim * dim}")
        flat.append([Fraction(x) for x in g])
    if all(x.denominator == 1 for g in flat for x in g):
        gens = [np.array([int(x) for x in g], dtype=np.int64).reshape(dim, dim) for g in flat]
        return WeylMatrixGroup(dim, _closure_integral(gens, dim, cap), gens)
    gens = [tuple(g) for g in flat]
    return WeylMatrixGroup(dim, _closure_fraction(gens, dim, cap), gens)


def weyl_enumerate(T, cap=None):
    """Weyl group of T on its Cartan subalgebra, by closure over simple reflections."""
    cap = default_cap() if cap is None else cap
    predicted = T.weyl_order
    if predicted > cap:
        raise CapExceeded(predicted, cap)
    gens = simple_reflections(T)
    r = T.rank
    if not gens:
        return WeylMatrixGroup(r, np.eye(r, dtype=np.int64)[None], [])
    return WeylMatrixGroup(r, _closure_integral(gens, r, cap), gens)


@lru_cache(maxsize=None)
def cached_weyl_group(T, cap=None):
    return weyl_enumerate(T, cap)


def parse_generator_file(text):
    """Parse the generator format: ``dim n`` then one generator per line.

    Each generator line holds n*n entries, row-major, written as integers or
    ``p/q``.  Blank lines and ``#`` comments are ignored.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty generator file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ParseError("first line must be 'dim n'", 0)
    try:
        dim = int(head[1])
    except ValueError:
        raise ParseError(f"bad dimension {head[1]!r}", 0) from None
    gens = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            entries = [Fraction(tok) for tok in ln.split()]
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad matrix entry on line {lineno}") from None
        if len(entries) != dim * dim:
            raise ParseError(f"line {lineno}: expected {dim * dim} entries, got {len(entries)}")
        gens.append(entries)
    return dim, gens


def load_generator_file(path, cap=None):
    with open(path) as fh:
        dim, gens = parse_generator_file(fh.read())
    return group_from_generators(dim, gens, cap)


def format_generator_file(dim, generators):
    out = [f"dim {dim}"]
    for g in generators:
        out.append(" ".join(str(Fraction(x)) for x in g))
    return "\n".join(out) + "\n"
