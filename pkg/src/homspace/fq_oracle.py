"""Brute-force point counts of small classical groups over prime fields.

Matrices are built column by column.  For form-preserving groups a partial
assignment is rejected as soon as one of its columns breaks the Gram
relations with an earlier column, and the determinant of the final column
is read off a cofactor vector so the last level is a single numpy pass.
"""

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import NonIntegerQuotient, NotRealizable, SearchSpaceTooLarge
from .homogeneous import GroupSpec, HomogeneousPair
from .weylcore import ReductiveType

KINDS = ("GL", "SL", "SO", "Sp", "torus", "generated")
MAX_SEARCH = int(os.environ.get("HOMSPACE_MAX_SEARCH", 10 ** 8))
MAX_P = int(os.environ.get("HOMSPACE_MAX_P", 13))


@dataclass(frozen=True)
class MatrixGroupEquations:
    """Defining data of a matrix group over F_p.

    kind "torus" is the diagonal subgroup of ``ambient`` (one of GL, SL, SO,
    Sp); kind "generated" is the closure of ``generators`` (row-major int
    tuples) and may carry its reductive ``type`` for order-formula checks.
    """

    kind: str
    n: int
    ambient: str = None
    generators: tuple = ()
    type: ReductiveType = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "torus" and self.ambient not in ("GL", "SL", "SO", "Sp"):
            raise ValueError("torus needs an ambient kind")
        if self.kind == "Sp" or (self.kind == "torus" and self.ambient == "Sp"):
            if self.n % 2:
                raise ValueError("Sp needs even n")
        limit = 5 if "SO" in (self.kind, self.ambient) else 4
        if not 1 <= self.n <= limit:
            raise ValueError(f"matrix size {self.n} outside 1..{limit}")

    def __str__(self):
        if self.kind == "torus":
            return f"T<{self.ambient}({self.n})>"
        if self.kind == "generated":
            return f"<{len(self.generators)} gens>({self.n})"
        return f"{self.kind}({self.n})"

    def reductive_type(self):
        n = self.n
        if self.kind == "generated":
            return self.type
        if self.kind == "torus":
            return ReductiveType(central_torus_rank=_ambient_rank(self.ambient, n))
        if self.kind == "GL":
            return ReductiveType.of(*([f"A{n - 1}"] if n > 1 else []), torus=1)
        if self.kind == "SL":
            return ReductiveType.of(*([f"A{n - 1}"] if n > 1 else []))
        if self.kind == "Sp":
            return ReductiveType.of(f"C{n // 2}")
        if n == 2:
            return ReductiveType(central_torus_rank=1)
        if n % 2:
            return ReductiveType.of(f"B{n // 2}") if n > 1 else ReductiveType()
        return ReductiveType.of(f"D{n // 2}")


def _ambient_rank(kind, n):
    return {"GL": n, "SL": n - 1, "Sp": n // 2, "SO": n // 2}[kind]


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _check_field(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > MAX_P:
        raise SearchSpaceTooLarge(f"p = {p} exceeds the limit {MAX_P}")


# -- forms --

def sp_gram(n):
    """Standard symplectic Gram matrix with anti-diagonal +-1."""
    j = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        j[i, n - 1 - i] = 1 if i < n // 2 else -1
    return j


def so_polar(n):
    """Polar form of Q(x) = sum x_i x_{n-1-i} (i < n/2) + x_mid^2 (n odd)."""
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a[i, n - 1 - i] = 1
    if n % 2:
        a[n // 2, n // 2] = 2
    return a


def so_quadratic(v, n, p):
    """Q evaluated on the rows of v, mod p."""
    v = np.atleast_2d(v)
    out = np.zeros(len(v), dtype=np.int64)
    for i in range(n // 2):
        out += v[:, i] * v[:, n - 1 - i]
    if n % 2:
        out += v[:, n // 2] ** 2
    return out % p


def _det(m):
    """Exact integer determinant by cofactor expansion (n <= 5)."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return int(m[0][0])
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * int(m[0][j]) * _det(minor)
    return total


@lru_cache(maxsize=None)
def _leibniz(n):
    from itertools import permutations
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    signs = np.array([_perm_sign(list(pr)) for pr in perms], dtype=np.int64)
    return perms, signs


def _det_batch(mats):
    """Exact integer determinants of a stack of small integer matrices."""
    mats = np.asarray(mats, dtype=np.int64)
    n = mats.shape[-1]
    perms, signs = _leibniz(n)
    terms = mats[:, np.arange(n)[None, :], perms].prod(axis=-1)
    return terms @ signs


def _cofactors_last_column(cols, n):
    """c with det[cols | x] = c . x for every x."""
    base = np.empty((n, n, n), dtype=np.int64)
    base[:, :, :n - 1] = np.array(cols, dtype=np.int64).T[None]
    base[:, :, n - 1] = np.eye(n, dtype=np.int64)
    return _det_batch(base)


def _cofactors_last_two(cols, n):
    """K with det[cols | a | b] = a^T K b."""
    eye = np.eye(n, dtype=np.int64)
    base = np.empty((n, n, n, n), dtype=np.int64)
    base[..., :n - 2] = np.array(cols, dtype=np.int64).T.reshape(n, n - 2) if cols else 0
    base[..., n - 2] = eye[:, None, :]
    base[..., n - 1] = eye[None, :, :]
    return _det_batch(base.reshape(n * n, n, n)).reshape(n, n)


def _rank_mod_p(m, p):
    m = [list(map(int, row)) for row in m]
    rank, rows, cols = 0, len(m), len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c] % p:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _all_vectors(n, p):
    return np.array(list(product(range(p), repeat=n)), dtype=np.int64)


def search_estimate(eq, p):
    n = eq.n
    if eq.kind in ("GL", "SL"):
        return p ** (n * n)
    if eq.kind == "Sp":
        return p ** (n * (n + 1) // 2 + n)
    if eq.kind == "SO":
        return p ** (n * (n - 1) // 2 + n)
    if eq.kind == "torus":
        return (p - 1) ** n
    return 0


# -- membership (used for tori and for sampling closure) --

def contains(eq, g, p):
    """Does the n x n integer matrix g (mod p) satisfy the defining equations?"""
    g = np.asarray(g, dtype=np.int64) % p
    n = eq.n
    kind = eq.ambient if eq.kind == "torus" else eq.kind
    if eq.kind == "torus" and np.any(g[~np.eye(n, dtype=bool)]):
        return False
    if eq.kind == "generated":
        return g.tobytes() in _generated_elements(eq, p)
    det = _det(g.tolist()) % p
    if det == 0:
        return False
    if kind == "GL":
        return True
    if kind == "SL":
        return det == 1
    if kind == "Sp":
        j = sp_gram(n)
        return not np.any((g.T @ j @ g - j) % p)
    a = so_polar(n)
    if np.any((g.T @ a @ g - a) % p):
        return False
    if np.any(so_quadratic(g.T, n, p) != so_quadratic(np.eye(n, dtype=np.int64), n, p)):
        return False
    return _so_determinant_condition(g, n, p)


def _so_determinant_condition(g, n, p):
    if p != 2:
        return _det(g.tolist()) % p == 1
    if n % 2:
        return True
    # characteristic 2: SO is the kernel of the Dickson invariant
    return _rank_mod_p((g - np.eye(n, dtype=np.int64)) % 2, 2) % 2 == 0


# -- enumeration --

def _count_linear(n, p, want_det_one):
    vecs = _all_vectors(n, p)
    weights = p ** np.arange(n - 1, -1, -1)
    codes = vecs @ weights
    nonzero = vecs[1:]

    def span_codes(cols):
        if not cols:
            return {0}
        c = np.array(cols)
        combos = _all_vectors(len(cols), p) @ c % p
        return set((combos @ weights).tolist())

    total = 0

    def rec(cols):
        nonlocal total
        if len(cols) == n - 1:
            cof = _cofactors_last_column(cols, n)
            dets = vecs @ cof % p
            total += int(np.count_nonzero(dets == 1 if want_det_one else dets != 0))
            return
        span = span_codes(cols)
        mask = np.array([c not in span for c in codes[1:].tolist()])
        for v in nonzero[mask]:
            rec(cols + [v])

    if n == 1:
        return 1 if want_det_one else p - 1
    rec([])
    return total


def _pairing_order(n):
    """Columns 0, n-1, 1, n-2, ...: each new column meets its form partner early."""
    order = []
    for i in range(n // 2):
        order += [i, n - 1 - i]
    if n % 2:
        order.append(n // 2)
    return order


def _perm_sign(order):
    sign, seen = 1, set()
    for start in range(len(order)):
        if start in seen:
            continue
        length, j = 0, start
        while j not in seen:
            seen.add(j)
            j = order[j]
            length += 1
        sign *= (-1) ** (length - 1)
    return sign


def _count_form(eq, p):
    n = eq.n
    if n == 1:
        return 1  # SO(1) is trivial
    order = _pairing_order(n)
    sign = _perm_sign(order) % p
    vecs = _all_vectors(n, p)[1:]
    if eq.kind == "Sp":
        gram = sp_gram(n)
        cands = [vecs] * n
    else:
        gram = so_polar(n)
        qv = so_quadratic(vecs, n, p)
        target = so_quadratic(np.eye(n, dtype=np.int64), n, p)
        cands = [vecs[qv == target[order[j]]] for j in range(n)]
    gram_mod = gram % p
    total = 0
    need_leaf_loop = eq.kind == "SO" and p == 2 and n % 2 == 0

    def filtered(j, cols):
        mask = np.ones(len(cands[j]), dtype=bool)
        for i, c in enumerate(cols):
            # B(c, x) = c^T A x = x . (A^T c)
            mask &= (cands[j] @ (gram.T @ c) % p) == gram_mod[order[i], order[j]]
        return cands[j][mask]

    def last_two(cols, penult):
        """Count completions of cols by two columns in one vectorized pass."""
        j = n - 1
        ok = np.ones((len(penult), len(cands[j])), dtype=bool)
        ok &= np.ones(len(penult), dtype=bool)[:, None] & filtered_mask(j, cols)[None, :]
        pair_gram = (penult @ gram % p) @ cands[j].T % p
        ok &= pair_gram == gram_mod[order[n - 2], order[j]]
        # det[cols | a | b] = a^T K b
        k = _cofactors_last_two(cols, n)
        dets = (penult @ k % p) @ cands[j].T % p
        if eq.kind == "Sp" or p == 2:
            return int(np.count_nonzero(ok & (dets != 0)))
        return int(np.count_nonzero(ok & (dets == sign)))

    def filtered_mask(j, cols):
        mask = np.ones(len(cands[j]), dtype=bool)
        for i, c in enumerate(cols):
            mask &= (cands[j] @ (gram.T @ c) % p) == gram_mod[order[i], order[j]]
        return mask

    def rec(cols):
        nonlocal total
        j = len(cols)
        last = filtered(j, cols)
        if j == n - 2 and not need_leaf_loop:
            if len(last):
                total += last_two(cols, last)
            return
        if j == n - 1:
            if not len(last):
                return
            # det of the matrix in natural column order = sign * det in search order
            dets = last @ _cofactors_last_column(cols, n) % p
            if eq.kind == "Sp" or (p == 2 and not need_leaf_loop):
                total += int(np.count_nonzero(dets))
            elif need_leaf_loop:
                for v, d in zip(last, dets):
                    if d:
                        m = np.empty((n, n), dtype=np.int64)
                        for k, col in enumerate(cols + [v]):
                            m[:, order[k]] = col
                        total += _so_determinant_condition(m, n, p)
            else:
                total += int(np.count_nonzero(dets == sign))
            return
        for v in last:
            rec(cols + [v])

    rec([])
    return total


def _count_torus(eq, p):
    n = eq.n
    total = 0
    for diag in product(range(1, p), repeat=n):
        if contains(eq, np.diag(diag), p):
            total += 1
    return total


@lru_cache(maxsize=None)
def _generated_elements(eq, p):
    n = eq.n
    gens = [np.array(g, dtype=np.int64).reshape(n, n) % p for g in eq.generators]
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                m = a @ g % p
                key = m.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(m)
                    if len(seen) > MAX_SEARCH:
                        raise SearchSpaceTooLarge("generated group exceeds the search budget")
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def enumerate_order(eq, p, max_search=None):
    """Number of matrices over F_p satisfying the defining equations."""
    _check_field(p)
    budget = MAX_SEARCH if max_search is None else max_search
    est = search_estimate(eq, p)
    if est > budget:
        raise SearchSpaceTooLarge(f"{eq} over F_{p}: estimated search {est} > {budget}")
    if eq.kind in ("GL", "SL"):
        return _count_linear(eq.n, p, eq.kind == "SL")
    if eq.kind in ("Sp", "SO"):
        return _count_form(eq, p)
    if eq.kind == "torus":
        return _count_torus(eq, p)
    return len(_generated_elements(eq, p))


def order_formula(T, unipotent_extra, q):
    """|G(F_q)| = q^u * prod (q^d - 1) for the split group of type T."""
    out = q ** (T.u_red + unipotent_extra)
    for d in T.degrees:
        out *= q ** d - 1
    return out


# -- realizing abstract pairs as matrix groups --

def _primitive_root(p):
    for g in range(1, p):
        if len({pow(g, k, p) for k in range(1, p)}) == p - 1:
            return g
    return 1


def levi_block_generators(k, n, p):
    """Generators of {diag(A, det(A)^-1 I...)}: GL_k block-embedded in SL_n, n = k + 1."""
    if n != k + 1:
        raise ValueError("only the GL_k subset SL_(k+1) block is supported")
    gens = []

    def embed(a, det):
        m = np.eye(n, dtype=np.int64)
        m[:k, :k] = a
        m[k, k] = pow(det, -1, p)
        return tuple(int(x) for x in m.ravel())

    for i in range(k):
        for j in range(k):
            if i != j:
                a = np.eye(k, dtype=np.int64)
                a[i, j] = 1
                gens.append(embed(a, 1))
    g = _primitive_root(p)
    if g != 1:
        a = np.eye(k, dtype=np.int64)
        a[0, 0] = g
        gens.append(embed(a, g))
    return tuple(gens)


def realize_group(spec):
    """MatrixGroupEquations for a split classical group type, or NotRealizable."""
    if spec.unipotent_extra:
        raise NotRealizable(f"{spec}: unipotent radicals are not realized")
    T = spec.reductive
    if not T.factors and T.central_torus_rank == 0:
        return MatrixGroupEquations("SL", 1)
    if len(T.factors) == 1:
        s = T.factors[0]
        if T.central_torus_rank == 0:
            if s.family == "A" and s.rank + 1 <= 4:
                return MatrixGroupEquations("SL", s.rank + 1)
            if s.family == "C" and 2 * s.rank <= 4:
                return MatrixGroupEquations("Sp", 2 * s.rank)
            if s.family == "B" and 2 * s.rank + 1 <= 5:
                return MatrixGroupEquations("SO", 2 * s.rank + 1)
            if s.family == "D" and 2 * s.rank <= 4:
                return MatrixGroupEquations("SO", 2 * s.rank)
        elif T.central_torus_rank == 1 and s.family == "A" and s.rank + 1 <= 4:
            return MatrixGroupEquations("GL", s.rank + 1)
    raise NotRealizable(f"{spec} has no matrix model here")


def realize_pair(pair, p):
    """(G equations, H equations) for a connected pair the oracle can enumerate."""
    if not pair.connected:
        raise NotRealizable("disconnected subgroups are not counted by the oracle")
    g_eq = realize_group(pair.g)
    h = pair.h
    if h.unipotent_extra:
        raise NotRealizable(f"{h}: unipotent radicals are not realized")
    if h == pair.g:
        return g_eq, g_eq
    ht = h.reductive
    if not ht.factors and ht.central_torus_rank == g_eq.reductive_type().rank:
        return g_eq, MatrixGroupEquations("torus", g_eq.n, ambient=g_eq.kind)
    gt = pair.g.reductive
    if (g_eq.kind == "SL" and ht.central_torus_rank == 1 and len(ht.factors) == 1
            and ht.factors[0].family == "A" and ht.factors[0].rank == gt.rank - 1):
        k = g_eq.n - 1
        gens = levi_block_generators(k, g_eq.n, p)
        return g_eq, MatrixGroupEquations("generated", g_eq.n, generators=gens, type=ht)
    raise NotRealizable(f"{h} inside {pair.g} has no matrix model here")


def quotient_count(g_eq, h_eq, p):
    og, oh = enumerate_order(g_eq, p), enumerate_order(h_eq, p)
    if og % oh:
        raise NonIntegerQuotient(f"|{g_eq}| = {og} not divisible by |{h_eq}| = {oh}")
    return og // oh


def homogeneous_count(pair, p):
    """|G(F_p)| / |H(F_p)| by enumeration of both groups."""
    g_eq, h_eq = realize_pair(pair, p)
    return quotient_count(g_eq, h_eq, p)


def oracle_pairs():
    """Connected pairs of the point-count test matrix."""
    t = ReductiveType.of
    g = GroupSpec
    return [
        ("SL2/T", HomogeneousPair(g(t("A1")), g(t(torus=1)))),
        ("SL3/T", HomogeneousPair(g(t("A2")), g(t(torus=2)))),
        ("Sp4/T", HomogeneousPair(g(t("C2")), g(t(torus=2)))),
        ("SO5/T", HomogeneousPair(g(t("B2")), g(t(torus=2)))),
        ("SL3/GL2", HomogeneousPair(g(t("A2")), g(t("A1", torus=1)))),
    ]
