"""Homogeneous spaces G/H: the polynomials Q, p = P(sqrt z), Z-space Betti data.

All polynomials are in z = t^2.  Non-reductive groups are modelled only by
the dimension of their unipotent radical, which shifts powers of z and
nothing else.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (InternalInconsistency, InvalidPair, NonNegativityViolated,
                     NotDivisible, NotPolynomial)
from .exactalg import (IntPoly, RatFunc, cancel_eval_at_one, palindrome_check,
                       poly_div_exact, ratfunc_degree)
from .weylcore import ReductiveType, WeylMatrixGroup, f_series, flag_poly, molien_series

Z_MINUS_1 = IntPoly((-1, 1))


@dataclass(frozen=True)
class GroupSpec:
    """Connected linear algebraic group: reductive type + dim of unipotent radical."""

    reductive: ReductiveType
    unipotent_extra: int = 0

    @property
    def r(self):
        return self.reductive.rank

    @property
    def u_red(self):
        return self.reductive.u_red

    @property
    def u(self):
        return self.reductive.u_red + self.unipotent_extra

    @property
    def dim(self):
        return self.r + 2 * self.u_red + self.unipotent_extra

    @property
    def weyl_order(self):
        return self.reductive.weyl_order

    @property
    def connected(self):
        return True

    def f_series(self):
        return f_series(self.reductive)

    def flag_poly(self):
        return flag_poly(self.reductive)

    def reductive_part(self):
        return GroupSpec(self.reductive) if self.unipotent_extra else self

    def __str__(self):
        s = str(self.reductive)
        return f"{s}+U{self.unipotent_extra}" if self.unipotent_extra else s


@dataclass(frozen=True, eq=False)
class DisconnectedSubgroup:
    """Subgroup with disconnected reductive part, given by its full Weyl data.

    ``weyl_like`` is W_H acting on the Lie algebra of a maximal torus of H,
    component group included; ``u_identity`` is the positive-root count of
    the identity component.
    """

    weyl_like: WeylMatrixGroup
    u_identity: int
    unipotent_extra: int = 0
    label: str = "H"
    _f: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        bound = -ratfunc_degree(self.f_series())
        if bound < self.r + self.u_identity:
            raise InvalidPair(
                f"Molien degree bound violated: -deg F_H = {bound} < r_H + u_H = "
                f"{self.r + self.u_identity}")

    @property
    def r(self):
        return self.weyl_like.dim

    @property
    def u_red(self):
        return self.u_identity

    @property
    def u(self):
        return self.u_identity + self.unipotent_extra

    @property
    def dim(self):
        return self.r + 2 * self.u_identity + self.unipotent_extra

    @property
    def weyl_order(self):
        return self.weyl_like.order

    @property
    def connected(self):
        return False

    def f_series(self):
        if not self._f:
            self._f.append(molien_series(self.weyl_like))
        return self._f[0]

    def reductive_part(self):
        if not self.unipotent_extra:
            return self
        return DisconnectedSubgroup(self.weyl_like, self.u_identity, 0, self.label)

    def __str__(self):
        s = f"{self.label}[|W|={self.weyl_order}, r={self.r}, u0={self.u_identity}]"
        return f"{s}+U{self.unipotent_extra}" if self.unipotent_extra else s


@dataclass(frozen=True)
class HomogeneousPair:
    g: GroupSpec
    h: object  # GroupSpec (connected) or DisconnectedSubgroup

    def __post_init__(self):
        g, h = self.g, self.h
        if h.r > g.r:
            raise InvalidPair(f"rank of H ({h.r}) exceeds rank of G ({g.r})")
        if h.u > g.u:
            raise InvalidPair(f"u_H ({h.u}) exceeds u_G ({g.u})")
        if h.dim > g.dim:
            raise InvalidPair(f"dim H ({h.dim}) exceeds dim G ({g.dim})")

    @property
    def connected(self):
        return self.h.connected

    @property
    def reductive(self):
        return self.g.unipotent_extra == 0 and self.h.unipotent_extra == 0

    @property
    def dim(self):
        return self.g.dim - self.h.dim

    @property
    def delta_r(self):
        return self.g.r - self.h.r

    @property
    def delta_u(self):
        return self.g.u - self.h.u

    def reductive_part(self):
        return HomogeneousPair(self.g.reductive_part(), self.h.reductive_part())

    def __str__(self):
        return f"{self.g}/{self.h}"


def pair(g, h):
    """Shorthand: ``pair("D3", "B2")`` with names or ReductiveTypes or GroupSpecs."""
    return HomogeneousPair(_as_group(g), _as_group(h) if not isinstance(h, DisconnectedSubgroup) else h)


def _as_group(x):
    if isinstance(x, GroupSpec):
        return x
    if isinstance(x, ReductiveType):
        return GroupSpec(x)
    from .grammar import parse_group_spec
    return parse_group_spec(x)


def _f_route(red):
    """z^dim(G/H) F_H(1/z) / F_G(1/z) for a reductive pair, as a polynomial."""
    ratio = red.h.f_series() / red.g.f_series()
    shifted = ratio.at_inverse(shift=red.dim)
    try:
        return shifted.as_poly()
    except NotDivisible:
        raise NotDivisible(f"z^dim F_H(1/z)/F_G(1/z) is not a polynomial for {red}") from None


def _factor(delta_u, delta_r):
    return IntPoly.monomial(delta_u) * Z_MINUS_1 ** delta_r


@lru_cache(maxsize=None)
def _q_cached(g, h):
    red = HomogeneousPair(g, h)
    if h.connected:
        q = poly_div_exact(g.flag_poly(), h.flag_poly())
    else:
        q = poly_div_exact(_f_route(red), _factor(red.delta_u, red.delta_r))
    if not q.is_nonnegative():
        raise NonNegativityViolated(f"Q for {red} has a negative coefficient: {q}")
    return q


def q_poly(p):
    """Q_{G/H} in z; depends only on the reductive parts."""
    red = p.reductive_part()
    if red.h.connected:
        return _q_cached(red.g, red.h)
    return _q_cached.__wrapped__(red.g, red.h)


def half_poincare_routes(p):
    """(factored route, F-series route) for the reductive part of the pair.

    The F-series route is the Hilbert-series identity; the factored route is
    z^du (z-1)^dr Q with Q from flag polynomials when H is connected.
    """
    red = p.reductive_part()
    q = q_poly(red)
    factored = _factor(red.delta_u, red.delta_r) * q
    return factored, _f_route(red)


def half_poincare(p):
    """p(z) = P_{G/H}(sqrt z) = z^(u_G-u_H) (z-1)^(r_G-r_H) Q(z)."""
    factored, via_f = half_poincare_routes(p)
    if factored != via_f:
        raise InternalInconsistency(f"routes disagree for {p}: {factored} vs {via_f}")
    return _factor(p.delta_u, p.delta_r) * q_poly(p)


def _check_prime_power(q):
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def point_count(p, q):
    """Predicted |(G/H)(F_q)|."""
    if not _check_prime_power(q):
        raise ValueError(f"{q} is not a prime power")
    return half_poincare(p)(q)


def z_poincare(p):
    """Poincare polynomial of the torus quotient Z, in z = t^2.

    F_H(z) / ((1 - z)^(r_G - r_H) F_G(z)); reductive pairs only.
    """
    if not p.reductive:
        raise ValueError("z_poincare needs reductive G and H")
    one_minus_z = RatFunc(IntPoly((1, -1)))
    f = p.h.f_series() / (one_minus_z ** p.delta_r * p.g.f_series())
    try:
        out = f.as_poly()
    except NotDivisible:
        raise NotPolynomial(f"{f} is not a polynomial for {p}") from None
    if not out.is_nonnegative():
        raise NotPolynomial(f"Z-polynomial {out} has a negative coefficient")
    return out


def z_duality_holds(p):
    """z^dim Z * zp(1/z) == z^(u_G-u_H) Q(z) with dim Z = dim(G/H) - (r_G - r_H)."""
    red = p.reductive_part()
    zp = z_poincare(red)
    dim_z = red.dim - red.delta_r
    if zp.degree > dim_z:
        return False
    return zp.reversed(dim_z) == IntPoly.monomial(red.delta_u) * q_poly(red)


def e_render(poly, latex=False):
    """E(s, t) = p(st) as a display string."""
    terms = []
    for k in range(len(poly) - 1, -1, -1):
        c = poly[k]
        if not c:
            continue
        if k == 0:
            mono = ""
        elif k == 1:
            mono = "s t"
        else:
            mono = f"s^{{{k}}} t^{{{k}}}" if latex else f"s^{k} t^{k}"
        body = str(abs(c)) if not mono else (mono if abs(c) == 1 else f"{abs(c)} {mono}")
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def e_monomials(poly):
    """[(c, k)] meaning c * s^k t^k."""
    return [(c, k) for k, c in enumerate(poly.coeffs) if c]


@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    subject: str
    items: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.items.append(CheckItem(name, bool(passed), detail))

    @property
    def passed(self):
        return all(i.passed for i in self.items)

    def failures(self):
        return [i for i in self.items if not i.passed]

    def to_dict(self):
        return {"subject": self.subject, "passed": self.passed,
                "items": [i.to_dict() for i in self.items]}


def verify_theorem1(p):
    """Check every numeric consequence of the factorization for one pair."""
    rep = Report(str(p))
    red = p.reductive_part()
    try:
        q = q_poly(p)
    except (NotDivisible, NonNegativityViolated) as exc:
        rep.add("Q computable", False, f"{type(exc).__name__}: {exc}")
        return rep

    rep.add("Q has non-negative integer coefficients", q.is_nonnegative(), str(q))

    ratio = Fraction(red.g.weyl_order, red.h.weyl_order)
    rep.add("Q(1) = |W_G|/|W_H|", q(1) == ratio, f"Q(1) = {q(1)}, |W_G|/|W_H| = {ratio}")

    limit = cancel_eval_at_one(red.h.f_series(), red.h.r)
    rep.add("lim (1-z)^r_H F_H = 1/|W_H|", limit == Fraction(1, red.h.weyl_order),
            f"limit = {limit}")

    want_deg = red.g.u_red - red.h.u_red
    rep.add("deg Q = u_G,red - u_H0,red, leading coefficient 1",
            q.degree == want_deg and q.leading == 1,
            f"deg Q = {q.degree}, expected {want_deg}; leading {q.leading}")

    if p.connected:
        rep.add("Q(0) = 1", q[0] == 1, f"Q(0) = {q[0]}")
        rep.add("Q palindromic", palindrome_check(q, q.degree), str(q))

    try:
        factored, via_f = half_poincare_routes(p)
        rep.add("half-Poincare routes agree", factored == via_f,
                f"factored {factored}; F-series {via_f}")
    except NotDivisible as exc:
        rep.add("half-Poincare routes agree", False, str(exc))

    try:
        rep.add("Z-polynomial duality", z_duality_holds(red), str(z_poincare(red)))
    except NotPolynomial as exc:
        rep.add("Z-polynomial duality", False, str(exc))
    return rep


def chain_check(g, h, k):
    """Q_{G/K} == Q_{G/H} * Q_{H/K} for a chain K <= H <= G of connected groups."""
    g, h, k = _as_group(g), _as_group(h), _as_group(k)
    return q_poly(HomogeneousPair(g, k)) == (
        q_poly(HomogeneousPair(g, h)) * q_poly(HomogeneousPair(h, k)))


# -- fixtures --

def sl2xsl2_normalizer_subgroup():
    """H = <T, (n, n)> in SL2 x SL2: W_H = {+-I} on the 2-dim Cartan."""
    from .weylcore import group_from_generators
    w = group_from_generators(2, [[-1, 0, 0, -1]])
    return DisconnectedSubgroup(w, 0, label="<T,(n,n)>")


def orthogonal_even_subgroup(m):
    """O(2m) inside SO(2m+1): the full Weyl data of O(2m) is W(B_m)."""
    from .weylcore import weyl_enumerate
    w = weyl_enumerate(ReductiveType.of(f"B{m}"))
    return DisconnectedSubgroup(w, m * (m - 1), label=f"O({2 * m})")


def standard_pairs():
    """Classical embeddings used as the test matrix: (label, pair)."""
    t = ReductiveType.of
    g = GroupSpec
    out = []
    for n in (2, 3):
        out.append((f"SO({2 * n + 1})/SO({2 * n})", HomogeneousPair(g(t(f"B{n}")), g(t(f"D{n}")))))
    for n in (1, 2, 3):
        out.append((f"SO({2 * n + 2})/SO({2 * n + 1})", HomogeneousPair(g(t(f"D{n + 1}")), g(t(f"B{n}")))))
    out.append(("SL(2)/T1", HomogeneousPair(g(t("A1")), g(t(torus=1)))))
    for n in (2, 3):
        out.append((f"SL({n + 1})/GL({n})", HomogeneousPair(g(t(f"A{n}")), g(t(f"A{n - 1}", torus=1)))))
    for name in ("A1", "A2", "B2", "G2", "B3", "C3"):
        T = t(name)
        out.append((f"{name}/T{T.rank}", HomogeneousPair(g(T), g(t(torus=T.rank)))))
    for name in ("A1", "A2", "B2"):
        out.append((f"{name}x{name}/diag", HomogeneousPair(g(t(name, name)), g(t(name)))))
    out.append(("SL(3)/SO(3)", HomogeneousPair(g(t("A2")), g(t("B1")))))
    out.append(("A2/Borel", HomogeneousPair(g(t("A2")), g(t(torus=2), 3))))
    out.append(("B2/Borel", HomogeneousPair(g(t("B2")), g(t(torus=2), 4))))
    out.append(("G2/A2", HomogeneousPair(g(t("G2")), g(t("A2")))))
    out.append(("B3/G2", HomogeneousPair(g(t("B3")), g(t("G2")))))
    out.append(("A3/C2", HomogeneousPair(g(t("A3")), g(t("C2")))))
    return out


def disconnected_pairs():
    t = ReductiveType.of
    out = [("SL2xSL2/<T,(n,n)>",
            HomogeneousPair(GroupSpec(t("A1", "A1")), sl2xsl2_normalizer_subgroup()))]
    for m in (1, 2):
        out.append((f"SO({2 * m + 1})/O({2 * m})",
                    HomogeneousPair(GroupSpec(t(f"B{m}")), orthogonal_even_subgroup(m))))
    return out
