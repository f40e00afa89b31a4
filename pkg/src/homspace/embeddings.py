"""Regular embeddings given as finite orbit data.

An embedding X is described by its G-orbits; the total polynomial is the sum
over orbits (additivity), and R_X is that total divided by Q of the open
orbit.  Regularity of the data is the caller's responsibility.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NegativeCoefficient, NotDivisible, ParseError
from .exactalg import IntPoly, poly_div_exact
from .grammar import parse_group_spec
from .homogeneous import (DisconnectedSubgroup, GroupSpec, HomogeneousPair, Report,
                          half_poincare, q_poly, sl2xsl2_normalizer_subgroup)
from .weylcore import ReductiveType, flag_poly, group_from_generators


@dataclass(frozen=True)
class DirectPoly:
    """Known half-Poincare polynomial of an orbit, with its Q if known."""

    poly: IntPoly
    q: IntPoly = None

    def __post_init__(self):
        if self.poly.leading < 0:
            raise ValueError("orbit polynomial must have a non-negative leading coefficient")


@dataclass(frozen=True, eq=False)
class OrbitDatum:
    label: str
    payload: object  # HomogeneousPair or DirectPoly

    def half_poincare(self):
        if isinstance(self.payload, DirectPoly):
            return self.payload.poly
        return half_poincare(self.payload)

    def q(self):
        if isinstance(self.payload, DirectPoly):
            return self.payload.q
        return q_poly(self.payload)


@dataclass(frozen=True, eq=False)
class OrbitPoset:
    orbits: tuple
    open_orbit: str
    complete: bool = True
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        if not self.orbits:
            raise ValueError("an embedding has at least one orbit")
        labels = [o.label for o in self.orbits]
        if len(set(labels)) != len(labels):
            raise ValueError("orbit labels must be unique")
        if self.open_orbit not in labels:
            raise ValueError(f"open orbit {self.open_orbit!r} is not listed")
        top = self.open().half_poincare().degree
        for o in self.orbits:
            if o.label != self.open_orbit and o.half_poincare().degree >= top:
                raise ValueError(f"orbit {o.label!r} is not of smaller dimension than the open orbit")

    def open(self):
        return next(o for o in self.orbits if o.label == self.open_orbit)

    def __getitem__(self, label):
        return next(o for o in self.orbits if o.label == label)


def total_half_poincare(x):
    total = IntPoly()
    for o in x.orbits:
        total = total + o.half_poincare()
    return total


def q_open(x):
    q = x.open().q()
    if q is None:
        raise ValueError("the open orbit carries no Q")
    return q


def r_poly(x):
    """R_X = total / Q_open; non-negativity enforced for complete X."""
    total, q = total_half_poincare(x), q_open(x)
    try:
        r = poly_div_exact(total, q)
    except NotDivisible:
        raise NotDivisible(f"P_X = {total} is not divisible by Q = {q}") from None
    if x.complete and not r.is_nonnegative():
        raise NegativeCoefficient(f"R_X = {r} has a negative coefficient for a complete X")
    return r


def orbit_divisibility(x):
    """Per orbit: does Q_open divide Q_orbit with non-negative quotient?"""
    rep = Report(x.name or "orbit divisibility")
    qo = q_open(x)
    for o in x.orbits:
        if o.label == x.open_orbit:
            continue
        q = o.q()
        if q is None:
            rep.add(o.label, False, "no Q recorded")
            continue
        try:
            quot = poly_div_exact(q, qo)
        except NotDivisible:
            rep.add(o.label, False, f"{qo} does not divide {q}")
            continue
        rep.add(o.label, quot.is_nonnegative(), f"{q} = ({qo}) * ({quot})")
    return rep


def group_completion_quotient(t, x):
    """total / flag_poly(T) for an embedding of the group of type T."""
    return poly_div_exact(total_half_poincare(x), flag_poly(t))


def group_completion_check(t, x):
    try:
        group_completion_quotient(t, x)
    except NotDivisible:
        return False
    return True


# -- fixtures --

def _g(name, unip=0, torus=0):
    names = [name] if name else []
    return GroupSpec(ReductiveType.of(*names, torus=torus), unip)


def _parabolic(levi, g):
    """Parabolic subgroup with Levi type ``levi`` in the reductive group g."""
    return GroupSpec(levi, g.u_red - levi.u_red)


def projective_odd(m):
    """P^(2m+1) under PSO(2m+2): open orbit SO(2m+2)/SO(2m+1), closed the quadric Q^2m."""
    g = _g(f"D{m + 1}")
    levi = ReductiveType.of(f"D{m}", torus=1) if m >= 2 else ReductiveType(central_torus_rank=2)
    return OrbitPoset((
        OrbitDatum(f"SO({2 * m + 2})/SO({2 * m + 1})", HomogeneousPair(g, _g(f"B{m}"))),
        OrbitDatum(f"Q^{2 * m}", HomogeneousPair(g, _parabolic(levi, g.reductive))),
    ), f"SO({2 * m + 2})/SO({2 * m + 1})", True, f"projective_odd({m})")


def projective_even(m):
    """P^2m under SO(2m+1): open orbit SO(2m+1)/O(2m), closed the quadric Q^(2m-1).

    The open orbit is recorded directly with Q = 1, the value quoted for this
    completion; the Weyl-data computation for O(2m) gives z^m instead.
    """
    g = _g(f"B{m}")
    levi = (ReductiveType.of(f"B{m - 1}", torus=1) if m >= 2
            else ReductiveType(central_torus_rank=1))
    return OrbitPoset((
        OrbitDatum(f"SO({2 * m + 1})/O({2 * m})", DirectPoly(IntPoly.monomial(2 * m), IntPoly.one())),
        OrbitDatum(f"Q^{2 * m - 1}", HomogeneousPair(g, _parabolic(levi, g.reductive))),
    ), f"SO({2 * m + 1})/O({2 * m})", True, f"projective_even({m})")


def pgl2_wonderful():
    """P^3 = P(2x2 matrices) under PGL2 x PGL2: invertible vs rank-one matrices."""
    g = _g("A1")
    gg = GroupSpec(ReductiveType.of("A1", "A1"))
    return OrbitPoset((
        OrbitDatum("PGL2", HomogeneousPair(gg, g)),
        OrbitDatum("P1xP1", HomogeneousPair(gg, GroupSpec(ReductiveType(central_torus_rank=2), 2))),
    ), "PGL2", True, "pgl2_wonderful")


def sl2xsl2_counterexample():
    """Smooth completion of SL2 x SL2 / <T, (n, n)> obtained by blowing up (P1)^4 / sigma.

    Orbits: the open one; two divisors (SL2/N(T)) x P1 whose Q is recorded
    as 1 + z; and the exceptional divisor, a P1-bundle over P1 x P1 that
    splits into an open C*-orbit and two closed orbits.
    """
    gg = GroupSpec(ReductiveType.of("A1", "A1"))
    z = IntPoly.monomial
    side = DirectPoly(z(2) + z(3), IntPoly((1, 1)))
    return OrbitPoset((
        OrbitDatum("G/H", HomogeneousPair(gg, sl2xsl2_normalizer_subgroup())),
        OrbitDatum("D_12", side),
        OrbitDatum("D_34", side),
        OrbitDatum("E_open", HomogeneousPair(gg, GroupSpec(ReductiveType(central_torus_rank=1), 2))),
        OrbitDatum("E_0", HomogeneousPair(gg, GroupSpec(ReductiveType(central_torus_rank=2), 2))),
        OrbitDatum("E_inf", HomogeneousPair(gg, GroupSpec(ReductiveType(central_torus_rank=2), 2))),
    ), "G/H", True, "sl2xsl2_counterexample")


FIXTURES = {
    **{f"projective_odd_{m}": (lambda m=m: projective_odd(m)) for m in (1, 2, 3)},
    **{f"projective_even_{m}": (lambda m=m: projective_even(m)) for m in (1, 2, 3)},
    "pgl2_wonderful": pgl2_wonderful,
    "sl2xsl2_counterexample": sl2xsl2_counterexample,
}

# group type whose regular embedding the fixture is, where that applies
GROUP_COMPLETIONS = {"pgl2_wonderful": ReductiveType.of("A1")}


def fixture(name):
    """Look up a fixture; ``projective_odd(2)`` and ``projective_odd_2`` are the same."""
    key = re.sub(r"^(\w+)\((\d+)\)$", r"\1_\2", name.strip())
    try:
        return FIXTURES[key]()
    except KeyError:
        raise ParseError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


# -- text format --

def _coeffs(text):
    try:
        return IntPoly([int(c) for c in text.split(",") if c.strip()])
    except ValueError:
        raise ParseError(f"bad coefficient list {text!r}") from None


def parse_poset(text, name=""):
    """Parse the line-oriented orbit-poset format.

    complete true|false
    open <label>
    orbit <label> pair <G-spec> <H-spec>
    orbit <label> poly <c0,c1,...> [q <c0,c1,...>]
    """
    complete, open_label, orbits = None, None, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "complete":
            if len(tok) != 2 or tok[1] not in ("true", "false"):
                raise ParseError(f"line {lineno}: expected 'complete true|false'")
            complete = tok[1] == "true"
        elif head == "open":
            if len(tok) != 2:
                raise ParseError(f"line {lineno}: expected 'open <label>'")
            open_label = tok[1]
        elif head == "orbit":
            if len(tok) < 4:
                raise ParseError(f"line {lineno}: incomplete orbit line")
            label, kind = tok[1], tok[2]
            if kind == "pair" and len(tok) == 5:
                payload = HomogeneousPair(parse_group_spec(tok[3]), parse_group_spec(tok[4]))
            elif kind == "poly" and len(tok) == 4:
                payload = DirectPoly(_coeffs(tok[3]))
            elif kind == "poly" and len(tok) == 6 and tok[4] == "q":
                payload = DirectPoly(_coeffs(tok[3]), _coeffs(tok[5]))
            else:
                raise ParseError(f"line {lineno}: cannot parse orbit line {line!r}")
            orbits.append(OrbitDatum(label, payload))
        else:
            raise ParseError(f"line {lineno}: unknown keyword {head!r}")
    if complete is None or open_label is None:
        raise ParseError("missing 'complete' or 'open' header")
    return OrbitPoset(tuple(orbits), open_label, complete, name)


def format_poset(x):
    """Text form.  Disconnected-isotropy orbits are written as poly + q."""
    lines = [f"complete {'true' if x.complete else 'false'}", f"open {x.open_orbit}"]
    for o in x.orbits:
        p = o.payload
        if isinstance(p, HomogeneousPair) and p.connected:
            lines.append(f"orbit {o.label} pair {p.g} {p.h}")
        else:
            poly, q = o.half_poincare(), o.q()
            line = f"orbit {o.label} poly {','.join(map(str, poly.coeffs)) or '0'}"
            if q is not None:
                line += f" q {','.join(map(str, q.coeffs)) or '0'}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def load_poset(path):
    with open(path) as fh:
        return parse_poset(fh.read(), name=path)


# -- JSON form (exact, including disconnected isotropy) --

def _strs(p):
    return [str(c) for c in p.coeffs]


def _subgroup_to_dict(h):
    if isinstance(h, DisconnectedSubgroup):
        w = h.weyl_like
        return {"weyl": {"dim": w.dim,
                         "generators": [[str(Fraction(x)) for x in _flat(g)]
                                        for g in w.generators]},
                "u_identity": str(h.u_identity), "unipotent_extra": str(h.unipotent_extra),
                "label": h.label}
    return {"spec": str(h)}


def _flat(g):
    try:
        return [x for row in g.tolist() for x in row]
    except AttributeError:
        return list(g)


def poset_to_dict(x):
    orbits = []
    for o in x.orbits:
        p = o.payload
        if isinstance(p, DirectPoly):
            orbits.append({"label": o.label, "kind": "poly", "poly": _strs(p.poly),
                           "q": _strs(p.q) if p.q is not None else None})
        else:
            orbits.append({"label": o.label, "kind": "pair", "g": str(p.g),
                           "h": _subgroup_to_dict(p.h)})
    return {"name": x.name, "complete": x.complete, "open": x.open_orbit, "orbits": orbits}


def poset_from_dict(d):
    orbits = []
    for od in d["orbits"]:
        if od["kind"] == "poly":
            q = od.get("q")
            payload = DirectPoly(IntPoly(int(c) for c in od["poly"]),
                                 IntPoly(int(c) for c in q) if q is not None else None)
        else:
            hd = od["h"]
            if "spec" in hd:
                h = parse_group_spec(hd["spec"])
            else:
                w = hd["weyl"]
                group = group_from_generators(
                    w["dim"], [[Fraction(x) for x in g] for g in w["generators"]])
                h = DisconnectedSubgroup(group, int(hd["u_identity"]),
                                         int(hd["unipotent_extra"]), hd.get("label", "H"))
            payload = HomogeneousPair(parse_group_spec(od["g"]), h)
        orbits.append(OrbitDatum(od["label"], payload))
    return OrbitPoset(tuple(orbits), d["open"], bool(d["complete"]), d.get("name", ""))
