"""Group-spec expressions.

    spec    := factor ("x" factor)* ["+" "U" nat]
    factor  := simple | torus | alias
    simple  := ("A"|"B"|"C"|"D"|"E"|"F"|"G") nat
    torus   := "T" nat
    alias   := ("SL"|"SO"|"Sp"|"GL"|"PGL") "(" nat ")"

Aliases only name Weyl data: SL(n) and PGL(n) both give A_{n-1}, since
nothing computed here sees the isogeny class.
"""

import re

from .errors import InvalidRank, ParseError
from .homogeneous import GroupSpec
from .weylcore import ReductiveType, SimpleType

_TOKEN = re.compile(r"\s*(?:(?P<alias>SL|SO|Sp|GL|PGL)\((?P<an>\d+)\)"
                    r"|(?P<fam>[A-GT])(?P<n>\d+))")


def _alias(name, n):
    """(simple factors, torus rank) for an alias."""
    if name in ("SL", "PGL"):
        if n < 1:
            raise InvalidRank(f"{name}({n})")
        return ([SimpleType("A", n - 1)] if n >= 2 else []), 0
    if name == "GL":
        if n < 1:
            raise InvalidRank(f"GL({n})")
        return ([SimpleType("A", n - 1)] if n >= 2 else []), 1
    if name == "Sp":
        if n < 2 or n % 2:
            raise InvalidRank(f"Sp({n}) needs even n >= 2")
        return [SimpleType("C", n // 2)], 0
    if name == "SO":
        if n < 2:
            raise InvalidRank(f"SO({n})")
        if n == 2:
            return [], 1
        if n % 2:
            return [SimpleType("B", n // 2)], 0
        return [SimpleType("D", n // 2)], 0
    raise ParseError(f"unknown alias {name}")


def parse_group_spec(text):
    """Parse an expression such as ``"B2xT1+U4"`` or ``"SO(6)"`` into a GroupSpec."""
    s = text.strip()
    if not s:
        raise ParseError("empty group spec", 0)
    body, unip = s, 0
    plus = s.find("+")
    if plus >= 0:
        body, tail = s[:plus], s[plus + 1:].strip()
        m = re.fullmatch(r"U(\d+)", tail)
        if not m:
            raise ParseError(f"expected 'U<nat>' after '+' in {text!r}", plus + 1)
        unip = int(m.group(1))
    factors, torus = [], 0
    pos = 0
    first = True
    while True:
        if not first:
            rest = body[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            if stripped[0] != "x":
                raise ParseError(f"expected 'x' in {text!r}", pos + len(rest) - len(stripped))
            pos += len(rest) - len(stripped) + 1
        m = _TOKEN.match(body, pos)
        if not m:
            raise ParseError(f"expected a factor in {text!r}", pos)
        if m.group("alias"):
            fs, tr = _alias(m.group("alias"), int(m.group("an")))
            factors.extend(fs)
            torus += tr
        elif m.group("fam") == "T":
            torus += int(m.group("n"))
        else:
            factors.append(SimpleType(m.group("fam"), int(m.group("n"))))
        pos = m.end()
        first = False
        if not body[pos:].strip():
            break
    return GroupSpec(ReductiveType(tuple(factors), torus), unip)


def format_group_spec(g):
    """Canonical text; parse_group_spec(format_group_spec(g)) == g."""
    return str(g)
