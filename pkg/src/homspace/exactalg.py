"""Exact univariate polynomials and rational functions.

A polynomial is a tuple of Python ints, lowest degree first, with trailing
zeros stripped; ``IntPoly(())`` is the zero polynomial.  Rational functions
are kept in a canonical reduced form so that ``==`` is mathematical
equality.  Nothing in here ever touches a float.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import (DivisionByZero, NotDivisible, PoleAtPoint, PoleAtZero,
                     PoleRemains)

__all__ = [
    "IntPoly", "RatFunc", "poly_div_exact", "poly_gcd", "ratfunc_arith",
    "series_expand", "cancel_eval_at_one", "palindrome_check", "poly_eval",
    "ratfunc_eval", "ratfunc_degree", "NEG_INF",
]

NEG_INF = float("-inf")


def _strip(seq):
    n = len(seq)
    while n and not seq[n - 1]:
        n -= 1
    return tuple(seq[:n])


class IntPoly:
    """Dense polynomial in ``z`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = _strip([int(c) for c in coeffs])
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k, c=1):
        return cls([0] * k + [c])

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def geometric(cls, d):
        """1 + z + ... + z^(d-1)."""
        return cls([1] * d)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return format_poly(self.coeffs, "z")

    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        return poly_eval(self, x)

    def shift(self, k):
        """Multiply by z^k."""
        if not self.coeffs:
            return self
        return IntPoly([0] * k + list(self.coeffs))

    def reversed(self, d=None):
        """z^d p(1/z); d defaults to the degree."""
        if not self.coeffs:
            return self
        if d is None:
            d = self.degree
        if d < self.degree:
            raise ValueError("reversal length below degree")
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return IntPoly(padded[::-1])

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def substitute_power(self, k):
        """p(z^k)."""
        out = [0] * (k * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return IntPoly(out)

    def is_nonnegative(self):
        return all(c >= 0 for c in self.coeffs)


ONE = IntPoly((1,))
Z = IntPoly((0, 1))


def format_poly(coeffs, var="z", power=1, latex=False):
    """Render coefficients (low degree first) as a descending sum.

    ``power`` rescales exponents, so ``format_poly(c, "t", 2)`` shows p(t^2).
    """
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        e = i * power
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        elif latex:
            mono = f"{var}^{{{e}}}"
        else:
            mono = f"{var}^{e}"
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{'' if latex else ' '}{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- rational-coefficient helpers (lists of Fraction, low degree first) --

def _qstrip(seq):
    n = len(seq)
    while n and seq[n - 1] == 0:
        n -= 1
    return list(seq[:n])


def _qdivmod(n, d):
    n = [Fraction(c) for c in n]
    d = _qstrip([Fraction(c) for c in d])
    if not d:
        raise DivisionByZero("polynomial division by zero")
    n = _qstrip(n)
    if len(n) < len(d):
        return [], n
    q = [Fraction(0)] * (len(n) - len(d) + 1)
    lead = d[-1]
    for k in range(len(n) - len(d), -1, -1):
        c = n[k + len(d) - 1] / lead
        q[k] = c
        if c:
            for j, dj in enumerate(d):
                n[k + j] -= c * dj
    return _qstrip(q), _qstrip(n[:len(d) - 1])


def _qgcd(a, b):
    a, b = _qstrip([Fraction(c) for c in a]), _qstrip([Fraction(c) for c in b])
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _primitive(coeffs):
    """Scale rational coefficients to coprime integers (sign preserved)."""
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def poly_div_exact(n, d):
    """Return q with q*d == n; raise NotDivisible otherwise."""
    if d.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if n.is_zero():
        return IntPoly()
    # cheap integer path: divisor with unit leading coefficient
    if abs(d.leading) == 1:
        rem = list(n.coeffs)
        dl = d.coeffs
        k_max = len(rem) - len(dl)
        if k_max < 0:
            raise NotDivisible(f"{n} is not divisible by {d}")
        q = [0] * (k_max + 1)
        for k in range(k_max, -1, -1):
            c = rem[k + len(dl) - 1] * d.leading
            q[k] = c
            if c:
                for j, dj in enumerate(dl):
                    rem[k + j] -= c * dj
        if any(rem):
            raise NotDivisible(f"{n} is not divisible by {d}")
        return IntPoly(q)
    q, r = _qdivmod(n.coeffs, d.coeffs)
    if r or any(c.denominator != 1 for c in q):
        raise NotDivisible(f"{n} is not divisible by {d}")
    return IntPoly([int(c) for c in q])


def poly_gcd(a, b):
    """Primitive gcd over Q, normalized to a positive leading coefficient."""
    g = _qgcd(a.coeffs, b.coeffs)
    return IntPoly(_primitive(g)) if g else IntPoly()


def _divide_out_z_minus_1(p):
    """Split p = (z-1)^m * rest; return (m, rest)."""
    m, coeffs = 0, list(p.coeffs)
    while coeffs and sum(coeffs) == 0:
        # synthetic division by (z - 1)
        out = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, 0, -1):
            acc += coeffs[i]
            out[i - 1] = acc
        coeffs = out
        m += 1
    return m, IntPoly(coeffs)


class RatFunc:
    """num/den in lowest terms.

    Canonical form: gcd(num, den) = 1 over Q, num and den integral with
    joint content 1, and the lowest nonzero coefficient of den positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, _canonical=False):
        if not isinstance(num, IntPoly):
            num = IntPoly(num) if not isinstance(num, int) else IntPoly((num,))
        if not isinstance(den, IntPoly):
            den = IntPoly(den) if not isinstance(den, int) else IntPoly((den,))
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _canonical:
            num, den = _canonicalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_poly(cls, p):
        return cls(p, ONE)

    def __eq__(self, other):
        if isinstance(other, (int, IntPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def __repr__(self):
        return f"RatFunc({list(self.num.coeffs)}, {list(self.den.coeffs)})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def as_poly(self):
        """Return the IntPoly value; NotDivisible if this is not one."""
        if self.den.degree != 0:
            raise NotDivisible(f"{self} is not a polynomial")
        d = self.den.coeffs[0]
        out = []
        for c in self.num.coeffs:
            if c % d:
                raise NotDivisible(f"{self} has non-integer coefficients")
            out.append(c // d)
        return IntPoly(out)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, IntPoly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return RatFunc(self.den ** -n, self.num ** -n)
        return RatFunc(self.num ** n, self.den ** n)

    def scale(self, c):
        """Multiply by a rational constant."""
        c = Fraction(c)
        return RatFunc(self.num * c.numerator, self.den * c.denominator)

    def at_inverse(self, shift=0):
        """z^shift * f(1/z) as a RatFunc."""
        dn, dd = self.num.degree, self.den.degree
        if self.num.is_zero():
            return self
        num = self.num.reversed()
        den = self.den.reversed()
        # f(1/z) = z^(dd - dn) * num_rev / den_rev
        k = dd - dn + shift
        if k >= 0:
            return RatFunc(num.shift(k), den)
        return RatFunc(num, den.shift(-k))


def _canonicalize(num, den):
    if num.is_zero():
        return IntPoly(), ONE
    if den.degree > 0 and num.degree > 0:
        g = _qgcd(num.coeffs, den.coeffs)
        if len(g) > 1:
            num_q, _ = _qdivmod(num.coeffs, g)
            den_q, _ = _qdivmod(den.coeffs, g)
            joint = _primitive(num_q + den_q)
            num = IntPoly(joint[:len(num_q)])
            den = IntPoly(joint[len(num_q):])
    g = gcd(num.content(), den.content())
    if g > 1:
        num = IntPoly([c // g for c in num.coeffs])
        den = IntPoly([c // g for c in den.coeffs])
    low = next(c for c in den.coeffs if c)
    if low < 0:
        num, den = -num, -den
    return num, den


def ratfunc_arith(a, b, op):
    """Field operation ``op`` in {"add", "sub", "mul", "div"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def series_expand(f, order):
    """First ``order + 1`` Taylor coefficients of f at z = 0."""
    d0 = f.den[0]
    if d0 == 0:
        raise PoleAtZero(f"{f} has a pole at 0")
    den = f.den.coeffs
    out = []
    for k in range(order + 1):
        acc = Fraction(f.num[k])
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc / d0)
    return out


def cancel_eval_at_one(f, r):
    """Value of (1 - z)^r * f(z) at z = 1 after exact cancellation."""
    if f.is_zero():
        return Fraction(0)
    mn, num = _divide_out_z_minus_1(f.num)
    md, den = _divide_out_z_minus_1(f.den)
    k = r + mn - md
    if k < 0:
        raise PoleRemains(f"pole of order {-k} at z = 1 survives")
    if k > 0:
        return Fraction(0)
    # (1 - z)^r = (-1)^r (z - 1)^r
    return Fraction((-1) ** r * sum(num.coeffs), sum(den.coeffs))


def palindrome_check(p, d):
    """True iff z^d p(1/z) == p(z)."""
    if p.is_zero():
        return True
    if p.degree > d:
        return False
    return all(p[i] == p[d - i] for i in range(d + 1))


def poly_eval(p, x):
    x = Fraction(x) if not isinstance(x, int) else x
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def ratfunc_eval(f, x):
    d = poly_eval(f.den, x)
    if d == 0:
        raise PoleAtPoint(f"{f} has a pole at {x}")
    return Fraction(poly_eval(f.num, x)) / d


def ratfunc_degree(f):
    """deg num - deg den (-inf for the zero function)."""
    if f.is_zero():
        return NEG_INF
    return f.num.degree - f.den.degree
