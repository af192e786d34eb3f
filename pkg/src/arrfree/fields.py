"""Exact scalars: arbitrary-precision rationals and cyclotomic field elements.

Rationals are plain ``fractions.Fraction``.  Cyclotomic numbers are stored
reduced modulo the r-th cyclotomic polynomial, so equal field elements have
equal representations and can be hashed (flat keys depend on this).
Division inverts through the extended Euclidean algorithm against Phi_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are combined."""


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (ascending coefficient order)

def _int_poly_div_exact(num, den):
    "Divide integer polynomials exactly; den must be monic and divide num."
    num = list(num)
    d = len(den) - 1
    q = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        q[i - d] = c
        if c:
            for j, dj in enumerate(den):
                num[i - d + j] -= c * dj
    if any(num[:d]):
        raise ArithmeticError("polynomial division is not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple:
    """Coefficients of Phi_r, ascending degree, via (z^r - 1) / prod Phi_d."""
    if r < 1:
        raise ValueError("order must be a positive integer")
    poly = [-1] + [0] * (r - 1) + [1]
    for d in range(1, r):
        if r % d == 0:
            poly = _int_poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _totient_degree(r):
    return len(cyclotomic_polynomial(r)) - 1


def _qpoly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a, b):
    "Division with remainder in Q[z]; a, b are lists of Fractions."
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    return q, _qpoly_trim(a[:db])


@lru_cache(maxsize=None)
def _top_reduction(order):
    "Coefficients of z^deg mod Phi_order (Phi is monic)."
    phi = cyclotomic_polynomial(order)
    return tuple(Fraction(-c) for c in phi[:-1])


def _reduce_coeffs(order, raw):
    "Reduce a raw coefficient list of any length mod Phi_order."
    deg = _totient_degree(order)
    work = [Fraction(c) for c in raw]
    if len(work) < deg:
        work += [Fraction(0)] * (deg - len(work))
    top = _top_reduction(order)
    for j in range(len(work) - 1, deg - 1, -1):
        c = work[j]
        if c:
            for i, ti in enumerate(top):
                work[j - deg + i] += c * ti
    return tuple(work[:deg])


class CyclotomicNumber:
    """Element of Q(zeta_r), reduced mod Phi_r; immutable and hashable."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        deg = _totient_degree(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"need {deg} coefficients for order {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("CyclotomicNumber is immutable")

    def _lift(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise FieldMismatchError(
                    f"cyclotomic orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            deg = len(self.coeffs)
            return CyclotomicNumber(
                self.order, (Fraction(other),) + (Fraction(0),) * (deg - 1))
        return None

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        # constants hash like their Fraction value so mixed-type dicts stay sane
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(
            self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(
            self.order, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        deg = len(a)
        raw = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        raw[i + j] += ai * bj
        return CyclotomicNumber(self.order, _reduce_coeffs(self.order, raw))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("cyclotomic division by zero")
        # extended Euclid in Q[z] against Phi_r: s*a + t*Phi = g (a constant)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _qpoly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            prod = [Fraction(0)] * (len(q) + len(s1) - 1) if s1 else []
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        prod[i + j] -= qi * sj
            new = list(s0) + [Fraction(0)] * max(0, len(prod) - len(s0))
            for i, p in enumerate(prod):
                new[i] += p
            s0, s1 = s1, _qpoly_trim(new)
        g = r1[0]
        inv = [c / g for c in s1]
        return CyclotomicNumber(self.order, _reduce_coeffs(self.order, inv))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber(
            self.order, (Fraction(1),) + (Fraction(0),) * (len(self.coeffs) - 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"CyclotomicNumber({self.order}, {format_scalar(self)!r})"


Scalar = Union[Fraction, CyclotomicNumber]


# ---------------------------------------------------------------------------
# field descriptors

@dataclass(frozen=True)
class RationalField:
    kind: str = "rational"

    def scalar(self, value) -> Fraction:
        if isinstance(value, CyclotomicNumber):
            raise FieldMismatchError("cyclotomic scalar in a rational arrangement")
        return Fraction(value)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def parse(self, text):
        return parse_scalar(text, self)

    def format(self, value):
        return format_scalar(value)

    def to_json(self):
        return {"kind": "rational"}


@dataclass(frozen=True)
class CyclotomicField:
    order: int
    kind: str = "cyclotomic"

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("cyclotomic order must be >= 1")

    @property
    def degree(self):
        return _totient_degree(self.order)

    def scalar(self, value) -> CyclotomicNumber:
        if isinstance(value, CyclotomicNumber):
            if value.order != self.order:
                raise FieldMismatchError(
                    f"cyclotomic orders differ: {value.order} vs {self.order}")
            return value
        if isinstance(value, (int, Fraction)):
            return CyclotomicNumber(
                self.order,
                (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        raise FieldMismatchError(f"cannot coerce {value!r}")

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def zeta(self, power: int = 1):
        "zeta_r^power as a reduced element."
        deg = self.degree
        power %= self.order
        raw = [Fraction(0)] * (power + 1)
        raw[power] = Fraction(1)
        return CyclotomicNumber(self.order, _reduce_coeffs(self.order, raw))

    def parse(self, text):
        return parse_scalar(text, self)

    def format(self, value):
        return format_scalar(value)

    def to_json(self):
        return {"kind": "cyclotomic", "order": self.order}


QQ = RationalField()

Field = Union[RationalField, CyclotomicField]


def field_from_json(data) -> Field:
    if data["kind"] == "rational":
        return QQ
    if data["kind"] == "cyclotomic":
        return CyclotomicField(int(data["order"]))
    raise ValueError(f"unknown field kind {data['kind']!r}")


def scalar_key(x):
    "Total-order key for deterministic sorting of scalars of one field."
    if isinstance(x, CyclotomicNumber):
        return x.coeffs
    return x


# ---------------------------------------------------------------------------
# string form: rationals "p/q", cyclotomic numbers as polynomials in z

def format_scalar(value) -> str:
    if isinstance(value, (int, Fraction)):
        return str(value)
    terms = []
    for power in range(len(value.coeffs) - 1, -1, -1):
        c = value.coeffs[power]
        if not c:
            continue
        if power == 0:
            body = str(abs(c))
        else:
            z = "z" if power == 1 else f"z^{power}"
            body = z if abs(c) == 1 else f"{abs(c)}*{z}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


class ScalarParseError(ValueError):
    pass


def _parse_fraction(tok):
    tok = tok.strip()
    if "/" in tok:
        num, den = tok.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(tok))


def parse_scalar(text: str, field: Field):
    """Parse "p/q" over the rationals, or a polynomial in z like
    "1/2*z^2 - z + 3" over a cyclotomic field (interpreted mod Phi_r)."""
    text = text.strip()
    if isinstance(field, RationalField):
        try:
            return _parse_fraction(text)
        except ValueError as exc:
            raise ScalarParseError(f"bad rational {text!r}") from exc
    import re

    deg = field.degree
    coeffs = [Fraction(0)] * deg
    term_re = re.compile(
        r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(z(?:\^(\d+))?)?\s*")
    pos = 0
    seen = False
    while pos < len(text):
        m = term_re.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"bad scalar {text!r} at position {pos}")
        sign, coef, zpart, power = m.groups()
        if coef is None and zpart is None:
            raise ScalarParseError(f"bad scalar {text!r} at position {pos}")
        c = _parse_fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        p = 0
        if zpart:
            p = int(power) if power else 1
        raw = [Fraction(0)] * (p + 1)
        raw[p] = c
        reduced = _reduce_coeffs(field.order, raw)
        coeffs = [a + b for a, b in zip(coeffs, reduced)]
        pos = m.end()
        seen = True
    if not seen:
        raise ScalarParseError(f"empty scalar {text!r}")
    return CyclotomicNumber(field.order, coeffs)
