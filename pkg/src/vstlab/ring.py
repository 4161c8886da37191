"""Exact scalars: Gaussian rationals and Laurent polynomials in one variable t.

Rationals are plain :class:`fractions.Fraction`.  A :class:`GaussianRational`
is an element of Q(i), the exact stand-in for complex specializations.
A :class:`LaurentPoly` is a sparse map ``exponent -> coefficient`` over
either the integers (ring ``"Z"``) or Q(i) (ring ``"Qi"``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "RingError",
    "GaussianRational",
    "LaurentPoly",
    "parse_rational",
    "parse_gaussian",
    "parse_laurent",
    "lp_add",
    "lp_mul",
    "lp_is_unit",
    "lp_eval",
    "lp_divexact",
    "T",
    "ONE",
    "ZERO",
]


class RingError(ValueError):
    """Raised for ring mismatches, bad literals and undefined operations."""


Number = Union[int, Fraction, "GaussianRational"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


class GaussianRational:
    """p + q*i with p, q rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + _frac(im)
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational(a * c)
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i)")
        if not self.im:
            return GaussianRational(1 / self.re)
        norm = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self):
        return f"GaussianRational({self})"


_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_GAUSS_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?=$|[+-]))?(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?i)?$"
)


def parse_rational(text: str) -> Fraction:
    s = text.strip().replace(" ", "")
    if not _RAT_RE.match(s):
        raise RingError(f"bad rational literal: {text!r}")
    value = Fraction(s)
    return value


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``p/q``, ``p/q+r/s*i``, ``r/s*i`` or ``i``."""
    s = text.strip().replace(" ", "")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    m = _GAUSS_RE.match(s)
    if not s or m is None or (m.group("re") is None and m.group("im") is None):
        raise RingError(f"bad Gaussian rational literal: {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im")
    if im_text is None:
        im_part = Fraction(0)
    elif im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_text)
    return GaussianRational(re_part, im_part)


RINGS = ("Z", "Qi")


def _zero_coeff(c) -> bool:
    if isinstance(c, GaussianRational):
        return c.is_zero()
    return c == 0


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    ``coeffs`` never stores a zero coefficient, so equal polynomials compare
    (and hash) structurally.  Ring ``"Z"`` holds ints; ring ``"Qi"`` holds
    :class:`GaussianRational`.
    """

    __slots__ = ("coeffs", "ring", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None, ring: str = "Z"):
        if ring not in RINGS:
            raise RingError(f"unknown coefficient ring {ring!r}")
        clean = {}
        for e, c in (coeffs or {}).items():
            if ring == "Z":
                if isinstance(c, GaussianRational):
                    if c.im or c.re.denominator != 1:
                        raise RingError(f"coefficient {c} is not an integer")
                    c = int(c.re)
                elif isinstance(c, Fraction):
                    if c.denominator != 1:
                        raise RingError(f"coefficient {c} is not an integer")
                    c = int(c)
                elif not isinstance(c, int):
                    raise RingError(f"bad coefficient {c!r}")
            else:
                c = GaussianRational.coerce(c)
            if not _zero_coeff(c):
                clean[int(e)] = c
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # constructors
    @classmethod
    def const(cls, c, ring: str = "Z") -> "LaurentPoly":
        return cls({0: c}, ring)

    @classmethod
    def monomial(cls, c, e: int, ring: str = "Z") -> "LaurentPoly":
        return cls({e: c}, ring)

    @classmethod
    def coerce(cls, x, ring: str = "Z") -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, str):
            return parse_laurent(x, ring)
        return cls.const(x, ring)

    def to_ring(self, ring: str) -> "LaurentPoly":
        if ring == self.ring:
            return self
        return LaurentPoly(self.coeffs, ring)

    # inspection
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else None

    def valuation(self) -> int:
        return min(self.coeffs) if self.coeffs else None

    def terms(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GaussianRational)):
            if _zero_coeff(other):
                return not self.coeffs
            return len(self.coeffs) == 1 and self.coeffs.get(0) == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self.coeffs.items()))
            object.__setattr__(self, "_hash", h)
        return h

    # arithmetic
    def _other(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return LaurentPoly.const(other, self.ring)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._other(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LaurentPoly({}, self.ring)
        out: dict[int, Number] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return LaurentPoly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            unit, inv = lp_is_unit(self)
            if not unit:
                raise RingError(f"{self} is not a unit; negative power undefined")
            return inv ** (-k)
        result = LaurentPoly.const(1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        unit, inv = lp_is_unit(self)
        if not unit:
            raise RingError(f"{self} is not a unit")
        return inv

    def __truediv__(self, other):
        return lp_divexact(self, self._other(other))

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.ring)

    def __call__(self, t0):
        return lp_eval(self, t0)

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r}, ring={self.ring!r})"


def _fmt_coeff(c) -> str:
    if isinstance(c, GaussianRational):
        if c.im:
            return f"({c})"
        return str(c.re)
    return str(c)


def _is_negative(c) -> bool:
    if isinstance(c, GaussianRational):
        return not c.im and c.re < 0
    return c < 0


def format_laurent(p: LaurentPoly) -> str:
    """Canonical text: ascending exponents, e.g. ``2t^-1 + 1 - 3t^2``."""
    if not p.coeffs:
        return "0"
    parts = []
    for k, (e, c) in enumerate(p.terms()):
        neg = _is_negative(c)
        mag = -c if neg else c
        if e == 0:
            body = _fmt_coeff(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else _fmt_coeff(mag) + var
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?P<coeff>\([^()]*\)|\d+(?:/\d+)?)?"
    r"(?:\*?(?P<var>t)(?:\^(?P<exp>[+-]?\d+))?)?"
)


def parse_laurent(text: str, ring: str = "Z") -> LaurentPoly:
    """Parse the polynomial grammar, e.g. ``"2t^-1 + 1 - 3t^2"``.

    Ring ``"Z"`` accepts integer coefficients only.  Ring ``"Qi"`` also takes
    ``p/q`` and parenthesised Gaussian coefficients such as ``(1/2+3*i)t``.
    """
    s = text.replace(" ", "")
    if not s:
        raise RingError("empty polynomial literal")
    pos = 0
    out: dict[int, Number] = {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos or (m.group("coeff") is None and m.group("var") is None):
            raise RingError(f"bad polynomial literal {text!r} at offset {pos}")
        if pos > 0 and not m.group("sign"):
            raise RingError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        ctext = m.group("coeff")
        if ctext is None:
            c: Number = 1
        elif ctext.startswith("("):
            if ring != "Qi":
                raise RingError(f"Gaussian coefficient {ctext} needs ring Qi")
            c = parse_gaussian(ctext)
        elif "/" in ctext:
            c = Fraction(ctext)
            if ring == "Z" and c.denominator != 1:
                raise RingError(f"non-integer coefficient {ctext} in ring Z")
            if ring == "Z":
                c = int(c)
        else:
            c = int(ctext)
        if m.group("var") is None:
            e = 0
        else:
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        c = c * sign
        if ring == "Qi":
            c = GaussianRational.coerce(c)
        out[e] = out[e] + c if e in out else c
        pos = m.end()
    return LaurentPoly(out, ring)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_is_unit(a: LaurentPoly) -> tuple[bool, LaurentPoly | None]:
    """Units of Z[t^{+-1}] are exactly +-t^k; over Q(i) any nonzero monomial."""
    if len(a.coeffs) != 1:
        return False, None
    (e, c), = a.coeffs.items()
    if a.ring == "Z":
        if c not in (1, -1):
            return False, None
        return True, LaurentPoly({-e: c}, "Z")
    return True, LaurentPoly({-e: GaussianRational.coerce(c).inverse()}, "Qi")


def lp_eval(a: LaurentPoly, t0) -> GaussianRational:
    """Substitute t = t0 (nonzero) exactly."""
    t0 = GaussianRational.coerce(t0)
    if t0.is_zero():
        if a.coeffs and min(a.coeffs) < 0:
            raise RingError("cannot specialize t = 0 with negative exponents")
        raise RingError("specialization point t0 must be nonzero")
    if not a.coeffs:
        return GaussianRational(0)
    lo, hi = min(a.coeffs), max(a.coeffs)
    # Horner from the top, then scale by t0^lo
    acc = GaussianRational(0)
    for e in range(hi, lo - 1, -1):
        acc = acc * t0
        c = a.coeffs.get(e)
        if c is not None:
            acc = acc + c
    return acc * (t0 ** lo)


def lp_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a / b; raises RingError when b does not divide a."""
    if b.ring != a.ring:
        raise RingError(f"ring mismatch: {a.ring} vs {b.ring}")
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    bv, bd = b.valuation(), b.degree()
    lead = b.coeffs[bd]
    rem = dict(a.coeffs)
    quot: dict[int, Number] = {}
    span = bd - bv
    while rem:
        top = max(rem)
        if top - span < min(rem):
            raise RingError(f"{b} does not divide {a}")
        c = rem[top]
        if a.ring == "Z":
            q, r = divmod(c, lead)
            if r:
                raise RingError(f"{b} does not divide {a}")
        else:
            q = c / lead
        shift = top - bd
        quot[shift] = q
        for e, bc in b.coeffs.items():
            k = e + shift
            v = rem.get(k, 0) - q * bc
            if _zero_coeff(v):
                rem.pop(k, None)
            else:
                rem[k] = v
    return LaurentPoly(quot, a.ring)


T = LaurentPoly({1: 1})
ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly({})


def poly_list(items: Iterable) -> list[LaurentPoly]:
    return [LaurentPoly.coerce(x) for x in items]
