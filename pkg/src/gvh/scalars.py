"""Exact scalar types.

``GaussianRational``  a + b*i with rational a, b.
``HScalar``           polynomial in the formal symbol hbar with Gaussian-rational
                      coefficients; the coefficient ring of the Weyl algebra.
``QuadraticNumber``   a + b*sqrt(d) for a fixed square-free d.
``RationalFunction``  element of Q(hbar), used when solving linear systems with
                      hbar kept formal.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "HScalar",
    "QuadraticNumber",
    "RationalFunction",
    "as_fraction",
    "format_fraction",
]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(x)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational(other)
            except TypeError:
                return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = as_fraction(other)
            except TypeError:
                return NotImplemented
            return GaussianRational(self.re * other, self.im * other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(other.re / norm, -other.im / norm)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.im == 0 and self.re == other

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if self.im == 0:
            return format_fraction(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"{format_fraction(self.re)} {sign} {_imag_str(abs(self.im))}"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{format_fraction(x)}*i"


_ZERO_G = GaussianRational(0)
_ONE_G = GaussianRational(1)


class HScalar:
    """Polynomial in hbar with Gaussian-rational coefficients.

    Immutable; ``terms`` maps hbar exponent to a nonzero ``GaussianRational``.
    hbar is a formal indeterminate and is never inverted here, except through
    the exact :meth:`divide_hbar`, which refuses a nonzero constant term.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, v in terms.items():
                if k < 0:
                    raise ValueError("negative hbar power")
                v = GaussianRational.coerce(v)
                if v:
                    clean[k] = v
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "HScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "HScalar":
        return cls({0: value})

    @classmethod
    def hbar(cls, power: int = 1, coeff=1) -> "HScalar":
        return cls({power: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, power: int) -> GaussianRational:
        return self._terms.get(power, _ZERO_G)

    @property
    def degree(self) -> int:
        return max(self._terms) if self._terms else -1

    @staticmethod
    def coerce(x) -> "HScalar":
        if isinstance(x, HScalar):
            return x
        return HScalar.const(x)

    def __add__(self, other):
        if not isinstance(other, HScalar):
            try:
                other = HScalar.const(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return HScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return HScalar._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-HScalar.coerce(other))

    def __rsub__(self, other):
        return HScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, HScalar):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            if not other:
                return HScalar._raw({})
            return HScalar._raw({k: v * other for k, v in self._terms.items()})
        out: dict = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = k1 + k2
                s = out.get(k)
                out[k] = v1 * v2 if s is None else s + v1 * v2
        return HScalar._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of an HScalar")
        out = HScalar.const(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, power: int) -> "HScalar":
        """Multiply by hbar**power."""
        return HScalar._raw({k + power: v for k, v in self._terms.items()})

    def divide_hbar(self) -> "HScalar":
        if 0 in self._terms:
            raise ArithmeticError(f"{self} is not divisible by hbar")
        return HScalar._raw({k - 1: v for k, v in self._terms.items()})

    def divisible_by_hbar(self, power: int = 1) -> bool:
        return all(k >= power for k in self._terms)

    def conjugate(self) -> "HScalar":
        return HScalar._raw({k: v.conjugate() for k, v in self._terms.items()})

    def is_real(self) -> bool:
        return all(v.im == 0 for v in self._terms.values())

    def real_part(self) -> dict:
        return {k: v.re for k, v in self._terms.items() if v.re}

    def imag_part(self) -> dict:
        return {k: v.im for k, v in self._terms.items() if v.im}

    def evaluate(self, hbar) -> GaussianRational:
        h = as_fraction(hbar)
        out = _ZERO_G
        for k, v in self._terms.items():
            out = out + v * (h**k)
        return out

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, HScalar):
            return self._terms == other._terms
        try:
            other = HScalar.const(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, v) for k, v in self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"HScalar({self})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            parts.append(_format_hterm(self._terms[k], k))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def is_single_term(self) -> bool:
        if len(self._terms) != 1:
            return False
        (v,) = self._terms.values()
        return v.re == 0 or v.im == 0


def _format_hterm(c: GaussianRational, k: int) -> str:
    hpart = "" if k == 0 else ("hbar" if k == 1 else f"hbar^{k}")
    if c.im == 0 or c.re == 0:
        x, unit = (c.re, "") if c.im == 0 else (c.im, "i")
        sign = "-" if x < 0 else ""
        mag = abs(x)
        factors = []
        if mag != 1 or (not unit and not hpart):
            factors.append(format_fraction(mag))
        if unit:
            factors.append(unit)
        if hpart:
            factors.append(hpart)
        return sign + "*".join(factors)
    inner = f"({c})"
    return inner + ("*" + hpart if hpart else "")


HBAR = HScalar.hbar(1)
I_UNIT = HScalar.const(GaussianRational(0, 1))
ONE = HScalar.const(1)
ZERO = HScalar()


class QuadraticNumber:
    """Element a + b*sqrt(d) of Q(sqrt d), d square-free and not 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d == 1 or d == 0:
            raise ValueError("d must be square-free and different from 0, 1")
        self.a = as_fraction(a)
        self.b = as_fraction(b)
        self.d = int(d)

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticNumber":
        return cls(0, 1, d)

    def _lift(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError("mixing different quadratic fields")
            return other
        return QuadraticNumber(as_fraction(other), 0, self.d)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        norm = o.a * o.a - o.d * o.b * o.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        return self * QuadraticNumber(o.a / norm, -o.b / norm, self.d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def is_rational(self) -> bool:
        return self.b == 0

    def simplify(self):
        """Return a Fraction when the irrational part vanishes."""
        return self.a if self.b == 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d) or (
                self.b == 0 and other.b == 0 and self.a == other.a
            )
        try:
            return self.b == 0 and self.a == as_fraction(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadraticNumber({self})"

    def __str__(self):
        if self.b == 0:
            return format_fraction(self.a)
        root = f"sqrt({self.d})"
        bpart = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{format_fraction(self.b)}*{root}"
        if self.a == 0:
            return bpart
        if bpart.startswith("-"):
            return f"({format_fraction(self.a)} - {bpart[1:]})"
        return f"({format_fraction(self.a)} + {bpart})"


# --------------------------------------------------------------------------
# Q(hbar): dense univariate polynomials over Q as tuples, low degree first.


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _ptrim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pscale(a, s):
    return _ptrim(x * s for x in a)


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = f
        for i, y in enumerate(b):
            a[shift + i] -= f * y
        a = list(_ptrim(a))
    return _ptrim(q), tuple(a)


def _pgcd(a, b):
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pscale(a, 1 / a[-1]) if a else a


def _low(a):
    for i, x in enumerate(a):
        if x:
            return i
    return len(a)


class RationalFunction:
    """Exact element of Q(hbar), kept as num/den with den monic and coprime.

    Linear systems built from Weyl-algebra identities mostly produce entries of
    the form c*hbar**k, so the hbar-power part of numerator and denominator is
    cancelled without a gcd and Euclid runs only when both sides remain
    non-monomial.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(Fraction(1),), _normalized=False):
        if _normalized:
            self.num, self.den = num, den
            return
        num = _ptrim(as_fraction(x) for x in num)
        den = _ptrim(as_fraction(x) for x in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _normalize(num, den):
        if not num:
            return (), (Fraction(1),)
        k = min(_low(num), _low(den))
        if k:
            num, den = num[k:], den[k:]
        if len(den) > 1 and len(num) > 1 and _low(den) != len(den) - 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, _ = _pdivmod(num, g)
                den, _ = _pdivmod(den, g)
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        return num, den

    @classmethod
    def from_powers(cls, powers: dict) -> "RationalFunction":
        if not powers:
            return cls()
        top = max(powers)
        num = [Fraction(0)] * (top + 1)
        for k, v in powers.items():
            num[k] = as_fraction(v)
        return cls(num)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((as_fraction(c),))

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def polynomial_powers(self) -> dict:
        if not self.is_polynomial():
            raise ArithmeticError(f"{self} is not a polynomial in hbar")
        return {k: v for k, v in enumerate(self.num) if v}

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            num = _padd(self.num, other.num)
            return RationalFunction(*self._normalize(num, self.den), _normalized=True) if num else RationalFunction()
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        if not num:
            return RationalFunction()
        return RationalFunction(*self._normalize(num, _pmul(self.den, other.den)), _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        if not self.num or not other.num:
            return RationalFunction()
        return RationalFunction(
            *self._normalize(_pmul(self.num, other.num), _pmul(self.den, other.den)),
            _normalized=True,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.const(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return self * RationalFunction(other.den, other.num)

    def __rtruediv__(self, other):
        return RationalFunction.const(other) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.const(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        n = _pstr(self.num)
        if self.is_polynomial():
            return n
        return f"({n})/({_pstr(self.den)})"


def _pstr(a) -> str:
    if not a:
        return "0"
    return str(HScalar({k: v for k, v in enumerate(a)}))
