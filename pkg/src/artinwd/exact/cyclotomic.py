"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as a coefficient vector over the power
basis 1, zeta_n, ..., zeta_n^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  Mixed-level arithmetic embeds both operands into Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache

from ..errors import ParseError

__all__ = [
    "Cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "cyclo_normalize",
    "sqrt_rational",
    "as_cyclotomic",
]


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _int_poly_divexact(num, den):
    # constant-first integer polynomials; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "inexact division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic level must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple:
    """Row k holds the integer coordinates of zeta_n^k, 0 <= k < n."""
    phi = euler_phi(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyc[i]
    return tuple(rows)


_ZERO = Fraction(0)


class Cyclotomic:
    """Immutable element of Q(zeta_n) in reduced power-basis form."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, coeffs=(0,), level: int = 1):
        if level < 1:
            raise ValueError("cyclotomic level must be positive")
        # accepts any-length vectors; reduces through zeta_n^k
        table = _power_table(level)
        phi = euler_phi(level)
        acc = [_ZERO] * phi
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if c:
                for i, t in enumerate(table[k % level]):
                    if t:
                        acc[i] += c * t
        self.level = level
        self.coeffs = tuple(acc)
        self._hash = None

    @classmethod
    def _raw(cls, level, coeffs):
        obj = object.__new__(cls)
        obj.level = level
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value) -> "Cyclotomic":
        return cls._raw(1, (Fraction(value),))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        if n < 1:
            raise ValueError("cyclotomic level must be positive")
        return cls._raw(n, tuple(Fraction(c) for c in _power_table(n)[k % n]))

    # -- structure -----------------------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_fraction(self) -> Fraction:
        m = self.minimal()
        if m.level != 1:
            raise ValueError(f"{self} is not rational")
        return m.coeffs[0]

    def is_integer(self) -> bool:
        m = self.minimal()
        return m.level == 1 and m.coeffs[0].denominator == 1

    def embed(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m); requires level | m."""
        n = self.level
        if m % n:
            raise ValueError(f"cannot embed level {n} into level {m}")
        if m == n:
            return self
        step = m // n
        table = _power_table(m)
        acc = [_ZERO] * euler_phi(m)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, t in enumerate(table[i * step % m]):
                    if t:
                        acc[j] += c * t
        return Cyclotomic._raw(m, tuple(acc))

    def minimal(self) -> "Cyclotomic":
        """Same element written at the smallest level that contains it."""
        if self.level == 1:
            return self
        if self.is_rational():
            return Cyclotomic._raw(1, (self.coeffs[0],))
        n = self.level
        for d in _divisors(n)[1:-1]:
            if d % 4 == 2:
                continue
            sol = _solve_subfield(self, d)
            if sol is not None:
                return Cyclotomic._raw(d, sol)
        if n % 4 == 2:
            sol = _solve_subfield(self, n // 2)
            if sol is not None:
                return Cyclotomic._raw(n // 2, sol)
        return self

    def galois(self, a: int) -> "Cyclotomic":
        """Automorphism zeta_n -> zeta_n^a (a coprime to the level)."""
        n = self.level
        if math.gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        table = _power_table(n)
        acc = [_ZERO] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, t in enumerate(table[a * i % n]):
                    if t:
                        acc[j] += c * t
        return Cyclotomic._raw(n, tuple(acc))

    def conjugate(self) -> "Cyclotomic":
        if self.level <= 2 or self.is_rational():
            return self
        return self.galois(-1)

    def norm(self) -> Fraction:
        n = self.level
        prod = Cyclotomic.rational(1)
        for a in range(1, n + 1):
            if math.gcd(a, n) == 1:
                prod = prod * self.galois(a)
        return prod.to_fraction()

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.coeffs[0])
        n = self.level
        prod = Cyclotomic.rational(1)
        for a in range(2, n + 1):
            if math.gcd(a, n) == 1:
                prod = prod * self.galois(a)
        norm = (prod * self).to_fraction()
        return prod * Fraction(1, 1) / norm

    def to_complex(self) -> complex:
        n = self.level
        return sum(
            float(c) * cmath.exp(2j * math.pi * k / n)
            for k, c in enumerate(self.coeffs)
            if c
        )

    def sort_key(self, level: int) -> tuple:
        return self.embed(level).coeffs

    # -- arithmetic ----------------------------------------------------

    def _align(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return None, None
        n, m = self.level, other.level
        if n == m:
            return self, other
        if m == 1:
            return self, other.embed(n)
        if n == 1:
            return self.embed(m), other
        lcm = n * m // math.gcd(n, m)
        return self.embed(lcm), other.embed(lcm)

    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return Cyclotomic._raw(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.level, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return Cyclotomic._raw(a.level, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyclotomic._raw(self.level, tuple(x * other for x in self.coeffs))
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        n = a.level
        if n == 1:
            return Cyclotomic._raw(1, (a.coeffs[0] * b.coeffs[0],))
        phi = len(a.coeffs)
        conv = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        table = _power_table(n)
        acc = list(conv[:phi])
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                for j, t in enumerate(table[k % n]):
                    if t:
                        acc[j] += c * t
        return Cyclotomic._raw(n, tuple(acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic._raw(self.level, tuple(x / other for x in self.coeffs))
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_cyclotomic(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            m = self.minimal()
            self._hash = hash((m.level, m.coeffs)) if m.level > 1 else hash(m.coeffs[0])
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.to_literal()!r})"

    def __str__(self):
        return self.to_literal()

    def to_literal(self) -> str:
        """Canonical literal at the minimal level, in the fixture grammar."""
        m = self.minimal()
        terms = []
        for k, c in enumerate(m.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                z = f"z({m.level})" + (f"^{k}" if k > 1 else "")
                body = z if mag == 1 else f"{mag}*{z}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _solve_subfield(x: Cyclotomic, d: int):
    """Coordinates of x in Q(zeta_d) (d | level) or None."""
    n = x.level
    step = n // d
    table = _power_table(n)
    phi_d = euler_phi(d)
    cols = [table[i * step % n] for i in range(phi_d)]
    rows = len(x.coeffs)
    # augmented system rows x (phi_d + 1)
    mat = [[Fraction(cols[j][r]) for j in range(phi_d)] + [x.coeffs[r]] for r in range(rows)]
    piv_cols = []
    r = 0
    for c in range(phi_d):
        pivot = next((i for i in range(r, rows) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    if any(mat[i][phi_d] for i in range(r, rows)):
        return None
    sol = [_ZERO] * phi_d
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][phi_d]
    return tuple(sol)


def as_cyclotomic(value):
    """Coerce int / Fraction / Cyclotomic; NotImplemented otherwise."""
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic._raw(1, (Fraction(value),))
    return NotImplemented


# -- square roots of rationals ------------------------------------------


def _sqrt_prime(p: int) -> Cyclotomic:
    """Positive real square root of a prime, via quadratic Gauss sums."""
    if p == 2:
        return Cyclotomic.zeta(8, 1) + Cyclotomic.zeta(8, 7)
    squares = {a * a % p for a in range(1, p)}
    g = Cyclotomic([0] + [1 if a in squares else -1 for a in range(1, p)], p)
    if p % 4 == 1:
        return g
    # g = i*sqrt(p)
    return g * Cyclotomic.zeta(4, 3)


def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def sqrt_rational(value) -> Cyclotomic:
    """Principal square root of a rational (positive real, or i*sqrt(-v))."""
    value = Fraction(value)
    if value == 0:
        return Cyclotomic.rational(0)
    sign = -1 if value < 0 else 1
    num, den = abs(value.numerator), value.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    radicand = num * den
    outside = Fraction(1, den)
    root = Cyclotomic.rational(1)
    for prime, e in _factor(radicand).items():
        outside *= prime ** (e // 2)
        if e % 2:
            root = root * _sqrt_prime(prime)
    result = root * outside
    if sign < 0:
        result = result * Cyclotomic.zeta(4)
    return result


# -- literal grammar ----------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<z>z\(\s*(?P<lvl>[+-]?\d+)\s*\))|(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<op>[-+*^]))"
)


def cyclo_normalize(expr: str) -> Cyclotomic:
    """Parse a cyclotomic literal such as ``"-1/2 + 3*z(5)^2"``.

    Raises :class:`ParseError` on malformed input or a non-positive level.
    """
    if not isinstance(expr, str):
        raise ParseError(f"expected a literal string, got {type(expr).__name__}")
    tokens = []
    pos = 0
    text = expr.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} in {expr!r}")
        if m.group("z"):
            tokens.append(("z", int(m.group("lvl"))))
        elif m.group("num"):
            tokens.append(("num", Fraction(m.group("num").replace(" ", ""))))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    if not tokens:
        raise ParseError(f"empty cyclotomic literal {expr!r}")

    i = 0
    total = Cyclotomic.rational(0)
    first = True

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    while i < len(tokens):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' between terms in {expr!r}")
        first = False
        kind, val = peek()
        coeff = Fraction(1)
        if kind == "num":
            coeff = val
            i += 1
            kind, val = peek()
            if kind == "op" and val == "*":
                i += 1
                kind, val = peek()
                if kind != "z":
                    raise ParseError(f"expected z(n) after '*' in {expr!r}")
            else:
                total = total + sign * coeff
                continue
        if kind != "z":
            raise ParseError(f"expected a rational or z(n) in {expr!r}")
        level = val
        if level < 1:
            raise ParseError(f"cyclotomic level must be positive in {expr!r}")
        i += 1
        exponent = 1
        kind, val = peek()
        if kind == "op" and val == "^":
            i += 1
            esign = 1
            kind, val = peek()
            if kind == "op" and val in "+-":
                esign = -1 if val == "-" else 1
                i += 1
                kind, val = peek()
            if kind != "num" or val.denominator != 1:
                raise ParseError(f"expected an integer exponent in {expr!r}")
            exponent = esign * int(val)
            i += 1
        total = total + Cyclotomic.zeta(level, exponent) * (sign * coeff)
    return total
