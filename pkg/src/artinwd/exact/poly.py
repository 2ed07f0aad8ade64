"""Univariate polynomials and truncated power series over cyclotomic fields."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple, Sequence

from ..errors import ValidationError
from .cyclotomic import Cyclotomic, as_cyclotomic

__all__ = ["UniPoly", "TruncatedSeries", "CharPoly", "newton_charpoly", "series_invert"]

_ZERO = Cyclotomic.rational(0)
_ONE = Cyclotomic.rational(1)


def _coerce(c):
    v = as_cyclotomic(c)
    if v is NotImplemented:
        raise TypeError(f"cannot use {c!r} as a polynomial coefficient")
    return v


class UniPoly:
    """Polynomial with cyclotomic coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def __add__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, UniPoly) else UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _coerce(other)
            return UniPoly([a * c for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            other = as_cyclotomic(other)
            if other is NotImplemented:
                return NotImplemented
            other = UniPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_power(self, f: int) -> "UniPoly":
        """P(T^f)."""
        out = [_ZERO] * (f * self.degree + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[f * k] = c
        return UniPoly(out)

    def scale(self, alpha) -> "UniPoly":
        """P(alpha*T)."""
        alpha = _coerce(alpha)
        out, power = [], _ONE
        for c in self.coeffs:
            out.append(c * power)
            power = power * alpha
        return UniPoly(out)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def to_string(self, var: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            lit = c.to_literal()
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            compound = c.minimal().level != 1
            if k == 0:
                sign, body = ("+", f"({lit})" if compound else lit)
                if not compound and lit.startswith("-"):
                    sign, body = "-", lit[1:]
            elif compound:
                sign, body = "+", f"({lit})*{mono}"
            else:
                sign = "-" if lit.startswith("-") else "+"
                mag = lit.lstrip("-")
                body = mono if mag == "1" else f"{mag}*{mono}"
            parts.append((sign, body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"UniPoly({self.to_string()!r})"


class TruncatedSeries:
    """Power series a_0 + a_1 T + ... + a_N T^N modulo T^(N+1)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        cs = [_coerce(c) for c in list(coeffs)[: order + 1]]
        cs += [_ZERO] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.order + 1

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("truncation orders differ")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            other = TruncatedSeries(other.coeffs, self.order)
        self._check(other)
        n = self.order
        out = [_ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, n)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(c.to_literal() for c in self.coeffs)}], {self.order})"


class CharPoly(NamedTuple):
    """``monic`` is prod (x - lambda_i); ``reversed`` is prod (1 - lambda_i T)."""

    monic: UniPoly
    reversed: UniPoly


def newton_charpoly(power_sums: Sequence, d: int | None = None) -> CharPoly:
    """Recover the characteristic polynomial from s_k = sum lambda_i^k, k = 1..d.

    Uses Newton's identities k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i,
    valid in characteristic zero.
    """
    sums = [_coerce(s) for s in power_sums]
    if d is None:
        d = len(sums)
    if d < 0 or len(sums) != d:
        raise ValueError(f"expected exactly {d} power sums, got {len(sums)}")
    e = [_ONE]
    for k in range(1, d + 1):
        acc = _ZERO
        for i in range(1, k + 1):
            term = e[k - i] * sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc / k)
    rev = [e[k] if k % 2 == 0 else -e[k] for k in range(d + 1)]
    return CharPoly(UniPoly(rev[::-1]), UniPoly(rev))


def series_invert(poly: UniPoly, order: int) -> TruncatedSeries:
    """Expansion of 1/P(T) to order N; requires P(0) = 1."""
    if poly[0] != 1:
        raise ValidationError(f"series_invert needs constant term 1, got {poly[0]}")
    out = [_ONE]
    for n in range(1, order + 1):
        acc = _ZERO
        for k in range(1, min(n, poly.degree) + 1):
            c = poly[k]
            if not c.is_zero():
                acc = acc - c * out[n - k]
        out.append(acc)
    return TruncatedSeries(out, order)


def parse_int_poly(text: str, var: str = "x") -> list:
    """Integer polynomial such as ``"x^5 + 2*x^4 - 3*x^3 + 1"`` to constant-first ints."""
    s = text.replace(" ", "")
    if not s:
        raise ValidationError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    terms = re.findall(r"[+-][^+-]+", s)
    if "".join(terms) != s:
        raise ValidationError(f"malformed polynomial {text!r}")
    coeffs = {}
    for t in terms:
        m = re.fullmatch(r"([+-])(\d+)?\*?(?:" + re.escape(var) + r"(?:\^(\d+))?)?", t)
        if not m or (m.group(2) is None and var not in t) or t.endswith("*"):
            raise ValidationError(f"malformed term {t!r} in polynomial {text!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        deg = 0 if var not in t else int(m.group(3) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + c
    n = max(coeffs)
    out = [coeffs.get(k, 0) for k in range(n + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def format_int_poly(coeffs, var: str = "x") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if k == 0 else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def fraction_poly(coeffs) -> UniPoly:
    return UniPoly([Fraction(c) for c in coeffs])
