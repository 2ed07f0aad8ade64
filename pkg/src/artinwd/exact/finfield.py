"""Polynomials over F_p, factorization degrees, and small fields F_(p^k).

Polynomials over F_p are lists of ints in [0, p), constant term first, with
no trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import ValidationError

__all__ = [
    "FiniteField",
    "FFElement",
    "ff_factor_degrees",
    "ff_orbit_resolvent",
    "distinct_degree_factorization",
    "squarefree_decomposition",
    "is_prime",
    "prime_power",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int):
    """(p, k) with q = p^k, or ValidationError."""
    if q < 2:
        raise ValidationError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValidationError(f"{q} is not a prime power")
    return p, k


# -- polynomial helpers over F_p ---------------------------------------


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def reduce_poly(coeffs, p):
    return _trim([c % p for c in coeffs])


def _add(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _sub(f, g, p):
    n = max(len(f), len(g))
    return _trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def _mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _trim([c % p for c in out])


def _divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    for i in range(len(f) - len(g), -1, -1):
        c = f[i + len(g) - 1] * inv % p
        q[i] = c
        if c:
            for j, b in enumerate(g):
                f[i + j] = (f[i + j] - c * b) % p
    return _trim(q), _trim(f[: len(g) - 1])


def _mod(f, g, p):
    return _divmod(f, g, p)[1]


def _monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _gcd(f, g, p):
    while g:
        f, g = g, _mod(f, g, p)
    return _monic(f, p)


def _deriv(f, p):
    return _trim([(i * c) % p for i, c in enumerate(f)][1:])


def _powmod(f, e, m, p):
    result = [1]
    base = _mod(f, m, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), m, p)
        base = _mod(_mul(base, base, p), m, p)
        e >>= 1
    return result


def _pth_root(f, p):
    # f(x) = g(x^p); in F_p, coefficients are their own p-th roots
    return _trim([f[i] for i in range(0, len(f), p)])


def squarefree_decomposition(f, p):
    """List of (g, e) with f = lc * prod g^e, g squarefree monic and coprime."""
    f = _monic(reduce_poly(f, p), p)
    if not f:
        raise ValidationError("zero polynomial modulo p")
    out = []

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = _deriv(f, p)
        if not d:
            rec(_pth_root(f, p), mult * p)
            return
        c = _gcd(f, d, p)
        w = _divmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = _gcd(w, c, p)
            z = _divmod(w, y, p)[0]
            if len(z) > 1:
                out.append((_monic(z, p), i * mult))
            i += 1
            w = y
            c = _divmod(c, y, p)[0]
        if len(c) > 1:
            rec(_pth_root(c, p), mult * p)

    rec(f, 1)
    return out


def distinct_degree_factorization(f, p):
    """For squarefree monic f: list of (d, g_d), g_d the product of the degree-d factors."""
    f = _monic(reduce_poly(f, p), p)
    out = []
    x = [0, 1]
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        if len(g) > 1:
            out.append((d, g))
            f = _divmod(f, g, p)[0]
            h = _mod(h, f, p)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def ff_factor_degrees(f, p) -> dict:
    """Degrees of the irreducible factors of f mod p.

    Returns ``{degree: count}`` where a factor of multiplicity e counts e
    times, so that sum(degree * count) == deg(f mod p).
    """
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    fp = reduce_poly(f, p)
    if not fp:
        raise ValidationError(f"polynomial vanishes modulo {p}")
    counts = {}
    for g, e in squarefree_decomposition(fp, p):
        for d, gd in distinct_degree_factorization(g, p):
            counts[d] = counts.get(d, 0) + e * (len(gd) - 1) // d
    return dict(sorted(counts.items()))


def is_squarefree_mod(f, p) -> bool:
    fp = reduce_poly(f, p)
    return bool(fp) and all(e == 1 for _, e in squarefree_decomposition(fp, p))


def is_irreducible_mod(f, p) -> bool:
    fp = _monic(reduce_poly(f, p), p)
    n = len(fp) - 1
    if n < 1:
        return False
    x = [0, 1]
    if _powmod(x, p**n, fp, p) != _mod(x, fp, p):
        return False
    for r in {r for r in range(2, n + 1) if n % r == 0 and is_prime(r)}:
        if len(_gcd(fp, _sub(_powmod(x, p ** (n // r), fp, p), x, p), p)) > 1:
            return False
    return True


def ff_orbit_resolvent(f, p: int, stride: int) -> int:
    """sum_i beta_i * beta_(i+stride) for the Frobenius orbit beta_i = beta^(p^(i-1)).

    Indices are taken mod d and every unordered pair is counted once, so for
    d = 2 the stride-1 value is the norm beta_1 * beta_2.
    beta is a root of f in F_p[x]/(f) = F_(p^d); the sum is Frobenius-stable,
    so it lies in F_p and is returned as an int in [0, p).
    """
    fp = _monic(reduce_poly(f, p), p)
    d = len(fp) - 1
    if not is_irreducible_mod(f, p):
        raise ValidationError(f"polynomial is reducible modulo {p}")
    if not 1 <= stride < d:
        raise ValidationError(f"stride must lie in [1, {d - 1}]")
    betas = [_mod([0, 1], fp, p)]
    for _ in range(d - 1):
        betas.append(_powmod(betas[-1], p, fp, p))
    # each unordered pair in the rotation orbit of {0, stride} counted once
    pairs = sorted({tuple(sorted((i, (i + stride) % d))) for i in range(d)})
    acc = []
    for i, j in pairs:
        acc = _add(acc, _mod(_mul(betas[i], betas[j], p), fp, p), p)
    if len(acc) > 1:
        raise ValidationError("orbit resolvent is not Frobenius-stable (not in F_p)")
    return acc[0] if acc else 0


# -- finite fields F_(p^k) ---------------------------------------------


@lru_cache(maxsize=None)
def _least_irreducible(p, k):
    # monic x^k + c_(k-1) x^(k-1) + ... + c_0, ordered by sum c_i p^i
    for code in range(p**k):
        coeffs, m = [], code
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        f = coeffs + [1]
        if k == 1 or (f[0] != 0 and is_irreducible_mod(f, p)):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_(p^k) = F_p[x]/(m) with m the lexicographically least monic irreducible."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        if k < 1:
            raise ValidationError("extension degree must be positive")
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = _least_irreducible(p, k)

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __call__(self, value) -> "FFElement":
        if isinstance(value, FFElement):
            return value
        if isinstance(value, int):
            return FFElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = list(value)
        return FFElement(self, tuple(_mod(reduce_poly(coeffs, self.p), list(self.modulus), self.p)))

    def element_from_index(self, code: int) -> "FFElement":
        digits = []
        for _ in range(self.k):
            digits.append(code % self.p)
            code //= self.p
        return FFElement(self, tuple(digits))

    def elements(self):
        for code in range(self.order):
            yield self.element_from_index(code)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        return self([0, 1])


class FFElement:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs: tuple):
        self.field = field
        c = tuple(coeffs) + (0,) * (field.k - len(coeffs))
        self.c = c[: field.k]

    def _lift(self, other):
        if isinstance(other, FFElement):
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FFElement(self.field, tuple((a + b) % p for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElement(self.field, tuple(-a % p for a in self.c))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        if F.k == 1:
            return FFElement(F, ((self.c[0] * other.c[0]) % F.p,))
        prod = _mul(_trim(list(self.c)), _trim(list(other.c)), F.p)
        return FFElement(F, tuple(_mod(prod, list(F.modulus), F.p)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._lift(other)
        return self * other.inverse()

    def is_zero(self):
        return not any(self.c)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.field == other.field and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"FFElement({list(self.c)}, F_{self.field.order})"
