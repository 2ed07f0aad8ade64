"""Global L-series over Q assembled from local Euler factors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .chars import ClassFunction, induce, trivial_character
from .errors import AmbiguityError, ValidationError
from .exact.cyclotomic import Cyclotomic
from .exact.finfield import is_prime
from .exact.poly import UniPoly, newton_charpoly, series_invert
from .groups import FiniteGroup, Subgroup
from .localgal import frobenius_candidates, frobenius_class, is_unramified_at
from .weildeligne import ec_point_count_bruteforce, weierstrass_discriminant

__all__ = [
    "SplittingRule",
    "ClassRule",
    "CurveRule",
    "GlobalConfig",
    "DirichletSeries",
    "FunctionalEquationData",
    "ZetaIdentityReport",
    "euler_factor",
    "dirichlet_coefficients",
    "global_conductor",
    "functional_equation_data",
    "zeta_identity_check",
    "class_euler_factor",
    "induced_euler_factor",
    "primes_up_to",
]


@dataclass(frozen=True, eq=False)
class SplittingRule:
    """Frobenius classes read off the factorisation of a monic integer polynomial mod p."""

    coeffs: tuple
    group: FiniteGroup
    roots: tuple | None = None


@dataclass(frozen=True, eq=False)
class ClassRule:
    """Frobenius classes by explicit prime map, or by residue of p modulo ``modulus``."""

    group: FiniteGroup
    primes: dict = field(default_factory=dict)
    modulus: int | None = None
    residues: dict = field(default_factory=dict)

    def class_at(self, p: int) -> int:
        if p in self.primes:
            return self.primes[p]
        if self.modulus is not None and p % self.modulus in self.residues:
            return self.residues[p % self.modulus]
        raise ValidationError(f"no Frobenius class given for p = {p}")


@dataclass(frozen=True)
class CurveRule:
    """Good-reduction factors 1 - a_p T + p T^2 with a_p from point counts."""

    coeffs: tuple


@dataclass(frozen=True, eq=False)
class GlobalConfig:
    dim: int
    rule: object
    character: ClassFunction | None = None
    ramified: dict = field(default_factory=dict)
    conjugation_class: int | None = None
    kind: str = "artin"
    trivial_at_bad: bool = False

    def __post_init__(self):
        if self.kind not in ("artin", "elliptic"):
            raise ValidationError(f"unknown L-series kind {self.kind!r}")
        if self.kind == "artin":
            if self.character is None:
                raise ValidationError("Artin configuration needs a character")
            if self.character.degree() != self.dim:
                raise ValidationError(f"character has degree {self.character.degree()}, config says {self.dim}")
        for p, (poly, n) in self.ramified.items():
            if not is_prime(p):
                raise ValidationError(f"ramified key {p} is not prime")
            if poly.degree > self.dim:
                raise ValidationError(f"Euler polynomial at {p} has degree {poly.degree} > {self.dim}")
            if poly[0] != 1:
                raise ValidationError(f"Euler polynomial at {p} must have constant term 1")
            if n < 0:
                raise ValidationError(f"conductor exponent at {p} is negative")


def class_euler_factor(chi: ClassFunction, cls: int) -> UniPoly:
    """det(1 - rho(g^-1) T) for g in the given class."""
    G = chi.group
    g = G.classes[cls][0]
    ginv = G.inv(g)
    d = chi.degree()
    sums = [chi(G.power(ginv, k)) for k in range(1, d + 1)]
    return newton_charpoly(sums, d).reversed


def induced_euler_factor(H: Subgroup, chi_h: ClassFunction, g: int) -> UniPoly:
    """Euler factor of Ind_H^G chi_h at an unramified prime with Frobenius g.

    Each orbit of <g> on G/H of length f through xH contributes
    P_chi(x^-1 g^f x)(T^f): the residue field of the prime of the fixed field of H
    has degree f, and x^-1 g^f x is its Frobenius inside H.
    """
    G = H.parent
    cosets = H.cosets()
    where = {}
    for i, c in enumerate(cosets):
        for y in c:
            where[y] = i
    seen = set()
    out = UniPoly.one()
    for i, c in enumerate(cosets):
        if i in seen:
            continue
        x = c[0]
        f, y = 0, x
        while True:
            seen.add(where[y])
            y = G.mul(g, y)
            f += 1
            if where[y] == i:
                break
        h = G.mul(G.mul(G.inv(x), G.power(g, f)), x)
        local = class_euler_factor(chi_h, chi_h.group.class_of(H.from_parent[h]))
        out = out * local.compose_power(f)
    return out


def _splitting_factor(rule: SplittingRule, p: int, factor_of: Callable[[int], UniPoly]) -> UniPoly:
    """Euler factor from the Frobenius class, resolving ambiguity only when it matters."""
    ctype, candidates = frobenius_candidates(rule.coeffs, p, rule.group)
    factors = {factor_of(c) for c in candidates}
    if len(factors) == 1:
        return factors.pop()
    try:
        cls = frobenius_class(rule.coeffs, p, rule.group, rule.roots).class_index
    except AmbiguityError as exc:
        raise AmbiguityError(f"Frobenius class at p = {p} is ambiguous: {exc}") from exc
    return factor_of(cls)


def euler_factor(config: GlobalConfig, p: int) -> UniPoly:
    if not is_prime(p):
        raise ValidationError(f"{p} is not prime")
    if p in config.ramified:
        return config.ramified[p][0]
    rule = config.rule
    if isinstance(rule, CurveRule):
        if weierstrass_discriminant(*rule.coeffs) % p == 0:
            if config.trivial_at_bad:
                return UniPoly.one()
            raise ValidationError(f"bad prime {p} missing from the ramified map")
        a = p + 1 - ec_point_count_bruteforce(rule.coeffs, p)
        return UniPoly([1, -a, p])
    if isinstance(rule, ClassRule):
        return class_euler_factor(config.character, rule.class_at(p))
    if isinstance(rule, SplittingRule):
        if not is_unramified_at(rule.coeffs, p):
            if config.trivial_at_bad:
                return UniPoly.one()
            raise ValidationError(f"prime {p} divides the discriminant but is missing from the ramified map")
        return _splitting_factor(rule, p, lambda c: class_euler_factor(config.character, c))
    raise ValidationError(f"unknown unramified rule {rule!r}")


@dataclass(frozen=True)
class DirichletSeries:
    coeffs: tuple  # a_1 .. a_N

    @property
    def limit(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> Cyclotomic:
        return self.coeffs[n - 1]

    def __mul__(self, other: "DirichletSeries") -> "DirichletSeries":
        N = min(self.limit, other.limit)
        out = [Cyclotomic.rational(0)] * N
        for m in range(1, N + 1):
            a = self.coeffs[m - 1]
            if a.is_zero():
                continue
            for k in range(1, N // m + 1):
                b = other.coeffs[k - 1]
                if not b.is_zero():
                    out[m * k - 1] = out[m * k - 1] + a * b
        return DirichletSeries(tuple(out))

    def to_literals(self) -> list:
        return [c.to_literal() for c in self.coeffs]

    def is_integral(self) -> bool:
        return all(c.is_integer() for c in self.coeffs)


def _smallest_prime_factors(N: int) -> list:
    spf = list(range(N + 1))
    for i in range(2, math.isqrt(N) + 1):
        if spf[i] == i:
            for j in range(i * i, N + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def primes_up_to(N: int) -> list:
    spf = _smallest_prime_factors(max(N, 1))
    return [p for p in range(2, N + 1) if spf[p] == p]


def series_from_factors(N: int, factor_at: Callable[[int], UniPoly]) -> DirichletSeries:
    """Expand prod_p 1/P_p(p^-s) to a_1..a_N; factors are requested in increasing p."""
    if N < 1:
        raise ValidationError("limit must be at least 1")
    spf = _smallest_prime_factors(N)
    prime_powers = {}
    for p in range(2, N + 1):
        if spf[p] != p:
            continue
        order = int(math.log(N, p) + 1e-9)
        while p ** (order + 1) <= N:
            order += 1
        while p**order > N:
            order -= 1
        prime_powers[p] = series_invert(factor_at(p), order).coeffs
    out = [Cyclotomic.rational(1)] + [None] * (N - 1)
    for n in range(2, N + 1):
        p = spf[n]
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        out[n - 1] = out[m - 1] * prime_powers[p][k]
    return DirichletSeries(tuple(out))


def dirichlet_coefficients(config: GlobalConfig, N: int) -> DirichletSeries:
    return series_from_factors(N, lambda p: euler_factor(config, p))


def global_conductor(config: GlobalConfig) -> int:
    out = 1
    for p, (_, n) in sorted(config.ramified.items()):
        out *= p**n
    return out


@dataclass(frozen=True)
class FunctionalEquationData:
    kind: str
    conductor: int
    A: Fraction
    d_plus: int | None = None
    d_minus: int | None = None
    gamma_C_count: int | None = None
    root_number: str = "unknown (|w| = 1)"
    self_dual: bool = True


def functional_equation_data(config: GlobalConfig) -> FunctionalEquationData:
    """A = conductor (the base is Q), gamma shape, and an unknown root number of modulus 1."""
    N = global_conductor(config)
    if config.kind == "elliptic":
        return FunctionalEquationData("elliptic", N, Fraction(N), gamma_C_count=1)
    if config.conjugation_class is None:
        raise ValidationError("Artin functional equation data needs the complex conjugation class")
    chi = config.character
    G = chi.group
    c = G.classes[config.conjugation_class][0]
    if G.element_orders[c] > 2:
        raise ValidationError("complex conjugation must have order 1 or 2")
    v = chi(c)
    if not v.is_integer():
        raise ValidationError(f"character value {v} at complex conjugation is not an integer")
    v = int(v.to_fraction())
    if (config.dim + v) % 2 or abs(v) > config.dim:
        raise ValidationError(f"character value {v} at complex conjugation has the wrong parity")
    return FunctionalEquationData(
        "artin",
        N,
        Fraction(N),
        d_plus=(config.dim + v) // 2,
        d_minus=(config.dim - v) // 2,
        self_dual=chi.is_real(),
    )


# -- zeta identities ----------------------------------------------------


@dataclass(frozen=True)
class ZetaIdentityReport:
    character_identity: bool
    coefficients_agree: bool | None
    limit: int
    first_mismatch: int | None = None
    lhs: tuple = ()
    rhs: tuple = ()
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.character_identity and bool(self.coefficients_agree)


def _as_character(item) -> ClassFunction:
    if isinstance(item, Subgroup):
        return induce(item, trivial_character(item.group))
    return item


def _side_series(items, rule: SplittingRule, N: int) -> DirichletSeries:
    G = rule.group

    def factor_at(p):
        if not is_unramified_at(rule.coeffs, p):
            return UniPoly.one()
        out = UniPoly.one()
        for item in items:
            if isinstance(item, Subgroup):
                fn = lambda c, H=item: induced_euler_factor(H, trivial_character(H.group), G.classes[c][0])
            else:
                fn = lambda c, chi=item: class_euler_factor(chi, c)
            out = out * _splitting_factor(rule, p, fn)
        return out

    return series_from_factors(N, factor_at)


def zeta_identity_check(lhs: Sequence, rhs: Sequence, rule: SplittingRule, N: int) -> ZetaIdentityReport:
    """Check prod L(lhs) = prod L(rhs) first as characters, then coefficientwise to N.

    Items are characters of the Galois group or subgroups H (standing for the
    Dedekind zeta function of the fixed field, expanded prime by prime from the
    orbits of Frobenius on G/H). Primes dividing the discriminant of the
    polynomial get Euler factor 1 on both sides.
    """
    G = rule.group
    chars = [[_as_character(x) for x in side] for side in (lhs, rhs)]
    zero = ClassFunction(G, [0] * len(G.classes))
    sums = [sum(side, zero) for side in chars]
    if sums[0] != sums[1]:
        diff = sums[0] - sums[1]
        return ZetaIdentityReport(False, None, N, message=f"character identity fails: difference {diff}")
    left = _side_series(lhs, rule, N)
    right = _side_series(rhs, rule, N)
    mismatch = next((n for n in range(1, N + 1) if left[n] != right[n]), None)
    return ZetaIdentityReport(
        True,
        mismatch is None,
        N,
        mismatch,
        tuple(left.to_literals()),
        tuple(right.to_literals()),
        "identity holds" if mismatch is None else f"coefficients differ at n = {mismatch}",
    )
