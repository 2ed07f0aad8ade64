"""Weil-Deligne representations, sp(n), and local data of elliptic curves.

A component is rho (x) chi (x) sp(n) with rho an Artin character over fixed
ramification data and chi an unramified twist. Inertia invariants of a
component are rho^I (x) ker N, where Frobenius acts on ker N trivially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .chars import CharacterTable, ClassFunction, decompose, tensor, trivial_character
from .errors import ValidationError
from .exact.cyclotomic import Cyclotomic, sqrt_rational
from .exact.finfield import FiniteField, prime_power
from .exact.poly import UniPoly, newton_charpoly
from .groups import from_permutations
from .localgal import RamificationData, conductor_exponent, local_polynomial, validate_ramification

__all__ = [
    "UnramifiedTwist",
    "WDComponent",
    "WDRep",
    "EllipticLocalData",
    "sp_matrices",
    "wd_local_polynomial",
    "wd_conductor",
    "wd_tensor",
    "clebsch_gordan",
    "ec_local_wd",
    "ec_point_count_bruteforce",
    "ec_count_extension",
    "unramified_data",
]

TAME_INERTIA_ORDERS = (1, 2, 3, 4, 6)


@dataclass(frozen=True)
class UnramifiedTwist:
    """Unramified character with Phi -> unit * q^(weight/2)."""

    unit: Cyclotomic = field(default_factory=lambda: Cyclotomic.rational(1))
    weight: int = 0

    def __post_init__(self):
        u = Cyclotomic.rational(self.unit) if not isinstance(self.unit, Cyclotomic) else self.unit
        if u.is_zero():
            raise ValidationError("twist unit must be nonzero")
        object.__setattr__(self, "unit", u)

    def value(self, q: int) -> Cyclotomic:
        return self.unit * sqrt_rational(q) ** self.weight

    def __mul__(self, other: "UnramifiedTwist") -> "UnramifiedTwist":
        return UnramifiedTwist(self.unit * other.unit, self.weight + other.weight)

    def is_trivial(self) -> bool:
        return self.weight == 0 and self.unit == 1


@dataclass(frozen=True, eq=False)
class WDComponent:
    """rho (x) twist (x) sp(n).

    ``block`` optionally replaces the twist by an unramified semisimple block
    given through det(1 - Phi T); it is used for Frobenius eigenvalues that are
    not root-of-unity multiples of q^(1/2).
    """

    artin: ClassFunction
    twist: UnramifiedTwist = field(default_factory=UnramifiedTwist)
    sp: int = 1
    block: UniPoly | None = None

    def __post_init__(self):
        if self.sp < 1:
            raise ValidationError("sp(n) needs n >= 1")
        if self.block is not None:
            if self.block[0] != 1 or self.block.degree < 1:
                raise ValidationError("unramified block must be det(1 - Phi T) of positive degree")
            if not self.twist.is_trivial():
                raise ValidationError("a component carries either a twist or a block, not both")

    @property
    def twist_dim(self) -> int:
        return self.block.degree if self.block is not None else 1

    @property
    def dim(self) -> int:
        return self.artin.degree() * self.sp * self.twist_dim

    def key(self):
        block = self.block.coeffs if self.block is not None else ()
        return (self.sp, self.artin.values, self.twist.weight, self.twist.unit, block)

    def describe(self, names=None) -> str:
        default = "1" if all(v == 1 for v in self.artin.values) else (
            "[" + ", ".join(v.to_literal() for v in self.artin.values) + "]"
        )
        art = (names or {}).get(self.artin.values, default)
        if self.block is not None:
            tw = f"block({self.block.to_string()})"
        else:
            tw = f"unit={self.twist.unit.to_literal()} weight={self.twist.weight}"
        return f"{art} {tw} sp={self.sp}"


@dataclass(frozen=True, eq=False)
class WDRep:
    data: RamificationData
    components: tuple

    def __post_init__(self):
        for c in self.components:
            if c.artin.group is not self.data.G:
                raise ValidationError("component character lives on a different group")
        object.__setattr__(self, "components", tuple(sorted(self.components, key=_sort_key)))

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.components)

    def signature(self):
        """Multiset of components, for comparisons."""
        return tuple(c.key() for c in self.components)

    def __add__(self, other: "WDRep") -> "WDRep":
        if other.data is not self.data:
            raise ValidationError("direct sum needs shared ramification data")
        return WDRep(self.data, self.components + other.components)


def _sort_key(c: WDComponent):
    level = 1
    for v in c.artin.values + (c.twist.unit,):
        level = level * v.level // _gcd(level, v.level)
    block = tuple(x.sort_key(level) for x in c.block.coeffs) if c.block is not None else ()
    return (c.sp, [v.sort_key(level) for v in c.artin.values], c.twist.weight, c.twist.unit.sort_key(level), block)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def unramified_data(q: int) -> RamificationData:
    """Ramification data of the trivial extension (trivial group)."""
    p, _ = prime_power(q)
    G = from_permutations([])
    return validate_ramification(G, [G.trivial], 0, p, q)


def sp_matrices(n: int, q: int):
    """(exp(tN) as an n x n matrix of polynomials in t, diag(1, q, ..., q^(n-1)))."""
    if n < 1:
        raise ValidationError("sp(n) needs n >= 1")
    inertia = [
        [UniPoly.monomial(j - i, Fraction(1, factorial(j - i))) if j >= i else UniPoly() for j in range(n)]
        for i in range(n)
    ]
    frob = [[q**i if i == j else 0 for j in range(n)] for i in range(n)]
    return inertia, frob


def _component_poly(c: WDComponent, data: RamificationData) -> UniPoly:
    P = local_polynomial(c.artin, data)
    if c.block is None:
        return P.scale(c.twist.value(data.q))
    # rho (x) block: eigenvalues multiply, so power sums multiply
    d = P.degree * c.block.degree
    sa = _power_sums(P, d)
    sb = _power_sums(c.block, d)
    return newton_charpoly([a * b for a, b in zip(sa, sb)], d).reversed


def _power_sums(rev: UniPoly, n: int) -> list:
    """s_1..s_n of the roots lambda with rev = prod (1 - lambda T)."""
    e = [rev[k] * (-1) ** k for k in range(rev.degree + 1)]
    s = []
    for k in range(1, n + 1):
        acc = e[k] * k * (-1) ** (k - 1) if k <= rev.degree else Cyclotomic.rational(0)
        for i in range(1, k):
            if k - i <= rev.degree:
                acc = acc + e[k - i] * s[i - 1] * (-1) ** (k - i - 1)
        s.append(acc)
    return s


def wd_local_polynomial(W: WDRep) -> UniPoly:
    """Product over components of P_rho(alpha T), alpha the twist value."""
    out = UniPoly.one()
    for c in W.components:
        out = out * _component_poly(c, W.data)
    return out


def wd_conductor(W: WDRep) -> int:
    """sum n dim rho - dim rho^I + n wild(rho), weighted by the twist dimension."""
    total = Fraction(0)
    for c in W.components:
        ce = conductor_exponent(c.artin, W.data, strict=False)
        inv = c.artin.degree() - ce.tame
        total += c.twist_dim * (c.sp * c.artin.degree() - inv + c.sp * ce.wild)
    if total.denominator != 1:
        raise ValidationError(f"WD conductor {total} is not an integer")
    return int(total)


def clebsch_gordan(n: int, m: int) -> list:
    """sp(n) (x) sp(m) = sum_i sp(n + m - 1 - 2i) twisted by weight 2i."""
    return [(n + m - 1 - 2 * i, 2 * i) for i in range(min(n, m))]


def _mul_twist_block(a: WDComponent, b: WDComponent, q: int):
    if a.block is None and b.block is None:
        return a.twist * b.twist, None
    if a.block is not None and b.block is not None:
        d = a.block.degree * b.block.degree
        sa, sb = _power_sums(a.block, d), _power_sums(b.block, d)
        return UnramifiedTwist(), newton_charpoly([x * y for x, y in zip(sa, sb)], d).reversed
    blk, tw = (a.block, b.twist) if a.block is not None else (b.block, a.twist)
    return UnramifiedTwist(), blk.scale(tw.value(q))


def wd_tensor(A: WDRep, B: WDRep, table: CharacterTable | None = None) -> WDRep:
    """Tensor product, decomposing Artin parts against the character table."""
    if A.data is not B.data:
        raise ValidationError("tensor product needs shared ramification data")
    data = A.data
    G = data.G
    if table is None:
        from .chars import character_table

        table = character_table(G)
    comps = []
    for a in A.components:
        for b in B.components:
            mult = decompose(tensor(a.artin, b.artin), table)
            twist, block = _mul_twist_block(a, b, data.q)
            for n, w in clebsch_gordan(a.sp, b.sp):
                tw = twist * UnramifiedTwist(1, w)
                blk = block
                if block is not None and w:
                    blk, tw = block.scale(Cyclotomic.rational(data.q ** (w // 2))), UnramifiedTwist()
                for row, m in zip(table.rows, mult):
                    comps.extend([WDComponent(row, tw, n, blk)] * m)
    return WDRep(data, tuple(comps))


# -- elliptic curves ------------------------------------------------------


KINDS = ("good", "split_mult", "nonsplit_mult", "additive")


@dataclass(frozen=True, eq=False)
class EllipticLocalData:
    kind: str
    q: int
    a: int | None = None
    wd: WDRep | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown reduction type {self.kind!r}; expected one of {', '.join(KINDS)}")
        prime_power(self.q)
        if self.kind == "good":
            if self.a is None:
                raise ValidationError("good reduction needs the trace a")
            if self.a * self.a > 4 * self.q:
                raise ValidationError(f"Hasse bound violated: a^2 = {self.a * self.a} > 4q = {4 * self.q}")
        if self.kind == "additive":
            if self.wd is None:
                raise ValidationError("additive reduction needs Weil-Deligne data")
            _validate_additive(self.wd, self.q)

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]


def _inertia_image_order(W: WDRep) -> int:
    G = W.data.G
    I0 = W.data.inertia
    chars = [c.artin for c in W.components]
    orders = set()
    for g in I0.elements:
        k, h = 1, g
        while not all(chi(h) == chi(0) for chi in chars):
            h = G.mul(h, g)
            k += 1
        orders.add(k)
    # the image of I_0 is cyclic in the tame case; its order is the largest element order
    return max(orders)


def _validate_additive(W: WDRep, q: int):
    data = W.data
    if W.dim != 2:
        raise ValidationError(f"elliptic Weil-Deligne data must be 2-dimensional, got {W.dim}")
    if wd_local_polynomial(W) != 1:
        raise ValidationError("additive reduction must have no inertia invariants (local polynomial 1)")
    if data.q != q:
        raise ValidationError(f"ramification data has q = {data.q}, curve data has q = {q}")
    if data.p < 5:
        return
    if data.wild_inertia.order != 1:
        raise ValidationError(f"inertia acts wildly at p = {data.p} >= 5")
    order = _inertia_image_order(W)
    if order not in TAME_INERTIA_ORDERS:
        raise ValidationError(
            f"inertia acts through a cyclic group of order {order}; for p >= 5 it must be one of "
            f"{', '.join(map(str, TAME_INERTIA_ORDERS))}"
        )
    G = data.G
    gen = next(g for g in data.inertia.elements if G.element_orders[g] == data.inertia.order)
    sums = []
    for k in range(1, 3):
        h = G.power(gen, k)
        sums.append(sum((c.twist_dim * c.sp * c.artin(h) for c in W.components), Cyclotomic.rational(0)))
    cp = newton_charpoly(sums, 2).monic
    if not cp.is_rational():
        raise ValidationError(f"characteristic polynomial of an inertia generator {cp.to_string('x')} is not rational")
    n = wd_conductor(W)
    if n > 2:
        raise ValidationError(f"conductor exponent {n} exceeds 2 at p = {data.p} >= 5")


_UNIT_LEVELS = (1, 2, 3, 4, 6, 8, 12)


def _good_twists(a: int, q: int):
    """Units u with u + u^-1 = a / sqrt(q), when a^2 is one of 0, q, 2q, 3q, 4q."""
    if a * a not in (0, q, 2 * q, 3 * q, 4 * q):
        return None
    target = sqrt_rational(q) * Fraction(a, q)
    for m in _UNIT_LEVELS:
        for k in range(m):
            u = Cyclotomic.zeta(m, k)
            if u + u.conjugate() == target:
                return u, u.conjugate()
    return None


def ec_local_wd(E: EllipticLocalData) -> WDRep:
    if E.kind == "additive":
        return E.wd
    data = unramified_data(E.q)
    one = trivial_character(data.G)
    if E.kind == "split_mult":
        comps = [WDComponent(one, UnramifiedTwist(), 2)]
    elif E.kind == "nonsplit_mult":
        comps = [WDComponent(one, UnramifiedTwist(-1, 0), 2)]
    else:
        units = _good_twists(E.a, E.q)
        if units is not None:
            comps = [WDComponent(one, UnramifiedTwist(u, 1), 1) for u in units]
        else:
            comps = [WDComponent(one, block=UniPoly([1, -E.a, E.q]))]
    return WDRep(data, tuple(comps))


def weierstrass_discriminant(a1, a2, a3, a4, a6) -> int:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


MAX_BRUTE_Q = 10**6


def ec_point_count_bruteforce(coeffs, q: int) -> int:
    """#E(F_q) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, by enumeration."""
    a1, a2, a3, a4, a6 = coeffs
    if q > MAX_BRUTE_Q:
        raise ValidationError(f"q = {q} exceeds the brute-force limit {MAX_BRUTE_Q}")
    p, k = prime_power(q)
    if weierstrass_discriminant(a1, a2, a3, a4, a6) % p == 0:
        raise ValidationError(f"curve is singular modulo {p} (discriminant vanishes)")
    F = FiniteField(p, k)
    elems = list(F.elements())
    A1, A2, A3, A4, A6 = (F(c) for c in coeffs)
    count = 1
    if p != 2:
        # (2y + b)^2 = b^2 + 4c
        roots = {}
        for z in elems:
            s = z * z
            roots[s] = roots.get(s, 0) + 1
        for x in elems:
            b = A1 * x + A3
            c = ((x + A2) * x + A4) * x + A6
            count += roots.get(b * b + 4 * c, 0)
        return count
    # characteristic 2: y^2 + b y = c; for b != 0 substitute y = b w
    artin_schreier = {}
    for w in elems:
        v = w * w + w
        artin_schreier[v] = artin_schreier.get(v, 0) + 1
    for x in elems:
        b = A1 * x + A3
        c = ((x + A2) * x + A4) * x + A6
        if b.is_zero():
            count += 1
        else:
            count += artin_schreier.get(c / (b * b), 0)
    return count


def ec_count_extension(a: int, q: int, n: int) -> int:
    """#E(F_(q^n)) = q^n + 1 - s_n with s_k = a s_(k-1) - q s_(k-2)."""
    if a * a > 4 * q:
        raise ValidationError(f"Hasse bound violated: a^2 = {a * a} > 4q = {4 * q}")
    if n < 1:
        raise ValidationError("extension degree must be positive")
    s_prev, s = 2, a
    for _ in range(n - 1):
        s_prev, s = s, a * s - q * s_prev
    return q**n + 1 - s
