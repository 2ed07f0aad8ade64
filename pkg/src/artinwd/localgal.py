"""Ramification data of a finite Galois extension of local fields.

Everything is driven by the lower-numbering filtration I_0 >= I_1 >= ... >= I_m = {e}
and a lift of arithmetic Frobenius. Local polynomials use the geometric
Frobenius Phi = Frob^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chars import ClassFunction, induce, inner_product, restrict, trivial_character
from .errors import AmbiguityError, InconsistencyError, ValidationError
from .exact.cyclotomic import Cyclotomic
from .exact.finfield import ff_factor_degrees, ff_orbit_resolvent, is_prime, is_squarefree_mod, prime_power, reduce_poly
from .exact.poly import UniPoly, newton_charpoly
from .groups import FiniteGroup, Subgroup, cycle_type, quotient

__all__ = [
    "RamificationData",
    "ConductorExponent",
    "FrobeniusClass",
    "validate_ramification",
    "local_polynomial",
    "conductor_exponent",
    "swan_pairing",
    "discriminant_valuation",
    "restrict_ramification",
    "frobenius_class",
    "frobenius_candidates",
    "is_unramified_at",
]


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True, eq=False)
class RamificationData:
    G: FiniteGroup
    chain: tuple
    frobenius: int
    p: int
    q: int

    @property
    def inertia(self) -> Subgroup:
        return self.chain[0]

    @property
    def wild_inertia(self) -> Subgroup:
        return self.chain[1] if len(self.chain) > 1 else self.chain[0]

    @property
    def residue_degree(self) -> int:
        """[G : I_0], the residue degree of F/K."""
        return self.G.order // self.inertia.order

    def ramification_group(self, k: int) -> Subgroup:
        return self.chain[min(k, len(self.chain) - 1)]

    @property
    def breaks(self) -> dict:
        """break(g) = max{k : g in I_k} for g in I_0 minus the identity."""
        out = {}
        for g in self.inertia.elements:
            if g == 0:
                continue
            out[g] = max(k for k, I in enumerate(self.chain) if g in I)
        return out

    def upper_jumps(self) -> list:
        """phi(b) = sum_{k=1..b} |I_k|/|I_0| at every lower jump b."""
        e0 = self.inertia.order
        jumps = [k for k in range(len(self.chain) - 1) if self.chain[k] != self.chain[k + 1]]
        out = []
        for b in jumps:
            out.append(sum(Fraction(self.chain[k].order, e0) for k in range(1, b + 1)))
        return out

    def has_integral_upper_jumps(self) -> bool:
        """Necessary condition for the chain to come from an abelian-compatible extension."""
        return all(u.denominator == 1 for u in self.upper_jumps())


def _cyclic(G: FiniteGroup) -> bool:
    return G.order in G.element_orders


def validate_ramification(G: FiniteGroup, chain: Sequence[Subgroup], frobenius: int, p: int, q: int) -> RamificationData:
    """Check the structural invariants and return frozen ramification data."""
    if not is_prime(p):
        raise ValidationError(f"residue characteristic {p} is not prime")
    qp, _ = prime_power(q) if q >= 2 else (None, None)
    if qp != p:
        raise ValidationError(f"q = {q} is not a power of p = {p}")
    chain = tuple(chain)
    if not chain:
        raise ValidationError("ramification chain is empty")
    for k, I in enumerate(chain):
        if I.parent is not G:
            raise ValidationError(f"I_{k} is not a subgroup of the Galois group")
        I.check()
        if not I.is_normal():
            raise ValidationError(f"I_{k} is not normal in G")
        if k and not I <= chain[k - 1]:
            raise ValidationError(f"chain is not descending at I_{k}")
    if chain[-1].order != 1:
        raise ValidationError("chain does not end with the trivial group")
    I0 = chain[0]
    I1 = chain[1] if len(chain) > 1 else chain[0]
    if not _is_p_power(I1.order, p) or (I0.order // I1.order) % p == 0:
        raise ValidationError(f"I_1 is not the Sylow-{p} subgroup of I_0")
    tame, _ = quotient(I0.group, I0.group_subgroup(I1))
    if not _cyclic(tame):
        raise ValidationError("I_0/I_1 is not cyclic")
    if not 0 <= frobenius < G.order:
        raise ValidationError(f"frobenius index {frobenius} out of range")
    f = G.order // I0.order
    k, x = 1, frobenius
    while x not in I0:
        x = G.mul(x, frobenius)
        k += 1
    if k != f:
        if not _cyclic(quotient(G, I0)[0]):
            raise ValidationError("G/I_0 is not cyclic")
        raise ValidationError("frobenius image does not generate G/I_0")
    return RamificationData(G, chain, frobenius, p, q)


def _invariant_dim(chi: ClassFunction, H: Subgroup) -> int:
    d = inner_product(restrict(chi, H), trivial_character(H.group))
    if not d.is_integer() or d.to_fraction() < 0:
        raise ValidationError(f"invariant dimension {d} is not a non-negative integer: not a character")
    return int(d.to_fraction())


def local_polynomial(chi: ClassFunction, data: RamificationData) -> UniPoly:
    """det(1 - Phi T | rho^I_0), Phi the geometric Frobenius.

    Trace of Phi^k on the invariants is the average of chi over the coset Phi^k I_0.
    """
    G = data.G
    I0 = data.inertia
    d = _invariant_dim(chi, I0)
    phi_inv = G.inv(data.frobenius)
    sums = []
    for k in range(1, d + 1):
        base = G.power(phi_inv, k)
        acc = Cyclotomic.rational(0)
        for h in I0.elements:
            acc = acc + chi(G.mul(base, h))
        sums.append(acc / I0.order)
    return newton_charpoly(sums, d).reversed


@dataclass(frozen=True)
class ConductorExponent:
    tame: int
    wild: Fraction
    total: Fraction
    integral: bool


def conductor_exponent(chi: ClassFunction, data: RamificationData, strict: bool = True) -> ConductorExponent:
    """Tame part dim - dim rho^I_0 plus wild part sum_k (|I_k|/|I_0|) codim rho^I_k.

    With ``strict`` a non-integral total raises: genuine ramification data
    always gives an integer.
    """
    dim = chi.degree()
    e0 = data.inertia.order
    tame = dim - _invariant_dim(chi, data.inertia)
    wild = Fraction(0)
    for I in data.chain[1:]:
        if I.order == 1:
            break
        wild += Fraction(I.order, e0) * (dim - _invariant_dim(chi, I))
    total = tame + wild
    integral = total.denominator == 1
    if strict and not integral:
        raise ValidationError(
            f"conductor exponent {total} is not an integer: ramification data is inconsistent"
        )
    return ConductorExponent(tame, wild, total, integral)


def swan_pairing(chi: ClassFunction, data: RamificationData, check: bool = True) -> Fraction:
    """<Res chi, b> over I_0 with b(g) = -break(g) off the identity and b(e) = sum of breaks."""
    I0 = data.inertia
    breaks = data.breaks
    acc = chi(0) * sum(breaks.values())
    for g, br in breaks.items():
        acc = acc - chi(g) * br
    value = acc / I0.order
    if not value.is_rational():
        raise ValidationError(f"swan pairing {value} is not rational")
    value = value.to_fraction()
    if check:
        wild = conductor_exponent(chi, data, strict=False).wild
        if value != wild:
            raise InconsistencyError(f"swan pairing {value} differs from the wild sum {wild}")
    return value


def discriminant_valuation(data: RamificationData, H: Subgroup) -> int:
    """v_K of the discriminant of the fixed field of H, as the conductor of Ind_H^G 1."""
    chi = induce(H, trivial_character(H.group))
    total = conductor_exponent(chi, data).total
    return int(total)


def restrict_ramification(data: RamificationData, H: Subgroup) -> RamificationData:
    """Ramification data of F over the fixed field of H."""
    G = data.G
    if H.parent is not G:
        raise ValidationError("subgroup of a different group")
    I0 = data.inertia
    image = H.order // H.intersect(I0).order
    f = data.residue_degree // image
    target = G.power(data.frobenius, f)
    t_inv = G.inv(target)
    frob = next(h for h in H.elements_sorted if G.mul(t_inv, h) in I0)
    chain = [H.group_subgroup(I.intersect(H)) for I in data.chain]
    return validate_ramification(H.group, chain, H.from_parent[frob], data.p, data.q**f)


def residue_degree_of(data: RamificationData, H: Subgroup) -> int:
    """f_{L/K} for L the fixed field of H."""
    return data.residue_degree // (H.order // H.intersect(data.inertia).order)


# -- Frobenius classes from factorisation patterns ------------------------


@dataclass(frozen=True)
class FrobeniusClass:
    class_index: int
    cycle_type: tuple
    order: int
    method: str
    resolvents: tuple = ()


def _parse_complex(value) -> complex:
    if isinstance(value, (int, float, complex)):
        return complex(value)
    s = str(value).replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise ValidationError(f"cannot read root approximation {value!r}") from None


def _labelled_roots(coeffs, approximations, dps):
    import mpmath

    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=dps)
    approx = [_parse_complex(a) for a in approximations]
    if len(approx) != len(roots):
        raise ValidationError(f"expected {len(roots)} root approximations, got {len(approx)}")
    sep = min(abs(complex(a) - complex(b)) for i, a in enumerate(roots) for b in roots[i + 1 :])
    labelled = []
    used = set()
    for a in approx:
        dist = [abs(complex(r) - a) for r in roots]
        j = min(range(len(roots)), key=dist.__getitem__)
        if dist[j] >= sep / 2 or j in used:
            raise ValidationError(f"root approximation {a} does not single out a root")
        used.add(j)
        labelled.append(roots[j])
    return labelled


def _round_resolvent(value, tol=0.25):
    import mpmath

    re_, im_ = value.real, value.imag
    n = int(mpmath.nint(re_))
    if abs(re_ - n) < tol and abs(im_) < tol:
        return n, float(abs(re_ - n)) + float(abs(im_))
    return None, None


def _pentagon_resolvents(coeffs, perm, approximations, max_dps=1000):
    """Exact integers r1 = sum a_i a_tau(i), r2 = sum a_i a_tau^2(i) for a 5-cycle tau."""
    import mpmath

    n = len(coeffs) - 1
    e2 = coeffs[n - 2]
    dps = 30
    while dps <= max_dps:
        roots = _labelled_roots(coeffs, approximations, dps)
        with mpmath.workdps(dps):
            tau2 = [perm[perm[i]] for i in range(n)]
            r1 = mpmath.fsum(roots[i] * roots[perm[i]] for i in range(n))
            r2 = mpmath.fsum(roots[i] * roots[tau2[i]] for i in range(n))
            a, _ = _round_resolvent(r1)
            b, _ = _round_resolvent(r2)
            prod, _ = _round_resolvent(r1 * r2)
        if a is not None and b is not None and prod is not None and a + b == e2 and a * b == prod:
            return a, b
        dps *= 2
    raise ValidationError("resolvent values did not round to integers consistent with e_2")


def frobenius_candidates(coeffs, p: int, G: FiniteGroup):
    """(cycle type of Frobenius at p, classes of G with that cycle type)."""
    degrees = ff_factor_degrees(coeffs, p)
    ctype = tuple(sorted((d for d, c in degrees.items() for _ in range(c)), reverse=True))
    candidates = [i for i, c in enumerate(G.classes) if cycle_type(G, c[0]) == ctype]
    if not candidates:
        raise ValidationError(f"no class of G has cycle type {ctype}: wrong Galois group")
    return ctype, candidates


def is_unramified_at(coeffs, p: int) -> bool:
    """p does not divide the leading coefficient or the discriminant."""
    return len(reduce_poly(coeffs, p)) == len(coeffs) and is_squarefree_mod(coeffs, p)


def frobenius_class(coeffs, p: int, G: FiniteGroup, roots=None) -> FrobeniusClass:
    """Conjugacy class of Frobenius at p for a monic integer polynomial with Galois group G.

    G must act on the roots by permutations of {1..deg}; ``roots`` are
    approximations labelling those roots, needed only when the cycle type
    does not determine the class.
    """
    coeffs = list(coeffs)
    n = len(coeffs) - 1
    if G.perms is None or G.degree != n:
        raise ValidationError(f"group must permute the {n} roots")
    if coeffs[-1] != 1:
        raise ValidationError("polynomial must be monic")
    if not is_unramified_at(coeffs, p):
        raise ValidationError(f"{p} divides the discriminant: Frobenius is not defined")
    ctype, candidates = frobenius_candidates(coeffs, p, G)
    order = max(ctype)
    if len(candidates) == 1:
        return FrobeniusClass(candidates[0], ctype, order, "cycle type")
    if not (n == 5 and ctype == (5,) and len(candidates) == 2 and G.order == 10):
        raise AmbiguityError(f"cycle type {ctype} at p = {p} fits {len(candidates)} classes")
    if roots is None:
        raise AmbiguityError(f"cycle type {ctype} at p = {p} fits two classes; root labels needed")
    tau = G.classes[candidates[0]][0]
    tau2 = G.power(tau, 2)
    if G.class_of(tau2) != candidates[1]:
        raise ValidationError("the two 5-cycle classes are not related by squaring")
    r1, r2 = _pentagon_resolvents(coeffs, G.perms[tau], roots)
    observed = ff_orbit_resolvent(coeffs, p, 1)
    if (r1 - r2) % p == 0:
        raise AmbiguityError(f"resolvents {r1} and {r2} agree modulo {p}")
    if observed == r1 % p:
        chosen = candidates[0]
    elif observed == r2 % p:
        chosen = candidates[1]
    else:
        raise InconsistencyError(f"orbit resolvent {observed} matches neither {r1} nor {r2} modulo {p}")
    return FrobeniusClass(chosen, ctype, order, "pentagon resolvent", (r1, r2, observed))
