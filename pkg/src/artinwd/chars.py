"""Class functions with cyclotomic values and character tables.

Character tables are computed with the Burnside-Dixon method: the class
multiplication matrices are diagonalised simultaneously over F_p for a prime
p = 1 mod exp(G), and each character value is lifted back to Q(zeta_exp) by
recovering the multiplicities of its eigenvalues.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import ValidationError
from .exact.cyclotomic import Cyclotomic, as_cyclotomic
from .exact.finfield import is_prime
from .groups import DEFAULT_ORDER_BOUND, FiniteGroup, Subgroup

__all__ = [
    "ClassFunction",
    "CharacterTable",
    "inner_product",
    "induce",
    "restrict",
    "tensor",
    "decompose",
    "character_table",
    "trivial_character",
    "regular_character",
    "permutation_character",
]


def _cyc(v):
    c = as_cyclotomic(v)
    if c is NotImplemented:
        raise TypeError(f"cannot use {v!r} as a character value")
    return c


class ClassFunction:
    """Cyclotomic values on the conjugacy classes of a group, in canonical class order."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence):
        if len(values) != len(group.classes):
            raise ValidationError(
                f"class function needs {len(group.classes)} values, got {len(values)}"
            )
        self.group = group
        self.values = tuple(_cyc(v) for v in values)

    @classmethod
    def from_elements(cls, group: FiniteGroup, func):
        return cls(group, [func(c[0]) for c in group.classes])

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[self.group.class_of(g)]

    @property
    def dim(self) -> Cyclotomic:
        return self.values[0]

    def degree(self) -> int:
        d = self.values[0]
        if not d.is_integer():
            raise ValidationError(f"value at the identity {d} is not an integer")
        return int(d.to_fraction())

    def _same(self, other):
        if not isinstance(other, ClassFunction):
            raise TypeError("expected a ClassFunction")
        if other.group is not self.group:
            raise ValidationError("class functions live on different groups")

    def __add__(self, other):
        self._same(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._same(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return tensor(self, other)
        c = _cyc(other)
        return ClassFunction(self.group, [a * c for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group is other.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def is_real(self) -> bool:
        return all(v == v.conjugate() for v in self.values)

    def __repr__(self):
        return "ClassFunction([" + ", ".join(v.to_literal() for v in self.values) + "])"


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [1] * len(G.classes))


def regular_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, [G.order] + [0] * (len(G.classes) - 1))


def permutation_character(G: FiniteGroup) -> ClassFunction:
    """Number of fixed points, for a permutation group."""
    if G.perms is None:
        raise ValidationError("group was not built from permutations")
    return ClassFunction.from_elements(G, lambda g: sum(1 for i, x in enumerate(G.perms[g]) if i == x))


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum_g chi(g) * conj(psi(g))."""
    chi._same(psi)
    G = chi.group
    acc = Cyclotomic.rational(0)
    for size, a, b in zip(G.classes.sizes, chi.values, psi.values):
        if a.is_zero() or b.is_zero():
            continue
        acc = acc + a * b.conjugate() * size
    return acc / G.order


def restrict(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    """Restriction to H, as a class function on H.group."""
    if H.parent is not chi.group:
        raise ValidationError("subgroup of a different group")
    K = H.group
    return ClassFunction(K, [chi(H.to_parent[c[0]]) for c in K.classes])


def induce(H: Subgroup, chi_h: ClassFunction) -> ClassFunction:
    """Frobenius formula (Ind chi)(g) = (1/|H|) sum_{x: x^-1 g x in H} chi(x^-1 g x)."""
    if chi_h.group is not H.group:
        raise ValidationError("character is not defined on this subgroup")
    G = H.parent
    idx = H.from_parent
    values = []
    for c in G.classes:
        g = c[0]
        acc = Cyclotomic.rational(0)
        for x in range(G.order):
            y = G.conj(x, g)
            if y in idx:
                acc = acc + chi_h(idx[y])
        values.append(acc / H.order)
    return ClassFunction(G, values)


def tensor(chi: ClassFunction, psi: ClassFunction) -> ClassFunction:
    chi._same(psi)
    return ClassFunction(chi.group, [a * b for a, b in zip(chi.values, psi.values)])


class CharacterTable:
    """Irreducible characters of a group, trivial character first."""

    def __init__(self, group: FiniteGroup, rows: Sequence[ClassFunction], verified: bool = False):
        self.group = group
        self.rows = tuple(rows)
        self.verified = verified

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    @property
    def dims(self):
        return [r.degree() for r in self.rows]

    @classmethod
    def from_rows(cls, group: FiniteGroup, rows: Sequence) -> "CharacterTable":
        """Accept a user-supplied table after checking orthonormality and completeness."""
        rows = [r if isinstance(r, ClassFunction) else ClassFunction(group, r) for r in rows]
        table = cls(group, rows)
        table.verify()
        return table

    def verify(self) -> "CharacterTable":
        G = self.group
        if len(self.rows) != len(G.classes):
            raise ValidationError(
                f"table has {len(self.rows)} rows but the group has {len(G.classes)} classes"
            )
        for i, a in enumerate(self.rows):
            for j, b in enumerate(self.rows[: i + 1]):
                ip = inner_product(a, b)
                if ip != (1 if i == j else 0):
                    raise ValidationError(f"rows {j} and {i} are not orthonormal (inner product {ip})")
        if sum(d * d for d in self.dims) != G.order:
            raise ValidationError("sum of squared degrees differs from the group order")
        if self.rows[0] != trivial_character(G):
            raise ValidationError("first row must be the trivial character")
        self.verified = True
        return self


def decompose(chi: ClassFunction, table: CharacterTable) -> list:
    """Multiplicities of the irreducible rows in chi; they must be non-negative integers."""
    if chi.group is not table.group:
        raise ValidationError("character and table live on different groups")
    out = []
    for i, row in enumerate(table.rows):
        m = inner_product(chi, row)
        if not m.is_integer() or m.to_fraction() < 0:
            raise ValidationError(f"multiplicity of irreducible {i} is {m}: not a character")
        out.append(int(m.to_fraction()))
    return out


# -- Burnside-Dixon -----------------------------------------------------


def _dixon_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    lower = 2 * math.isqrt(order) + 1
    while not (is_prime(p) and p > lower):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


def _nullspace_mod(mat, p):
    """Basis (list of vectors) of {v : mat v = 0} over F_p."""
    rows = [list(r) for r in mat]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc] % p
        basis.append(v)
    return basis


def _class_matrices(G: FiniteGroup):
    """M[j][k][l] = #{x in C_j : x^-1 z_l in C_k}, z_l the representative of C_l."""
    classes = G.classes
    r = len(classes)
    reps = classes.representatives
    out = []
    for j in range(r):
        M = [[0] * r for _ in range(r)]
        for l, z in enumerate(reps):
            for x in classes[j]:
                y = G.mul(G.inv(x), z)
                M[G.class_of(y)][l] += 1
        out.append(M)
    return out


def _common_eigenvectors(mats, p):
    """Split F_p^r into common eigenlines of commuting, simultaneously diagonalisable matrices.

    Vectors v are row vectors with v M = lambda v (M acting on the right).
    """
    r = len(mats[0])
    spaces = [[[1 if i == j else 0 for j in range(r)] for i in range(r)]]
    for M in mats:
        if all(len(S) == 1 for S in spaces):
            break
        new = []
        for S in spaces:
            if len(S) == 1:
                new.append(S)
                continue
            # image of basis rows under M, expressed in the basis S
            images = [[sum(v[k] * M[k][c] for k in range(r)) % p for c in range(r)] for v in S]
            A = _coords(S, images, p)
            d = len(S)
            for lam in range(p):
                shifted = [[(A[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
                # left null space: w shifted = 0 <=> shifted^T w^T = 0
                ker = _nullspace_mod([list(col) for col in zip(*shifted)], p)
                if ker:
                    new.append([[sum(w[i] * S[i][c] for i in range(d)) % p for c in range(r)] for w in ker])
        spaces = new
    if not all(len(S) == 1 for S in spaces) or len(spaces) != r:
        raise ValidationError("class algebra failed to split; Dixon prime unsuitable")
    return [S[0] for S in spaces]


def _coords(basis, vectors, p):
    """Coordinates of each vector (a row) in the span of basis rows, over F_p."""
    d = len(basis)
    r = len(basis[0])
    out = []
    # solve c * basis = v using columns as equations
    for v in vectors:
        aug = [[basis[i][c] for i in range(d)] + [v[c]] for c in range(r)]
        sol = _solve_mod(aug, d, p)
        out.append(sol)
    return out


def _solve_mod(aug, n, p):
    rows = [list(r) for r in aug]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][n] % p for i in range(r, len(rows))):
        raise ValidationError("vector outside invariant subspace")
    sol = [0] * n
    for i, c in enumerate(pivots):
        sol[c] = rows[i][n]
    return sol


def character_table(G: FiniteGroup, bound: int = DEFAULT_ORDER_BOUND) -> CharacterTable:
    """Irreducible characters with exact values in Q(zeta_exp(G)).

    Rows are ordered trivial first, then by (degree, value coordinates in
    Q(zeta_exp)); the result is verified for orthonormality.
    """
    if G.order > bound:
        raise ValidationError(f"group order {G.order} exceeds bound {bound}")
    classes = G.classes
    r = len(classes)
    sizes = classes.sizes
    e = G.exponent
    p = _dixon_prime(G.order, e)
    # omega_j omega = M_j omega for column vectors; split with the transposes
    mats = [[list(col) for col in zip(*M)] for M in _class_matrices(G)]
    vecs = _common_eigenvectors(mats, p)

    inv_class = [G.class_of(G.inv(c[0])) for c in classes]
    z = pow(_primitive_root(p), (p - 1) // e, p)
    powers = [[G.class_of(G.power(c[0], k)) for k in range(e)] for c in classes]

    rows = []
    for v in vecs:
        inv0 = pow(v[0], -1, p)
        omega = [x * inv0 % p for x in v]  # omega(C_1) = 1
        s = sum(omega[i] * omega[inv_class[i]] * pow(sizes[i], -1, p) for i in range(r)) % p
        dsq = G.order * pow(s, -1, p) % p
        deg = next(d for d in range(1, math.isqrt(G.order) + 1) if d * d % p == dsq)
        chi_mod = [omega[i] * deg * pow(sizes[i], -1, p) % p for i in range(r)]
        values = []
        for i in range(r):
            coeffs = []
            for k in range(e):
                m = sum(chi_mod[powers[i][j]] * pow(z, (-j * k) % e, p) for j in range(e))
                m = m * pow(e, -1, p) % p
                coeffs.append(m)
            if sum(coeffs) != deg:
                raise ValidationError("eigenvalue multiplicities do not lift; Dixon prime unsuitable")
            values.append(Cyclotomic(coeffs, e).minimal())
        rows.append(ClassFunction(G, values))

    triv = trivial_character(G)
    rest = [row for row in rows if row != triv]
    rest.sort(key=lambda row: (row.degree(), [v.sort_key(e) for v in row.values]))
    table = CharacterTable(G, [triv] + rest)
    return table.verify()
