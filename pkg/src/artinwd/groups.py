"""Finite groups given by Cayley tables or permutation generators.

Elements are integer indices, index 0 is the identity, and ``table[g][h]``
is the index of g*h.  For permutation groups the product is composition,
(g*h)(x) = g(h(x)), and elements are indexed in increasing order of their
image tuples, so that the identity comes first.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .errors import ValidationError

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "ConjugacyPartition",
    "DEFAULT_ORDER_BOUND",
    "group_validate",
    "from_permutations",
    "parse_cycles",
    "format_cycles",
    "conjugacy_classes",
    "quotient",
    "cycle_type",
]

DEFAULT_ORDER_BOUND = 10080


def parse_cycles(text: str, degree: int | None = None) -> tuple:
    """Cycle notation ``"(1 2 3)(4 5)"`` to a 0-based image tuple."""
    text = text.strip()
    cycles = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise ValidationError(f"malformed cycle notation {text!r}")
        end = text.find(")", pos)
        if end < 0:
            raise ValidationError(f"unclosed cycle in {text!r}")
        body = text[pos + 1 : end].replace(",", " ").split()
        try:
            cycles.append([int(b) for b in body])
        except ValueError:
            raise ValidationError(f"non-integer point in {text!r}") from None
        pos = end + 1
    points = [x for c in cycles for x in c]
    if any(x < 1 for x in points):
        raise ValidationError(f"points are numbered from 1 in {text!r}")
    if len(points) != len(set(points)):
        raise ValidationError(f"cycles are not disjoint in {text!r}")
    m = max(points, default=0)
    if degree is not None:
        if m > degree:
            raise ValidationError(f"point {m} exceeds degree {degree} in {text!r}")
        m = degree
    image = list(range(m))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            image[a - 1] = b - 1
    return tuple(image)


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = perm[x]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


class FiniteGroup:
    """Validated finite group on indices 0..order-1."""

    def __init__(self, table, labels=None, perms=None, degree=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        self.perms = tuple(perms) if perms is not None else None
        self.degree = degree

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @cached_property
    def inverses(self) -> tuple:
        inv = [0] * self.order
        for g, row in enumerate(self.table):
            inv[g] = row.index(0)
        return tuple(inv)

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverses[g], -k
        result, base = 0, g
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def conj(self, x: int, g: int) -> int:
        """x^-1 g x."""
        return self.table[self.table[self.inverses[x]][g]][x]

    @cached_property
    def element_orders(self) -> tuple:
        out = []
        for g in range(self.order):
            k, h = 1, g
            while h != 0:
                h = self.table[h][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    @cached_property
    def classes(self) -> "ConjugacyPartition":
        return conjugacy_classes(self)

    def class_of(self, g: int) -> int:
        return self.classes.class_of[g]

    def index_of_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"no element labelled {label!r}") from None

    def index_of_perm(self, perm: tuple) -> int:
        if self.perms is None:
            raise ValidationError("group was not built from permutations")
        try:
            return self._perm_index[perm]
        except KeyError:
            raise ValidationError(f"{format_cycles(perm)} is not in the group") from None

    @cached_property
    def _perm_index(self):
        return {p: i for i, p in enumerate(self.perms)}

    def generate(self, gens: Sequence[int]) -> "Subgroup":
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(self, elems)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, [0])

    def subgroups(self) -> list:
        """All subgroups, by brute force over cyclic joins (small groups only)."""
        cyclic = {self.generate([g]) for g in range(self.order)}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            nxt = set()
            for H in frontier:
                for C in cyclic:
                    if not C.elements <= H.elements:
                        J = self.generate(sorted(H.elements | C.elements))
                        if J not in found:
                            found.add(J)
                            nxt.add(J)
            frontier = nxt
        return sorted(found, key=lambda H: (H.order, H.elements_sorted))


class Subgroup:
    """Subset of a parent group closed under products and inverses."""

    def __init__(self, parent: FiniteGroup, elements):
        self.parent = parent
        self.elements = frozenset(elements)
        self.elements_sorted = tuple(sorted(self.elements))
        self.order = len(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={list(self.elements_sorted)})"

    def check(self) -> "Subgroup":
        G = self.parent
        if 0 not in self.elements:
            raise ValidationError("subgroup does not contain the identity")
        for a in self.elements:
            if G.inv(a) not in self.elements:
                raise ValidationError(f"subgroup not closed under inverses at {G.labels[a]}")
            for b in self.elements:
                if G.mul(a, b) not in self.elements:
                    raise ValidationError(
                        f"subgroup not closed: {G.labels[a]} * {G.labels[b]} lies outside"
                    )
        return self

    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conj(x, h) in self.elements for x in range(G.order) for h in self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.elements & other.elements)

    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def to_parent(self) -> tuple:
        return self.elements_sorted

    @cached_property
    def from_parent(self) -> dict:
        return {g: i for i, g in enumerate(self.elements_sorted)}

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as a FiniteGroup in its own right (indices follow to_parent)."""
        G = self.parent
        idx = self.from_parent
        table = [[idx[G.mul(a, b)] for b in self.elements_sorted] for a in self.elements_sorted]
        perms = [G.perms[a] for a in self.elements_sorted] if G.perms is not None else None
        labels = [G.labels[a] for a in self.elements_sorted]
        return FiniteGroup(table, labels=labels, perms=perms, degree=G.degree)

    def sub_to_group(self, inner: "Subgroup") -> "Subgroup":
        """A subgroup of self.group, re-expressed as a subgroup of the parent."""
        return Subgroup(self.parent, (self.to_parent[i] for i in inner.elements))

    def group_subgroup(self, outer: "Subgroup") -> "Subgroup":
        """A parent subgroup contained in self, as a subgroup of self.group."""
        if not outer.elements <= self.elements:
            raise ValidationError("subgroup is not contained in this subgroup")
        return Subgroup(self.group, (self.from_parent[g] for g in outer.elements))

    def cosets(self) -> list:
        """Left cosets gH as sorted tuples, ordered by least element."""
        G = self.parent
        seen = set()
        out = []
        for g in range(G.order):
            if g in seen:
                continue
            c = tuple(sorted(G.mul(g, h) for h in self.elements))
            seen.update(c)
            out.append(c)
        return out


class ConjugacyPartition:
    def __init__(self, classes, order):
        self.classes = tuple(tuple(c) for c in classes)
        cls_of = [0] * order
        for i, c in enumerate(self.classes):
            for g in c:
                cls_of[g] = i
        self.class_of = tuple(cls_of)

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    @property
    def sizes(self):
        return [len(c) for c in self.classes]

    @property
    def representatives(self):
        return [c[0] for c in self.classes]


def group_validate(table, labels=None, perms=None, degree=None) -> FiniteGroup:
    """Check a Cayley table and wrap it as a FiniteGroup.

    Raises ValidationError naming the first failing axiom (for associativity,
    the offending triple).
    """
    n = len(table)
    if n == 0:
        raise ValidationError("empty multiplication table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValidationError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not isinstance(x, int) or not 0 <= x < n:
                raise ValidationError(f"entry {x!r} in row {i} is not an element index")
    if any(table[0][h] != h for h in range(n)) or any(table[g][0] != g for g in range(n)):
        raise ValidationError("index 0 is not a two-sided identity")
    for g in range(n):
        if sorted(table[g]) != list(range(n)):
            raise ValidationError(f"element {g} has no inverse (row {g} is not a permutation)")
        if sorted(table[h][g] for h in range(n)) != list(range(n)):
            raise ValidationError(f"column {g} is not a permutation")
    for a in range(n):
        ra = table[a]
        for b in range(n):
            ab = ra[b]
            rab = table[ab]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise ValidationError(f"associativity fails for triple ({a}, {b}, {c})")
    if labels is not None and len(labels) != n:
        raise ValidationError("wrong number of element labels")
    return FiniteGroup(table, labels=labels, perms=perms, degree=degree)


def from_permutations(generators, degree: int | None = None, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Closure of permutation generators (cycle strings or 0-based image tuples)."""
    gens = []
    for g in generators:
        gens.append(parse_cycles(g) if isinstance(g, str) else tuple(g))
    m = max([len(g) for g in gens] + [degree or 0])
    full = []
    for g in gens:
        g = tuple(g) + tuple(range(len(g), m))
        if sorted(g) != list(range(m)):
            raise ValidationError(f"generator {g} is not a bijection")
        full.append(g)
    identity = tuple(range(m))
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in full:
                y = tuple(g[i] for i in x)  # g o x
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > bound:
                        raise ValidationError(f"group closure exceeds order bound {bound}")
        frontier = nxt
    perms = sorted(elems)
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(a[i] for i in b)] for b in perms] for a in perms]
    labels = [format_cycles(p) for p in perms]
    return FiniteGroup(table, labels=labels, perms=perms, degree=m)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyPartition:
    """Classes ordered by (size, least element index); each class sorted."""
    seen = set()
    classes = []
    for g in range(G.order):
        if g in seen:
            continue
        c = sorted({G.conj(x, g) for x in range(G.order)})
        seen.update(c)
        classes.append(c)
    classes.sort(key=lambda c: (len(c), c[0]))
    return ConjugacyPartition(classes, G.order)


def quotient(G: FiniteGroup, N: Subgroup):
    """(G/N, projection) with cosets indexed by their least element."""
    if N.parent is not G:
        raise ValidationError("subgroup belongs to a different group")
    if not N.is_normal():
        raise ValidationError("subgroup is not normal")
    cosets = N.cosets()
    where = {}
    for i, c in enumerate(cosets):
        for g in c:
            where[g] = i
    table = [[where[G.mul(c[0], d[0])] for d in cosets] for c in cosets]
    labels = [G.labels[c[0]] + "N" if c[0] else "N" for c in cosets]
    Q = group_validate(table, labels=labels)
    proj = tuple(where[g] for g in range(G.order))
    return Q, proj


def cycle_type(G: FiniteGroup, g: int) -> tuple:
    """Cycle lengths of a permutation element, fixed points included, descending."""
    if G.perms is None:
        raise ValidationError("group was not built from permutations")
    perm = G.perms[g]
    seen = set()
    lengths = []
    for start in range(len(perm)):
        if start in seen:
            continue
        n, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))
