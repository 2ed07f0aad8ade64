import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinwd.chars import (
    CharacterTable,
    ClassFunction,
    character_table,
    decompose,
    induce,
    inner_product,
    permutation_character,
    regular_character,
    restrict,
    tensor,
    trivial_character,
)
from artinwd.errors import ValidationError
from artinwd.exact.cyclotomic import Cyclotomic, sqrt_rational
from artinwd.groups import from_permutations, parse_cycles
from synth import GROUP_GENERATORS, random_class_function, synthetic_group, synthetic_table

ONE = Cyclotomic.rational(1)
ZERO = Cyclotomic.rational(0)


@pytest.fixture(scope="module")
def a5():
    return from_permutations(["(1 2 3 4 5)", "(1 2 3)"])


def test_a5_table_frozen(a5):
    T = character_table(a5)
    assert [len(c) for c in a5.classes] == [1, 12, 12, 15, 20]
    assert [r.degree() for r in T.rows] == [1, 3, 3, 4, 5]
    phi = (1 + sqrt_rational(5)) / 2
    psi = 1 - phi
    expected = [
        [1, 1, 1, 1, 1],
        [3, phi, psi, -1, 0],
        [3, psi, phi, -1, 0],
        [4, -1, -1, 0, 1],
        [5, 0, 0, 1, -1],
    ]
    assert [list(r.values) for r in T.rows] == [[Cyclotomic.rational(v) if isinstance(v, int) else v for v in row] for row in expected]
    assert abs(phi.to_complex() - (1 + 5**0.5) / 2) < 1e-12


def test_a5_induction_from_d10_frozen(a5):
    T = character_table(a5)
    D = a5.generate([a5.index_of_perm(parse_cycles("(1 2 3 4 5)")), a5.index_of_perm(parse_cycles("(2 5)(3 4)", 5))])
    assert D.order == 10
    assert decompose(induce(D, trivial_character(D.group)), T) == [1, 0, 0, 0, 1]
    # by reciprocity: 3 and 3' restrict to sign + 2-dim, 4 and 5 contain both 2-dims
    TD = character_table(D.group)
    degs = [r.degree() for r in TD.rows]
    assert degs == [1, 1, 2, 2]
    assert decompose(induce(D, TD.rows[1]), T) == [0, 1, 1, 0, 0]
    assert sorted(decompose(induce(D, r), T) for r in TD.rows[2:]) == [[0, 0, 1, 1, 1], [0, 1, 0, 1, 1]]


@pytest.mark.parametrize("name", sorted(GROUP_GENERATORS))
def test_orthogonality(name):
    G = synthetic_group(name)
    T = synthetic_table(name)
    assert len(T.rows) == len(G.classes)
    assert sum(r.degree() ** 2 for r in T.rows) == G.order
    for i, a in enumerate(T.rows):
        for j, b in enumerate(T.rows):
            assert inner_product(a, b) == (ONE if i == j else ZERO)
    # column orthogonality: sum_chi chi(g) conj chi(h) = |C_G(g)| delta
    for c, cls in enumerate(G.classes):
        for d, cls2 in enumerate(G.classes):
            s = sum((r.values[c] * r.values[d].conjugate() for r in T.rows), ZERO)
            assert s == (Cyclotomic.rational(G.order // len(cls)) if c == d else ZERO)


@pytest.mark.parametrize("name", sorted(GROUP_GENERATORS))
def test_regular_and_permutation_characters(name):
    G = synthetic_group(name)
    T = synthetic_table(name)
    assert decompose(regular_character(G), T) == [r.degree() for r in T.rows]
    perm = permutation_character(G)
    mult = decompose(perm, T)
    assert mult[0] >= 1  # trivial appears once per orbit


@settings(max_examples=60)
@given(st.sampled_from(sorted(GROUP_GENERATORS)), st.integers(0, 2**32))
def test_frobenius_reciprocity(name, seed):
    rng = random.Random(seed)
    G = synthetic_group(name)
    H = rng.choice(G.subgroups())
    phi = random_class_function(rng, H.group)
    psi = random_class_function(rng, G)
    assert inner_product(induce(H, phi), psi) == inner_product(phi, restrict(psi, H))


@settings(max_examples=40)
@given(st.sampled_from(sorted(GROUP_GENERATORS)), st.integers(0, 2**32))
def test_tensor_of_irreducibles_decomposes(name, seed):
    rng = random.Random(seed)
    T = synthetic_table(name)
    a, b = rng.choice(T.rows), rng.choice(T.rows)
    mult = decompose(tensor(a, b), T)
    assert sum(m * r.degree() for m, r in zip(mult, T.rows)) == a.degree() * b.degree()


def test_decompose_rejects_non_characters():
    T = synthetic_table("S3")
    half = ClassFunction(T.group, [1, 0, 0])
    with pytest.raises(ValidationError):
        decompose(half, T)


def test_from_rows_rejects_wrong_table():
    G = synthetic_group("S3")
    with pytest.raises(ValidationError):
        CharacterTable.from_rows(G, [[1, 1, 1], [1, 1, -1], [2, 1, 0]])


def test_class_function_arithmetic():
    T = synthetic_table("S3")
    one, eps, rho = T.rows
    assert tensor(eps, rho) == rho
    assert decompose(tensor(rho, rho), T) == [1, 1, 1]
    assert (one + eps) - eps == one
