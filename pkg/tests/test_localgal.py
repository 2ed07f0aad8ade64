import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinwd.chars import character_table, induce
from artinwd.errors import AmbiguityError, ValidationError
from artinwd.exact.finfield import ff_orbit_resolvent, is_prime
from artinwd.exact.poly import UniPoly
from artinwd.fixture import parse_fixture
from artinwd.groups import from_permutations
from artinwd.localgal import (
    conductor_exponent,
    discriminant_valuation,
    frobenius_class,
    is_unramified_at,
    local_polynomial,
    residue_degree_of,
    restrict_ramification,
    swan_pairing,
    validate_ramification,
)
from conftest import fixture_path
from synth import random_legal_data, synthetic_group, synthetic_table

QUINTIC = [1, 0, 0, -3, 2, 1]


@pytest.fixture(scope="module")
def s3q5():
    return parse_fixture(fixture_path("s3_q5.fix"))


@pytest.fixture(scope="module")
def q3():
    return parse_fixture(fixture_path("q3_cuberoot3.fix"))


@pytest.fixture(scope="module")
def d10():
    return parse_fixture(fixture_path("d10_quintic.fix"))


def poly(*cs):
    return UniPoly(list(cs))


def test_tame_example(s3q5):
    d = s3q5.ramification
    assert local_polynomial(s3q5.character("one"), d) == poly(1, -1)
    assert local_polynomial(s3q5.character("eps"), d) == poly(1, 1)
    assert local_polynomial(s3q5.character("rho2"), d) == UniPoly.one()
    c = conductor_exponent(s3q5.character("rho2"), d)
    assert (c.tame, c.wild, c.total) == (2, 0, 2)
    G = s3q5.group
    assert discriminant_valuation(d, G.trivial) == 4
    assert discriminant_valuation(d, s3q5.subgroup("C2")) == 2
    assert discriminant_valuation(d, s3q5.subgroup("C3")) == 0


def test_wild_example(q3):
    d = q3.ramification
    c = conductor_exponent(q3.character("rho2"), d)
    assert (c.tame, c.wild, c.total) == (2, 3, 5)
    assert conductor_exponent(q3.character("eps"), d).total == 1
    # Q(3^(1/3)) has discriminant -3^5
    assert discriminant_valuation(d, q3.subgroup("C2")) == 5
    assert swan_pairing(q3.character("rho2"), d) == 3
    assert d.upper_jumps() == [0, Fraction(3, 2)]


def test_gaussian_field_over_q2():
    F = parse_fixture(fixture_path("c2_q2i.fix"))
    d = F.ramification
    chi = F.character("chi")
    assert d.breaks == {1: 1}
    c = conductor_exponent(chi, d)
    assert (c.tame, c.wild, c.total) == (1, 1, 2)
    assert swan_pairing(chi, d) == 1
    assert local_polynomial(chi, d) == UniPoly.one()
    assert local_polynomial(F.character("one"), d) == poly(1, -1)
    # Q2(i) has discriminant -4
    assert discriminant_valuation(d, F.group.trivial) == 2


def test_unramified_polynomial_is_frobenius_charpoly():
    # trivial inertia needs cyclic G
    C6 = synthetic_group("C6")
    gen = next(g for g in range(6) if C6.element_orders[g] == 6)
    d = validate_ramification(C6, [C6.trivial], gen, 7, 7)
    for chi in synthetic_table("C6").rows:
        # 1 - chi(Phi) T with Phi = gen^-1
        assert local_polynomial(chi, d) == poly(1, -chi(C6.inv(gen)))
        assert conductor_exponent(chi, d).total == 0


def test_frobenius_lift_independence(s3q5):
    d = s3q5.ramification
    G = d.G
    for h in d.inertia.elements:
        other = validate_ramification(G, d.chain, G.mul(d.frobenius, h), d.p, d.q)
        for chi in s3q5.characters.values():
            assert local_polynomial(chi, other) == local_polynomial(chi, d)


def test_validation_rejects_illegal_chains(s3q5):
    G = s3q5.group
    C3, C2 = s3q5.subgroup("C3"), s3q5.subgroup("C2")
    frob = s3q5.ramification.frobenius
    with pytest.raises(ValidationError, match="normal"):
        validate_ramification(G, [C2, G.trivial], 0, 5, 5)
    with pytest.raises(ValidationError, match="trivial"):
        validate_ramification(G, [C3], frob, 5, 5)
    with pytest.raises(ValidationError, match="power"):
        validate_ramification(G, [C3, G.trivial], frob, 5, 25 * 3)
    with pytest.raises(ValidationError, match="Sylow"):
        validate_ramification(G, [C3, C3, G.trivial], frob, 2, 2)
    with pytest.raises(ValidationError, match="generate"):
        validate_ramification(G, [C3, G.trivial], 0, 5, 5)


def test_non_integral_chain_is_rejected():
    # C4 at p = 2 with lower breaks 1 and 2 has upper jumps 1 and 3/2
    G = synthetic_group("C4")
    C2 = next(H for H in G.subgroups() if H.order == 2)
    d = validate_ramification(G, [G.whole, G.whole, C2, G.trivial], 0, 2, 2)
    assert not d.has_integral_upper_jumps()
    faithful = next(chi for chi in synthetic_table("C4").rows if chi.values[1] not in (1, -1))
    loose = conductor_exponent(faithful, d, strict=False)
    assert loose.total == Fraction(5, 2) and not loose.integral
    with pytest.raises(ValidationError, match="not an integer"):
        conductor_exponent(faithful, d)


# -- properties over random legal data -----------------------------------


def _irreducibles(G):
    return character_table(G).rows


@settings(max_examples=60)
@given(st.integers(0, 2**32))
def test_conductor_is_additive_and_polynomial_multiplicative(seed):
    rng = random.Random(seed)
    d = random_legal_data(rng)
    rows = _irreducibles(d.G)
    a, b = rng.choice(rows), rng.choice(rows)
    ca = conductor_exponent(a, d).total
    cb = conductor_exponent(b, d).total
    assert conductor_exponent(a + b, d).total == ca + cb
    assert local_polynomial(a + b, d) == local_polynomial(a, d) * local_polynomial(b, d)


@settings(max_examples=60)
@given(st.integers(0, 2**32))
def test_integral_upper_jumps_give_integral_conductors(seed):
    d = random_legal_data(random.Random(seed))
    assert d.has_integral_upper_jumps()
    for chi in _irreducibles(d.G):
        c = conductor_exponent(chi, d)
        assert c.integral and c.total >= 0
        assert c.tame <= chi.degree()


@settings(max_examples=60)
@given(st.integers(0, 2**32))
def test_swan_pairing_equals_wild_sum(seed):
    d = random_legal_data(random.Random(seed), integral=seed % 2 == 0)
    for chi in _irreducibles(d.G):
        assert swan_pairing(chi, d, check=False) == conductor_exponent(chi, d, strict=False).wild


@settings(max_examples=40)
@given(st.integers(0, 2**32))
def test_induction_and_conductor_discriminant(seed):
    rng = random.Random(seed)
    d = random_legal_data(rng)
    G = d.G
    H = rng.choice(G.subgroups())
    dH = restrict_ramification(d, H)
    f = residue_degree_of(d, H)
    vdisc = discriminant_valuation(d, H)
    for chi in _irreducibles(H.group):
        ind = induce(H, chi)
        assert local_polynomial(chi, dH).compose_power(f) == local_polynomial(ind, d)
        lhs = conductor_exponent(ind, d).total
        rhs = chi.degree() * vdisc + f * conductor_exponent(chi, dH).total
        assert lhs == rhs


def test_induction_over_all_subgroups_of_tame_example(s3q5):
    d = s3q5.ramification
    for H in d.G.subgroups():
        dH = restrict_ramification(d, H)
        f = residue_degree_of(d, H)
        for chi in _irreducibles(H.group):
            assert local_polynomial(chi, dH).compose_power(f) == local_polynomial(induce(H, chi), d)


# -- Frobenius classes ---------------------------------------------------


def _numpy_pentagon_values():
    """Integer values of sum a_i a_tau(i) over all 5-cycles tau, from numpy roots."""
    roots = np.roots(list(reversed(QUINTIC)))
    values = set()
    for perm in itertools.permutations(range(1, 5)):
        cycle = (0,) + perm
        tau = {cycle[i]: cycle[(i + 1) % 5] for i in range(5)}
        s = sum(roots[i] * roots[tau[i]] for i in range(5))
        if abs(s - round(s.real)) < 1e-8:
            values.add(int(round(s.real)))
    return values


def test_pentagon_resolvents_against_numpy_oracle(d10):
    fc = frobenius_class(QUINTIC, 2, d10.group, roots=d10.global_config.rule.roots)
    r1, r2, observed = fc.resolvents
    assert {r1, r2} == _numpy_pentagon_values()
    assert (r1, r2) == (2, -5)
    assert r1 + r2 == QUINTIC[3]  # e_2 = -3
    assert observed == 0
    assert fc.cycle_type == (5,) and fc.order == 5
    assert fc.method == "pentagon resolvent"


def test_frobenius_needs_labels_for_five_cycles(d10):
    with pytest.raises(AmbiguityError):
        frobenius_class(QUINTIC, 2, d10.group)


def test_frobenius_classes_consistent_over_primes(d10):
    G = d10.group
    roots = d10.global_config.rule.roots
    seen = set()
    for p in range(2, 400):
        if not is_prime(p) or not is_unramified_at(QUINTIC, p) or p == 7:
            continue
        fc = frobenius_class(QUINTIC, p, G, roots=roots)
        seen.add(fc.class_index)
        g = G.classes[fc.class_index][0]
        assert G.element_orders[g] == fc.order
        if fc.cycle_type == (5,):
            r1, r2, _ = fc.resolvents
            s1 = ff_orbit_resolvent(QUINTIC, p, 1)
            s2 = ff_orbit_resolvent(QUINTIC, p, 2)
            # Frobenius acting as tau sees r1 at stride 1 and r2 at stride 2
            if fc.class_index == 1:
                assert (s1, s2) == (r1 % p, r2 % p)
            else:
                assert (s1, s2) == (r2 % p, r1 % p)
    # Chebotarev: every class shows up
    assert seen == set(range(len(G.classes)))


def test_resolvents_congruent_mod_7_stay_ambiguous(d10):
    # r1 - r2 = 7, so the resolvent cannot separate the two 5-cycle classes at 7
    with pytest.raises(AmbiguityError, match="agree modulo 7"):
        frobenius_class(QUINTIC, 7, d10.group, roots=d10.global_config.rule.roots)


def test_frobenius_rejects_ramified_prime(d10):
    # disc of the quintic is 5^2 * 47^2
    with pytest.raises(ValidationError):
        frobenius_class(QUINTIC, 47, d10.group)


def test_frobenius_wrong_group():
    G = from_permutations(["(1 2 3 4 5)"])
    with pytest.raises(ValidationError):
        frobenius_class(QUINTIC, 11, G)  # factorisation 2+2+1 is not in C5


def test_cycle_type_determines_class_in_s3():
    G = synthetic_group("S3")
    coeffs = [-2, 0, 0, 1]  # x^3 - 2
    fc = frobenius_class(coeffs, 5, G)
    assert fc.cycle_type == (2, 1) and fc.method == "cycle type"
