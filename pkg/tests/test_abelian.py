import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from higher_uea.abelian import analyze_ring, build_additive, build_multiplicative, count_idempotents_bruteforce
from higher_uea.field import make_artin_schreier, prime_field

CASES = [(3, 0), (3, 1), (5, 0), (5, 1)]


def test_additive_square():
    A = build_additive(3, 1)
    assert list(A.mul(A.basis_vector(1), A.basis_vector(1))) == list(2 * A.basis_vector(2))
    # gamma_1 gamma_2 = 3 gamma_3 = 0
    assert not A.mul(A.basis_vector(1), A.basis_vector(2)).any()


def test_multiplicative_square():
    # binom(y, 1)^2 = 2 binom(y, 2) + binom(y, 1)
    A = build_multiplicative(5, 0)
    assert list(A.mul(A.basis_vector(1), A.basis_vector(1))) == [0, 1, 2, 0, 0]


@pytest.mark.parametrize("p,r", CASES)
@pytest.mark.parametrize("chi", [0, 1])
def test_presentation(p, r, chi):
    for build in (build_additive, build_multiplicative):
        A = build(p, r, chi)
        assert A.is_commutative()
        assert A.check_presentation()
        top = A.generator(r)
        assert A.minimal_polynomial(top) == A.presentation_polynomials()[r]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["Ga", "Gm"]), st.integers(0, 1), st.lists(st.integers(0, 8), min_size=3, max_size=3))
def test_associative(group, chi, triple):
    A = (build_additive if group == "Ga" else build_multiplicative)(3, 1, chi)
    assert A.check_associative([tuple(triple)])


@pytest.mark.parametrize("p,r", CASES)
def test_additive_top_generator_shift_is_nilpotent(p, r):
    # (t_r - chi)^p = 0 so the algebra is local
    A = build_additive(p, r, 1)
    x = (A.generator(r) - A.unit()) % p
    assert not A.power(x, p).any()


@pytest.mark.parametrize("p,r", CASES)
@pytest.mark.parametrize("chi", [0, 1])
def test_analysis(p, r, chi):
    ga = analyze_ring(build_additive(p, r, chi))
    assert ga["local"] and ga["dim"] == p ** (r + 1) and ga["radical_dim"] == ga["dim"] - 1
    gm = analyze_ring(build_multiplicative(p, r, chi))
    assert gm["radical_dim"] == 0
    assert gm["idempotents"] == p ** (r + 1)
    assert gm["splitting_degree"] == (p if chi else 1)
    assert gm["stated_copies"] == r * p and gm["stated_copies_discrepant"]


def test_bruteforce_oracle():
    # 2^(number of primitive idempotents) idempotents in total
    F27 = make_artin_schreier(3, 1)
    F3 = prime_field(3)
    assert count_idempotents_bruteforce(build_multiplicative(3, 0, 1), F27) == 2**3
    assert count_idempotents_bruteforce(build_multiplicative(3, 0, 1), F3) == 2**1
    assert count_idempotents_bruteforce(build_multiplicative(3, 0, 0), F3) == 2**3
    assert count_idempotents_bruteforce(build_additive(3, 0, 1), F27) == 2
