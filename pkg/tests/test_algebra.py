from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from higher_uea import linalg as la
from higher_uea.algebra import (
    AlgebraElement,
    Context,
    Engine,
    act_on_module,
    generator,
    merge_divided,
    toral_tensor,
    toral_tensor_from_structure_constants,
    verify_centrality,
)
from higher_uea.combinatorics import binom_mod_p, kummer_carry_vanishes
from higher_uea.errors import ContextMismatchError, LevelError
from higher_uea.modules import baby_verma
from higher_uea.weights import ChiForm, enumerate_weights

from conftest import chis


def test_generator_embeddings():
    ctx = Context(ChiForm("zero", 3, 1))
    assert generator(ctx, "f", 0).terms.keys() == {(1, 0, 0)}
    assert generator(ctx, "h", 1).terms.keys() == {(0, 3, 0)}
    assert generator(ctx, "e", 1).terms.keys() == {(0, 0, 3)}
    with pytest.raises(LevelError):
        generator(ctx, "e", 2)


def test_identity_and_context_mismatch():
    ctx = Context(ChiForm("nilpotent", 3, 1))
    one = AlgebraElement.one(ctx)
    x = generator(ctx, "e", 0) + generator(ctx, "h", 1) * 2
    assert one * x == x == x * one
    other = Context(ChiForm("zero", 3, 1))
    with pytest.raises(ContextMismatchError):
        x * generator(other, "e", 0)


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (3, 2)])
def test_f_merge_without_carries(p, r):
    ctx = Context(ChiForm("nilpotent", p, r))
    N = p ** (r + 1)
    for a, b in product(range(0, N, max(1, N // 9)), repeat=2):
        if a + b >= N or kummer_carry_vanishes(a, b, p):
            continue
        prod = AlgebraElement.monomial(ctx, i=a) * AlgebraElement.monomial(ctx, i=b)
        assert prod == AlgebraElement.monomial(ctx, i=a + b, coeff=binom_mod_p(a + b, a, p))


@pytest.mark.parametrize("p,r", [(3, 0), (3, 1), (5, 1), (3, 2)])
def test_central_power_relations(p, r):
    for chi in chis(p, r):
        ctx = Context(chi)
        one = AlgebraElement.one(ctx)
        for u in range(r + 1):
            e, h, f = (generator(ctx, k, u) for k in "ehf")
            assert (e**p).is_zero()
            if u < r:
                assert (f**p).is_zero()
                assert h**p == h
            else:
                assert f**p == one * chi.c_f
                assert h**p - h == one * chi.c_h


def test_top_overflow_coefficient():
    # f^(p^r) f^((p-1) p^r) = chi_f / (p-1)! = -chi_f
    for p in (3, 5, 7):
        c, m = merge_divided(p, (p - 1) * p, p, 1, 1)
        assert (c, m) == (p - 1, 0)


def monomials(N):
    return st.tuples(st.integers(0, N - 1), st.integers(0, N - 1), st.integers(0, N - 1))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(chis(3, 1)), monomials(9), monomials(9), monomials(9))
def test_associativity(chi, a, b, c):
    ctx = Context(chi)
    x, y, z = (AlgebraElement.monomial(ctx, *m) for m in (a, b, c))
    assert (x * y) * z == x * (y * z)


def random_element(ctx, rng, terms=3):
    F = ctx.field
    out = {}
    for _ in range(terms):
        m = tuple(int(v) for v in rng.integers(0, ctx.N, size=3))
        out[m] = F(tuple(int(v) for v in rng.integers(0, ctx.p, size=F.d)))
    return AlgebraElement(ctx, out)


@pytest.mark.parametrize("seed", range(4))
def test_action_is_multiplicative(chi_p3r1, seed):
    ctx = Context(chi_p3r1)
    rng = np.random.default_rng(seed)
    lam = enumerate_weights(chi_p3r1)[seed]
    Z = baby_verma(chi_p3r1, lam)
    F = Z.field
    assert la.equal(act_on_module(AlgebraElement.one(ctx), Z), la.identity(F, Z.dim))
    x, y = random_element(ctx, rng), random_element(ctx, rng)
    assert la.equal(act_on_module(x * y, Z), la.matmul(F, act_on_module(x, Z), act_on_module(y, Z)))


def test_general_straightening_against_matrices():
    # e^(a) f^(b) for all a, b, checked on every Verma module at p = 3, r = 1
    for chi in chis(3, 1):
        ctx = Context(chi)
        for lam in enumerate_weights(chi)[::4]:
            Z = baby_verma(chi, lam)
            F = Z.field
            for a, b in product(range(9), repeat=2):
                e = AlgebraElement.monomial(ctx, j=a)
                f = AlgebraElement.monomial(ctx, i=b)
                lhs = act_on_module(e * f, Z)
                rhs = la.matmul(F, act_on_module(e, Z), act_on_module(f, Z))
                assert la.equal(lhs, rhs), (chi, lam, a, b)


@pytest.mark.parametrize("p,r", [(3, 0), (3, 1), (5, 0), (3, 2)])
def test_toral_structure_constants(p, r):
    assert np.array_equal(toral_tensor(p, r, 0), toral_tensor_from_structure_constants(p, r))


def test_toral_chi_term():
    # y binom(y, 2) = 2 binom(y, 2) + 2c in F_3[y]/(y^3 - y - c)
    T = toral_tensor(3, 0, 1)
    assert list(T[1, 2]) == [2, 0, 2]
    assert list(toral_tensor(3, 0, 0)[1, 2]) == [0, 0, 2]


@pytest.mark.parametrize("p,r", [(3, 0), (3, 1), (3, 2)])
def test_centrality(p, r):
    for chi in chis(p, r):
        for lam in enumerate_weights(chi)[:: max(1, p**r // 2)]:
            rep = verify_centrality(baby_verma(chi, lam))
            assert rep["ok"], rep["violations"]
            assert rep["scalars"]["f^(p^r) to the p"] == chi.c_f


def test_nilpotent_top_f_is_identity():
    chi = ChiForm("nilpotent", 3, 1)
    for lam in enumerate_weights(chi):
        Z = baby_verma(chi, lam)
        assert la.equal(la.matpow(Z.field, Z.F[1], 3), la.identity(Z.field, 9))


def test_monomial_space_dimension():
    ctx = Context(ChiForm("zero", 3, 0))
    eng = Engine(ctx)
    # every monomial is its own normal form, so the basis has p^(3(r+1)) elements
    basis = list(product(range(3), repeat=3))
    for m in basis:
        assert eng.monomial_product((0, 0, 0), m) == {m: 1}
    assert len(basis) == 3 ** 3


def test_json_roundtrip():
    ctx = Context(ChiForm("semisimple", 3, 1, 1))
    x = random_element(ctx, np.random.default_rng(3), terms=5)
    assert AlgebraElement.from_json(ctx, x.to_json()) == x
