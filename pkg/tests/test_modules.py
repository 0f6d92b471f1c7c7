import json

import numpy as np
import pytest

from higher_uea import linalg as la
from higher_uea.analysis import find_isomorphism, irreducible_quotient, is_irreducible
from higher_uea.errors import InvalidExtensionError, InvalidWeightError, LiftError
from higher_uea.modules import (
    ModuleRep,
    baby_verma,
    induced_verma,
    lift_module,
    teenage_verma,
    trivial_module,
    verify_relations,
)
from higher_uea.weights import ChiForm, enumerate_weights, lambda_binom, make_weight

from conftest import chis


def test_classical_level_zero():
    # r = 0, chi = 0, lambda = 2: e v_1 = 2 v_0 and h v_0 = 2 v_0
    chi = ChiForm("zero", 3, 0)
    Z = baby_verma(chi, make_weight(chi, [2]))
    assert la.entry(Z.field, Z.E[0], 0, 1) == 2
    assert la.entry(Z.field, Z.H[0], 0, 0) == 2
    assert la.entry(Z.field, Z.F[0], 1, 0) == 1


@pytest.mark.parametrize("p,r", [(3, 1), (5, 1), (3, 2)])
def test_e_on_vt_gives_lambda_binom(p, r):
    for chi in chis(p, r):
        for lam in enumerate_weights(chi)[:: p]:
            Z = baby_verma(chi, lam)
            act = Z.actor()
            for t in range(chi.N):
                col = la.matmul(Z.field, act.e(t), la.identity(Z.field, chi.N)[:, t])
                assert la.to_elems(Z.field, col[0]) == lambda_binom(lam, t)
                assert la.is_zero(col[1:])


def test_nilpotent_top_wraps():
    chi = ChiForm("nilpotent", 3, 1)
    Z = baby_verma(chi, enumerate_weights(chi)[0])
    # f^(3) v_6 = binom(9, 3) / ... = (chi_f) * 9! / (3! 6!) reduced: 2 v_0
    assert la.entry(Z.field, Z.F[1], 0, 6) == 2


@pytest.mark.parametrize("p,r", [(3, 0), (3, 1), (5, 1), (3, 2)])
def test_closed_form_matches_engine(p, r):
    for chi in chis(p, r):
        for lam in enumerate_weights(chi)[:: max(1, chi.N // 6)]:
            A, B = baby_verma(chi, lam), induced_verma(chi, lam)
            for (la_, Ma), (_, Mb) in zip(A.generators(), B.generators()):
                assert la.equal(Ma, Mb), (chi, lam, la_)


@pytest.mark.parametrize("p,r", [(3, 0), (3, 1), (5, 1), (3, 2)])
def test_relations_hold(p, r):
    for chi in chis(p, r):
        for lam in enumerate_weights(chi)[:: max(1, chi.N // 4)]:
            rep = verify_relations(baby_verma(chi, lam), engine_check=(r <= 1))
            assert rep["ok"], rep["violations"]


def test_fault_is_detected():
    chi = ChiForm("zero", 3, 1)
    Z = baby_verma(chi, enumerate_weights(chi)[4])
    bad = Z.copy()
    bad.E[0][0, 0, 0] = (bad.E[0][0, 0, 0] + 1) % 3
    rep = verify_relations(bad)
    assert not rep["ok"] and rep["violations"]


def test_h_eigenvalues():
    chi = ChiForm("semisimple", 3, 1, 1)
    lam = make_weight(chi, [1, 0])
    Z = baby_verma(chi, lam)
    F = Z.field
    assert la.is_diagonal(Z.H[0]) and la.is_diagonal(Z.H[1])
    # h acts on v_k by lambda_0 - 2k on level zero
    for k in range(9):
        assert la.entry(F, Z.H[0], k, k) == (1 - 2 * k) % 3
    assert la.entry(F, Z.H[1], 0, 0) == F.theta


def test_lift_trivial_and_steinberg():
    chi0 = ChiForm("zero", 3, 0)
    T = lift_module(trivial_module(chi0), 2)
    assert T.r == 2 and T.dim == 1
    St = irreducible_quotient(make_weight(chi0, [2]))
    lifted = lift_module(St, 1)
    assert verify_relations(lifted)["ok"]
    # pulled back Steinberg is L(0, 2) at level 1
    chi1 = ChiForm("zero", 3, 1)
    assert find_isomorphism(lifted, irreducible_quotient(make_weight(chi1, [0, 2]))) is not None


def test_lift_composite():
    chi = ChiForm("zero", 3, 1)
    L = irreducible_quotient(make_weight(chi, [1, 1]))
    up = lift_module(L, 2)
    assert up.dim == 4 and verify_relations(up)["ok"]
    with pytest.raises(LiftError):
        lift_module(up, 1)


def test_lift_keeps_chi_on_top_level():
    # inflation through the lowest level works for any chi
    chi = ChiForm("nilpotent", 3, 0)
    L = irreducible_quotient(enumerate_weights(chi)[0])
    up = lift_module(L, 1)
    assert up.chi.kind == "nilpotent" and up.r == 1
    assert verify_relations(up)["ok"]


def test_json_roundtrip(chi_p3r1):
    Z = baby_verma(chi_p3r1, enumerate_weights(chi_p3r1)[5])
    back = ModuleRep.from_json(json.loads(json.dumps(Z.to_json())))
    for (_, A), (_, B) in zip(Z.generators(), back.generators()):
        assert la.equal(A, B)
    assert back.field.modulus == Z.field.modulus


def test_wrong_weight_rejected():
    with pytest.raises(InvalidWeightError):
        baby_verma(ChiForm("zero", 3, 1), enumerate_weights(ChiForm("nilpotent", 3, 1))[0])


@pytest.mark.parametrize("kind,c", [("nilpotent", 0), ("semisimple", 1)])
def test_teenage_nonzero_chi(kind, c):
    chi = ChiForm(kind, 3, 1, c)
    F = chi.field()
    chi0 = ChiForm("zero", 3, 0)
    for low in range(3):
        N = irreducible_quotient(make_weight(chi0, [low]))
        for top in enumerate_weights(chi)[:3]:
            rep, lam = teenage_verma(N, top.top, chi)
            assert rep.dim == 3 * N.dim
            assert verify_relations(rep)["ok"]
            assert is_irreducible(rep).verdict is True
            assert find_isomorphism(rep, irreducible_quotient(lam)) is not None


def test_teenage_zero_chi():
    chi = ChiForm("zero", 3, 1)
    N = irreducible_quotient(make_weight(ChiForm("zero", 3, 0), [1]))
    rep, lam = teenage_verma(N, 2, chi)
    assert verify_relations(rep)["ok"]
    assert is_irreducible(rep).verdict is True
    rep0, lam0 = teenage_verma(N, 0, chi)
    assert is_irreducible(rep0).verdict is False
    # top 0 gives the one-block quotient
    assert irreducible_quotient(lam0).dim == N.dim


def test_teenage_invalid():
    chi = ChiForm("semisimple", 3, 1, 1)
    N = irreducible_quotient(make_weight(ChiForm("zero", 3, 0), [0]))
    with pytest.raises(InvalidExtensionError):
        teenage_verma(N, 0, chi)  # 0 does not solve X^3 - X = 1
    with pytest.raises(InvalidExtensionError):
        teenage_verma(baby_verma(ChiForm("zero", 3, 0), make_weight(ChiForm("zero", 3, 0), [0])), 0,
                      ChiForm("zero", 3, 1))
