import pytest

import liederpair as lp
from liederpair.linalg import Matrix

from fixtures import abelian2, aff1, heisenberg, sl2, solvable4, standard_pairs


def test_verify_lie_abelian_any_dim():
    for n in (1, 2, 4):
        assert lp.verify_lie(lp.LieAlgebra(n, {})).ok


def test_verify_lie_aff1_and_extensions():
    assert lp.verify_lie(aff1().algebra).ok
    assert lp.verify_lie(heisenberg().algebra).ok
    assert lp.verify_lie(solvable4().algebra).ok


def test_verify_lie_violation_located():
    # [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e2 breaks Jacobi on (e1,e2,e3)
    bad = lp.LieAlgebra(3, {(0, 1): {2: 1}, (0, 2): {1: 1}, (1, 2): {1: 1}})
    report = lp.verify_lie(bad)
    assert not report.ok
    assert [v.location for v in report.violations] == [(0, 1, 2)]


def test_verify_derivation_grading():
    h = heisenberg()
    assert lp.verify_derivation(h.algebra, h.derivation).ok


def test_ad_is_derivation_everywhere():
    for _, pair in standard_pairs():
        for i in range(pair.dim):
            assert lp.verify_derivation(pair.algebra, lp.Derivation(pair.algebra.ad(i))).ok


def test_identity_fails_leibniz_on_heisenberg():
    h = heisenberg().algebra
    report = lp.verify_derivation(h, lp.Derivation(Matrix.identity(3)))
    assert [v.location for v in report.violations] == [(0, 1)]


def test_adjoint_representation_verifies():
    for _, pair in standard_pairs():
        assert lp.verify_representation(pair, lp.adjoint_representation(pair)).ok


def test_trivial_representation_verifies_with_any_phi():
    for _, pair in standard_pairs():
        rep = lp.trivial_representation(pair.dim, 2, Matrix.from_rows([[1, 2], [0, 5]]))
        assert lp.verify_representation(pair, rep).ok


def test_rep1_violation_on_sl2():
    # adjoint action but phi_V = Id against phi_g = ad_h
    pair = sl2()
    rep = lp.LieDerRepresentation(3, [pair.algebra.ad(i) for i in range(3)], Matrix.identity(3))
    report = lp.verify_representation(pair, rep)
    assert not report.ok
    assert all(v.law == "phi-compatibility" for v in report.violations)


def test_semidirect_product_trivial_line():
    pair = abelian2()
    small = lp.LieDerPair(lp.LieAlgebra(1, {}), lp.Derivation(Matrix.zeros(1, 1)))
    rep = lp.trivial_representation(1, 1)
    out = lp.semidirect_product(small, rep)
    assert out.dim == 2 and out.algebra.is_abelian()
    assert out.derivation.matrix.is_zero()


def test_semidirect_product_aff1_action():
    # aff(1) acting on a line: rho(e1) = 1, rho(e2) = 0, phi_V = id
    pair = aff1()
    rep = lp.LieDerRepresentation(
        1, [Matrix.identity(1), Matrix.zeros(1, 1)], Matrix.identity(1)
    )
    assert lp.verify_representation(pair, rep).ok
    out = lp.semidirect_product(pair, rep)
    assert out.dim == 3
    assert lp.verify_lie(out.algebra).ok
    assert lp.verify_derivation(out.algebra, out.derivation).ok


def test_semidirect_with_adjoint_reproduces_bracket():
    for _, pair in standard_pairs():
        out = lp.semidirect_product(pair, lp.adjoint_representation(pair))
        n = pair.dim
        for i in range(n):
            for j in range(i + 1, n):
                assert out.algebra.bracket_basis(i, j)[:n] == pair.algebra.bracket_basis(i, j)
        # the diagonal copy x + x brackets to [x,y] + rho(x)y - rho(y)x = 2[x,y] on the V block
        assert lp.verify_lie(out.algebra).ok
        assert lp.verify_derivation(out.algebra, out.derivation).ok


def test_semidirect_rejects_unverified_representation():
    pair = sl2()
    bad = lp.LieDerRepresentation(3, [pair.algebra.ad(i) for i in range(3)], Matrix.identity(3))
    with pytest.raises(ValueError):
        lp.semidirect_product(pair, bad)


def test_pair_constructor_checks():
    bad = lp.LieAlgebra(3, {(0, 1): {2: 1}, (0, 2): {1: 1}, (1, 2): {1: 1}})
    with pytest.raises(ValueError):
        lp.LieDerPair(bad, lp.Derivation(Matrix.zeros(3, 3)))
    with pytest.raises(ValueError):
        lp.LieDerPair(heisenberg().algebra, lp.Derivation(Matrix.identity(3)))
