import random
from fractions import Fraction

import pytest

import liederpair as lp
from liederpair.linalg import Matrix

from fixtures import abelian2, heisenberg, rand_fraction, sl2, standard_pairs


def heisenberg_cocycle():
    psi = lp.Cochain.zero(2, 2, 1)
    psi.set_value((0, 1), [1])
    return lp.CentralCocycle(psi, lp.Cochain.zero(2, 1, 1))


def grading_base():
    return abelian2(Matrix.identity(2))


def test_zero_cocycle_gives_direct_product():
    base = heisenberg()
    zero = lp.CentralCocycle(lp.Cochain.zero(3, 2, 1), lp.Cochain.zero(3, 1, 1))
    ext = lp.build_central_extension(base, Matrix.diagonal([5]), zero)
    assert ext.total.dim == 4
    assert ext.total.algebra.c == base.algebra.c
    assert ext.total.derivation.matrix == Matrix.block(
        [[base.derivation.matrix, Matrix.zeros(3, 1)], [Matrix.zeros(1, 3), Matrix.diagonal([5])]]
    )


def test_heisenberg_from_grading_cocycle():
    ext = lp.build_central_extension(grading_base(), Matrix.diagonal([2]), heisenberg_cocycle())
    assert ext.total.algebra.c == {(0, 1): {2: Fraction(1)}}
    assert ext.total.derivation.matrix == Matrix.diagonal([1, 1, 2])
    assert lp.verify_lie(ext.total.algebra).ok
    assert lp.verify_derivation(ext.total.algebra, ext.total.derivation).ok
    assert lp.verify_central_extension(ext).ok


def test_p2_violation_rejected_with_report():
    with pytest.raises(lp.CocycleConditionError) as err:
        lp.build_central_extension(grading_base(), Matrix.identity(1), heisenberg_cocycle())
    assert any(v.law == "p2" for v in err.value.report.violations)


def test_p1_violation_rejected():
    from fixtures import solvable4

    base = solvable4()
    psi = lp.Cochain.zero(4, 2, 1)
    psi.set_value((1, 2), [1])  # psi(e2,e3): the cyclic sum on (e1,e2,e3) gives 2
    report = lp.verify_central_cocycle(base, Matrix.zeros(1, 1), lp.CentralCocycle(psi, lp.Cochain.zero(4, 1, 1)))
    assert any(v.law == "p1" and v.location == (0, 1, 2) for v in report.violations)


def test_canonical_section_round_trip():
    ext = lp.build_central_extension(grading_base(), Matrix.diagonal([2]), heisenberg_cocycle())
    back = lp.section_to_cocycle(ext, ext.canonical_section())
    assert back.psi == heisenberg_cocycle().psi
    assert back.chi == heisenberg_cocycle().chi


def test_round_trip_on_classified_representatives():
    for _, base in standard_pairs()[:4]:
        phi_h = Matrix.diagonal([2])
        report = lp.classify_central_extensions(base, 1, phi_h)
        for cp in report.representatives:
            c = lp.CentralCocycle.from_pair(cp)
            ext = lp.build_central_extension(base, phi_h, c)
            back = lp.section_to_cocycle(ext, ext.canonical_section())
            assert back.psi == c.psi and back.chi == c.chi


def test_shifted_sections_differ_by_coboundary():
    rng = random.Random(40)
    ext = lp.build_central_extension(grading_base(), Matrix.diagonal([2]), heisenberg_cocycle())
    base, rep = ext.base, lp.trivial_representation(2, 1, Matrix.diagonal([2]))
    s = ext.canonical_section()
    for _ in range(5):
        phi_rows = [[rand_fraction(rng) for _ in range(2)]]
        shift = Matrix.zeros(3, 2)
        shift.data[2] = phi_rows[0]
        c1 = lp.section_to_cocycle(ext, s + shift)
        c0 = lp.section_to_cocycle(ext, s)
        phi_c = lp.Cochain.zero(2, 1, 1)
        for j in range(2):
            phi_c.set_value((j,), [phi_rows[0][j]])
        dphi = lp.lieder_partial(lp.CochainPair(phi_c, None), base, rep)
        assert c1.psi - c0.psi == dphi.f
        assert c1.chi - c0.chi == dphi.g


def test_not_a_section_rejected():
    ext = lp.build_central_extension(grading_base(), Matrix.diagonal([2]), heisenberg_cocycle())
    with pytest.raises(ValueError):
        lp.section_to_cocycle(ext, Matrix.zeros(3, 2))


def test_classification_counts():
    # dim-1 base, dim-1 fiber, zero derivations: only chi survives
    line = lp.LieDerPair(lp.LieAlgebra(1, {}), lp.Derivation(Matrix.zeros(1, 1)))
    assert lp.classify_central_extensions(line, 1, Matrix.zeros(1, 1)).dim_h == 1
    # abelian dim-2 base, zero derivations: C(2,2) + C(2,1) = 3
    assert lp.classify_central_extensions(abelian2(), 1, Matrix.zeros(1, 1)).dim_h == 3


def test_cohomologous_cocycles_give_isomorphic_extensions():
    base = abelian2()
    rep = lp.trivial_representation(2, 1)
    psi = lp.Cochain.zero(2, 2, 1)
    psi.set_value((0, 1), [1])
    c1 = lp.CentralCocycle(psi, lp.Cochain.zero(2, 1, 1))
    phi_c = lp.Cochain.zero(2, 1, 1)
    phi_c.set_value((0,), [2])
    phi_c.set_value((1,), [-3])
    shift = lp.lieder_partial(lp.CochainPair(phi_c, None), base, rep)
    c2 = lp.CentralCocycle(psi + shift.f, shift.g)
    e1 = lp.build_central_extension(base, Matrix.zeros(1, 1), c1)
    e2 = lp.build_central_extension(base, Matrix.zeros(1, 1), c2)
    # zeta(x + h) = x + phi(x) + h intertwines the two total pairs
    zeta = Matrix.identity(3)
    zeta.data[2][0] = Fraction(2)
    zeta.data[2][1] = Fraction(-3)
    assert lp.pair_morphism_report(zeta, e2.total, e1.total).ok
    assert zeta.is_invertible()


def test_derivation_obstruction_grading_case():
    ext = lp.build_lie_central_extension(abelian2().algebra, 1, heisenberg_cocycle().psi)
    ob = lp.derivation_pair_obstruction(ext, Matrix.diagonal([2]), Matrix.identity(2))
    assert ob.is_zero()
    lift = lp.extend_derivation_pair(ext, Matrix.diagonal([2]), Matrix.identity(2))
    assert lift == Matrix.diagonal([1, 1, 2])


def test_derivation_obstruction_identity_fiber_blocks():
    ext = lp.build_lie_central_extension(abelian2().algebra, 1, heisenberg_cocycle().psi)
    ob = lp.derivation_pair_obstruction(ext, Matrix.identity(1), Matrix.identity(2))
    assert ob.get((0, 1)) == [Fraction(-1)]
    assert lp.extend_derivation_pair(ext, Matrix.identity(1), Matrix.identity(2)) is None


def test_obstruction_always_closed_and_section_independent_class():
    rng = random.Random(41)
    base = heisenberg(grading=False)
    psi = lp.Cochain.zero(3, 2, 1)
    psi.set_value((0, 2), [1])
    psi.set_value((1, 2), [Fraction(1, 2)])
    report = lp.verify_central_cocycle(base, Matrix.zeros(1, 1), lp.CentralCocycle(psi, lp.Cochain.zero(3, 1, 1)))
    assert report.ok
    ext = lp.build_lie_central_extension(base.algebra, 1, psi)
    phi_g = Matrix.diagonal([1, 1, 2])
    phi_h = Matrix.diagonal([3])
    ob0 = lp.derivation_pair_obstruction(ext, phi_h, phi_g)
    rep = lp.trivial_representation(3, 1)
    dummy = lp.LieDerPair(base.algebra, lp.Derivation(Matrix.zeros(3, 3)), check=False)
    d1 = lp.d_matrix(dummy, rep, 1)
    d2 = lp.d_matrix(dummy, rep, 2)
    assert all(x == 0 for x in d2.apply(ob0.flatten()))
    for _ in range(4):
        shift = Matrix.zeros(4, 3)
        shift.data[3] = [rand_fraction(rng) for _ in range(3)]
        ob1 = lp.derivation_pair_obstruction(ext, phi_h, phi_g, ext.canonical_section() + shift)
        # the two obstructions differ by an exact cochain
        assert d1.solve((ob1 - ob0).flatten()) is not None


def test_lift_commutes_with_squares():
    base = heisenberg(grading=False)
    psi = lp.Cochain.zero(3, 2, 1)
    psi.set_value((0, 2), [1])
    ext = lp.build_lie_central_extension(base.algebra, 1, psi)
    phi_g = Matrix.diagonal([1, 1, 2])
    lift = lp.extend_derivation_pair(ext, Matrix.diagonal([3]), phi_g)
    if lift is None:
        pytest.skip("pair not extensible in this extension")
    inc, proj = ext.inclusion(), ext.projection()
    assert lift * inc == inc * Matrix.diagonal([3])
    assert proj * lift == phi_g * proj
    assert lp.verify_derivation(ext.total.algebra, lp.Derivation(lift)).ok


def test_every_pair_extends_when_h2_vanishes():
    # sl2 base with a 1-dim fiber: second cohomology with trivial coefficients is 0
    rng = random.Random(42)
    base = sl2(with_ad_h=False)
    rep = lp.trivial_representation(3, 1)
    assert lp.ce_cohomology(base.algebra, rep, 2).dim_h == 0
    psi = lp.Cochain.zero(3, 2, 1)
    psi.set_value((0, 1), [1])  # exact but nonzero: a twisted total table
    report = lp.verify_central_cocycle(base, Matrix.zeros(1, 1), lp.CentralCocycle(psi, lp.Cochain.zero(3, 1, 1)))
    assert report.ok
    ext = lp.build_lie_central_extension(base.algebra, 1, psi)
    for _ in range(10):
        # random derivation of sl2 = random inner one; random fiber scaling
        x = [rand_fraction(rng) for _ in range(3)]
        phi_g = Matrix.zeros(3, 3)
        for i, xi in enumerate(x):
            phi_g = phi_g + base.algebra.ad(i).scale(xi)
        phi_h = Matrix.diagonal([rand_fraction(rng)])
        assert lp.extend_derivation_pair(ext, phi_h, phi_g) is not None


def test_theta_scaling_cancellation_and_negative():
    th0 = lp.theta_map(abelian2().algebra, 1, Matrix.diagonal([2]), Matrix.identity(2))
    assert th0.h2.dim_h == 1
    assert th0.is_zero()
    th1 = lp.theta_map(abelian2().algebra, 1, Matrix.identity(1), Matrix.identity(2))
    assert th1.matrix == Matrix.diagonal([-1])


def test_theta_zero_derivations():
    for _, pair in standard_pairs()[:3]:
        th = lp.theta_map(pair.algebra, 1, Matrix.zeros(1, 1), Matrix.zeros(pair.dim, pair.dim))
        assert th.is_zero()


def test_theta_zero_implies_extensible_everywhere():
    # every stored extension of the abelian base accepts (2 id, id); the
    # (id, id) pair refuses at least one
    base = abelian2()
    report = lp.classify_central_extensions(base, 1, Matrix.zeros(1, 1))
    psis = [cp.f for cp in report.representatives if not cp.f.is_zero()]
    assert psis
    exts = [lp.build_lie_central_extension(base.algebra, 1, psi) for psi in psis]
    for ext in exts:
        assert lp.extend_derivation_pair(ext, Matrix.diagonal([2]), Matrix.identity(2)) is not None
    assert any(
        lp.extend_derivation_pair(ext, Matrix.identity(1), Matrix.identity(2)) is None for ext in exts
    )


def test_extension_invariants_verified_on_parse_shape():
    ext = lp.build_central_extension(grading_base(), Matrix.diagonal([2]), heisenberg_cocycle())
    report = lp.verify_central_extension(ext)
    assert report.ok
    # breaking centrality is caught
    bad_algebra = lp.LieAlgebra(3, {(0, 1): {2: 1}, (0, 2): {0: 1}})
    with pytest.raises(ValueError):
        lp.CentralExtension(
            lp.LieDerPair(bad_algebra, lp.Derivation(Matrix.zeros(3, 3)), check=False),
            abelian2(),
            Matrix.zeros(1, 1),
            [0, 1],
            [2],
        )
