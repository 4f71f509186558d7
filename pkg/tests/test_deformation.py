import random

import pytest

import liederpair as lp
from liederpair.linalg import Matrix

from fixtures import (
    abelian2,
    heisenberg,
    rand_cochain,
    rand_cocycle,
    rand_formal_iso,
    rand_matrix,
    sl2,
    standard_pairs,
)


def cocycle_kernel(pair):
    ad = lp.adjoint_representation(pair)
    return lp.partial_matrix(pair, ad, 2).kernel_basis()


def test_trivial_deformation_valid_any_order():
    for _, pair in standard_pairs():
        for order in (0, 1, 3):
            d = lp.TruncatedDeformation.trivial(pair, order)
            assert lp.check_deformation(pair, d).ok


def test_order1_cocycles_are_valid_on_abelian_base():
    # zero bracket and derivation: the order-1 equations are vacuous
    rng = random.Random(20)
    pair = abelian2()
    for _ in range(5):
        d = lp.TruncatedDeformation.from_terms(
            pair, [rand_cochain(rng, 2, 2, 2)], [rand_cochain(rng, 2, 1, 2)]
        )
        assert lp.check_deformation(pair, d).ok


def test_order1_validity_equals_cocycle_condition():
    rng = random.Random(21)
    for _, pair in standard_pairs():
        ad = lp.adjoint_representation(pair)
        kernel = cocycle_kernel(pair)
        for _ in range(5):
            z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
            d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
            assert lp.check_deformation(pair, d).ok
        # and a non-cocycle violates at t^1 (skip pairs where everything is
        # closed, e.g. the abelian one with zero derivation)
        if lp.partial_matrix(pair, ad, 2).is_zero():
            continue
        while True:
            cp = lp.CochainPair(rand_cochain(rng, pair.dim, 2, pair.dim), rand_cochain(rng, pair.dim, 1, pair.dim))
            if not lp.lieder_partial(cp, pair, ad).is_zero():
                break
        d_bad = lp.TruncatedDeformation.from_terms(pair, [cp.f], [cp.g])
        report = lp.check_deformation(pair, d_bad)
        assert not report.ok
        assert all(v.detail == "t^1" for v in report.violations)


def test_omega1_failing_jacobi_coefficient_reported():
    pair = heisenberg()
    w1 = lp.Cochain.zero(3, 2, 3)
    w1.set_value((0, 1), [1, 0, 0])
    w1.set_value((1, 2), [0, 0, 1])
    d = lp.TruncatedDeformation.from_terms(pair, [w1], [lp.Cochain.zero(3, 1, 3)])
    report = lp.check_deformation(pair, d)
    if report.ok:  # make sure the fixture actually violates something
        pytest.skip("chosen cochain happened to be a cocycle")
    assert any(v.law == "jacobi-coefficient" or v.law == "leibniz-coefficient" for v in report.violations)


def test_base_mismatch_rejected():
    pair = heisenberg()
    with pytest.raises(ValueError):
        lp.TruncatedDeformation(
            pair,
            [lp.Cochain.zero(3, 2, 3), lp.Cochain.zero(3, 2, 3)],
            [lp.derivation_cochain(pair), lp.Cochain.zero(3, 1, 3)],
        )


def test_infinitesimal_trivial_and_cocycle():
    rng = random.Random(22)
    for _, pair in standard_pairs():
        ad = lp.adjoint_representation(pair)
        assert lp.infinitesimal(lp.TruncatedDeformation.trivial(pair, 1)).is_zero()
        kernel = cocycle_kernel(pair)
        z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
        d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
        inf = lp.infinitesimal(d)
        assert inf == z
        assert lp.lieder_partial(inf, pair, ad).is_zero()


def test_infinitesimal_of_pulled_back_trivial_is_exact():
    rng = random.Random(23)
    for _, pair in standard_pairs():
        ad = lp.adjoint_representation(pair)
        iso = rand_formal_iso(rng, pair.dim, 1)
        d = lp.apply_iso(pair, lp.TruncatedDeformation.trivial(pair, 1), iso)
        inf = lp.infinitesimal(d)
        phi1 = lp.matrix_to_cochain(iso.terms[1])
        assert inf == lp.lieder_partial(lp.CochainPair(phi1, None), pair, ad)
        assert lp.is_coboundary(inf, pair, ad) is not None


def test_apply_iso_identity_fixes_deformation():
    rng = random.Random(24)
    for _, pair in standard_pairs()[:3]:
        kernel = cocycle_kernel(pair)
        z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
        d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
        assert lp.apply_iso(pair, d, lp.FormalIso.identity(pair.dim, 1)) == d


def test_apply_iso_first_order_terms_match_expansion():
    # pulled-back trivial deformation: t-coefficient is (d phi1, -delta phi1)
    pair = sl2()
    ad = lp.adjoint_representation(pair)
    phi1 = rand_matrix(random.Random(25), 3)
    iso = lp.FormalIso.single_term(phi1, 1, 1)
    d = lp.apply_iso(pair, lp.TruncatedDeformation.trivial(pair, 1), iso)
    c = lp.matrix_to_cochain(phi1)
    assert d.omegas[1] == lp.ce_d(c, pair, ad)
    assert d.phis[1] == lp.delta_op(c, pair, ad).scale(-1)


def test_apply_iso_inverse_round_trip():
    rng = random.Random(26)
    for _, pair in standard_pairs():
        kernel = cocycle_kernel(pair)
        z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
        d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
        iso = rand_formal_iso(rng, pair.dim, 1)
        assert lp.apply_iso(pair, lp.apply_iso(pair, d, iso), iso.inverse()) == d
        assert iso.compose(iso.inverse()).terms == lp.FormalIso.identity(pair.dim, 1).terms


def test_obstruction_trivial_is_zero():
    for _, pair in standard_pairs():
        for order in (0, 1, 2):
            d = lp.TruncatedDeformation.trivial(pair, order)
            assert lp.obstruction(pair, d).is_zero()


def test_obstruction_direct_equals_nr_form():
    rng = random.Random(27)
    for _, pair in standard_pairs():
        kernel = cocycle_kernel(pair)
        for _ in range(3):
            z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
            d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
            direct = lp.obstruction(pair, d)
            nr = lp.obstruction_nr(pair, d)
            assert direct.f == nr.f and direct.g == nr.g


def test_obstruction_is_closed():
    rng = random.Random(28)
    for _, pair in standard_pairs():
        ad = lp.adjoint_representation(pair)
        kernel = cocycle_kernel(pair)
        z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
        d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
        assert lp.lieder_partial(lp.obstruction(pair, d), pair, ad).is_zero()


def test_extend_iff_obstruction_exact():
    rng = random.Random(29)
    for _, pair in standard_pairs():
        ad = lp.adjoint_representation(pair)
        kernel = cocycle_kernel(pair)
        for _ in range(5):
            z = rand_cocycle(rng, kernel, pair.dim, 2, pair.dim)
            d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
            ob = lp.obstruction(pair, d)
            prim = lp.is_coboundary(ob, pair, ad)
            result = lp.extend_deformation(pair, d)
            assert (result is None) == (prim is None)
            if result is not None:
                terms, extended = result
                assert extended.order == 2
                assert lp.check_deformation(pair, extended).ok
                assert lp.lieder_partial(terms, pair, ad).flatten() == ob.flatten()


def test_every_cocycle_extends_when_h3_vanishes():
    # the pair complex of sl2 with ad_h has vanishing degree-3 cohomology
    pair = sl2()
    ad = lp.adjoint_representation(pair)
    assert lp.lieder_cohomology(pair, ad, 3, representatives=False).dim_h == 0
    rng = random.Random(30)
    kernel = cocycle_kernel(pair)
    for _ in range(8):
        z = rand_cocycle(rng, kernel, 3, 2, 3)
        d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
        assert lp.extend_deformation(pair, d) is not None


def test_pulled_back_trivial_always_extends():
    rng = random.Random(31)
    for _, pair in standard_pairs():
        iso = rand_formal_iso(rng, pair.dim, 1)
        d = lp.apply_iso(pair, lp.TruncatedDeformation.trivial(pair, 1), iso)
        assert lp.extend_deformation(pair, d) is not None


def test_obstructed_deformation_on_abelian_base():
    # on the abelian pair every (omega1, phi1) is a valid order-1 deformation,
    # and extension demands the obstruction vanish outright (all operators zero)
    pair = abelian2()
    w1 = lp.Cochain.zero(2, 2, 2)
    w1.set_value((0, 1), [1, 0])  # omega1(e1, e2) = e1
    phi1 = lp.Cochain.zero(2, 1, 2)
    phi1.set_value((0,), [0, 1])  # phi1(e1) = e2
    d = lp.TruncatedDeformation.from_terms(pair, [w1], [phi1])
    assert lp.check_deformation(pair, d).ok
    ob = lp.obstruction(pair, d)
    assert not ob.is_zero()
    assert lp.extend_deformation(pair, d) is None


def test_trivialize_identity_and_pullbacks():
    rng = random.Random(32)
    for _, pair in standard_pairs():
        triv = lp.TruncatedDeformation.trivial(pair, 2)
        iso = lp.trivialize(pair, triv)
        assert iso is not None and iso.terms == lp.FormalIso.identity(pair.dim, 2).terms
        scrambled = lp.apply_iso(pair, triv, rand_formal_iso(rng, pair.dim, 2))
        rec = lp.trivialize(pair, scrambled)
        assert rec is not None
        flattened = lp.apply_iso(pair, scrambled, rec)
        assert all(flattened.term(k).is_zero() for k in range(1, 3))


def test_trivialize_blocks_on_nontrivial_class():
    pair = sl2()
    ad = lp.adjoint_representation(pair)
    report = lp.lieder_cohomology(pair, ad, 2)
    assert report.dim_h >= 1
    z = report.representatives[0]
    d = lp.TruncatedDeformation.from_terms(pair, [z.f], [z.g])
    iso, blocker = lp.trivialize_report(pair, d)
    assert iso is None
    order, term = blocker
    assert order == 1
    assert lp.is_coboundary(term.scale(-1), pair, ad) is None


def test_formal_iso_basics():
    with pytest.raises(ValueError):
        lp.FormalIso([Matrix.zeros(2, 2)])
    iso = rand_formal_iso(random.Random(33), 3, 3)
    inv = iso.inverse()
    assert iso.compose(inv).terms == lp.FormalIso.identity(3, 3).terms
    assert inv.compose(iso).terms == lp.FormalIso.identity(3, 3).terms
    assert iso.truncate(1).order == 1
