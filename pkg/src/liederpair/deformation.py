"""Truncated formal deformations of a pair (bracket, derivation).

A deformation of order n is a polynomial family omega_t = sum omega_i t^i,
phi_t = sum phi_i t^i with omega_0, phi_0 the base structure, satisfying the
coefficient equations of the Jacobi identity and the Leibniz rule through t^n.
Everything is truncated: series inverses and compositions are computed order
by order, never lazily.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import (
    Cochain,
    CochainPair,
    bracket_cochain,
    cochain_to_matrix,
    derivation_cochain,
    lieder_partial,
    matrix_to_cochain,
    nr_bracket,
)
from .cohomology import is_coboundary
from .core import LieDerPair, Report, adjoint_representation
from .linalg import Fraction, Matrix, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec


class TruncatedDeformation:
    """Arrays (omega_0..omega_n, phi_0..phi_n) of g-valued 2- and 1-cochains."""

    def __init__(self, pair: LieDerPair, omegas, phis):
        if len(omegas) != len(phis) or not omegas:
            raise ValueError("need matching omega and phi term lists")
        self.pair = pair
        self.order = len(omegas) - 1
        dim = pair.dim
        for w in omegas:
            if w.n != 2 or w.g_dim != dim or w.dim_v != dim:
                raise ValueError("omega terms must be g-valued 2-cochains")
        for f in phis:
            if f.n != 1 or f.g_dim != dim or f.dim_v != dim:
                raise ValueError("phi terms must be g-valued 1-cochains")
        if omegas[0] != bracket_cochain(pair) or phis[0] != derivation_cochain(pair):
            raise ValueError("order-0 terms must equal the base bracket and derivation")
        self.omegas = list(omegas)
        self.phis = list(phis)

    @classmethod
    def trivial(cls, pair: LieDerPair, order: int) -> "TruncatedDeformation":
        dim = pair.dim
        omegas = [bracket_cochain(pair)] + [Cochain.zero(dim, 2, dim) for _ in range(order)]
        phis = [derivation_cochain(pair)] + [Cochain.zero(dim, 1, dim) for _ in range(order)]
        return cls(pair, omegas, phis)

    @classmethod
    def from_terms(cls, pair: LieDerPair, higher_omegas, higher_phis) -> "TruncatedDeformation":
        """Build from the order >= 1 terms, supplying the base structure at 0."""
        return cls(
            pair,
            [bracket_cochain(pair)] + list(higher_omegas),
            [derivation_cochain(pair)] + list(higher_phis),
        )

    def term(self, i: int) -> CochainPair:
        return CochainPair(self.omegas[i], self.phis[i])

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedDeformation)
            and self.omegas == other.omegas
            and self.phis == other.phis
        )


class FormalIso:
    """A truncated power series of endomorphisms with constant term Id."""

    def __init__(self, terms):
        self.terms = list(terms)
        if not self.terms:
            raise ValueError("need at least the constant term")
        n = self.terms[0].rows
        if self.terms[0] != Matrix.identity(n):
            raise ValueError("a formal isomorphism starts at the identity")
        for t in self.terms:
            if t.rows != n or t.cols != n:
                raise ValueError("all terms must be square of the same size")

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @property
    def dim(self) -> int:
        return self.terms[0].rows

    @classmethod
    def identity(cls, dim: int, order: int) -> "FormalIso":
        return cls([Matrix.identity(dim)] + [Matrix.zeros(dim, dim) for _ in range(order)])

    @classmethod
    def single_term(cls, correction: Matrix, k: int, order: int) -> "FormalIso":
        """Id + correction * t^k, padded with zeros up to the given order."""
        dim = correction.rows
        terms = [Matrix.identity(dim)] + [Matrix.zeros(dim, dim) for _ in range(order)]
        if not 1 <= k <= order:
            raise ValueError("term index out of range")
        terms[k] = terms[k] + correction
        return cls(terms)

    def truncate(self, order: int) -> "FormalIso":
        dim = self.dim
        terms = self.terms[: order + 1]
        terms += [Matrix.zeros(dim, dim) for _ in range(order + 1 - len(terms))]
        return FormalIso(terms)

    def inverse(self) -> "FormalIso":
        """Truncated series inverse, solved order by order from Id."""
        dim, order = self.dim, self.order
        inv = [Matrix.identity(dim)]
        for k in range(1, order + 1):
            acc = Matrix.zeros(dim, dim)
            for j in range(1, k + 1):
                acc = acc + inv[k - j] * self.terms[j]
            inv.append(acc.scale(-1))
        return FormalIso(inv)

    def compose(self, other: "FormalIso") -> "FormalIso":
        """Series of self(other(x)); both truncated to the smaller order."""
        order = min(self.order, other.order)
        dim = self.dim
        terms = []
        for k in range(order + 1):
            acc = Matrix.zeros(dim, dim)
            for i in range(k + 1):
                acc = acc + self.terms[i] * other.terms[k - i]
            terms.append(acc)
        return FormalIso(terms)

    def __eq__(self, other):
        return isinstance(other, FormalIso) and self.terms == other.terms


@dataclass
class DeformationReport(Report):
    """Violations carry (equation, t-power, basis tuple)."""


def check_deformation(pair: LieDerPair, d: TruncatedDeformation) -> DeformationReport:
    """Verify the coefficient equations at every order 0..n on all basis tuples.

    Both defects are alternating in the basis arguments, so increasing tuples
    suffice.
    """
    if d.pair is not pair and (d.omegas[0] != bracket_cochain(pair) or d.phis[0] != derivation_cochain(pair)):
        raise ValueError("deformation does not start at this pair")
    dim = pair.dim
    report = DeformationReport()
    for i in range(d.order + 1):
        for a in range(dim):
            for b in range(a + 1, dim):
                for c in range(b + 1, dim):
                    if not vec_is_zero(_jacobi_defect(d, i, a, b, c)):
                        report.add("jacobi-coefficient", (a, b, c), detail=f"t^{i}")
        for a in range(dim):
            for b in range(a + 1, dim):
                if not vec_is_zero(_leibniz_defect(d, i, a, b)):
                    report.add("leibniz-coefficient", (a, b), detail=f"t^{i}")
    return report


def _pair_apply(w: Cochain, vec, c: int):
    """w(vec, e_c) for a 2-cochain w and a coordinate vector vec."""
    out = zero_vec(w.dim_v)
    for k, xk in enumerate(vec):
        if xk != 0:
            out = vec_add(out, vec_scale(xk, w.value_on_indices((k, c))))
    return out


def _jacobi_defect(d: TruncatedDeformation, i: int, a: int, b: int, c: int):
    dim = d.pair.dim
    acc = zero_vec(dim)
    for k in range(i + 1):
        wk, wl = d.omegas[k], d.omegas[i - k]
        acc = vec_add(acc, _pair_apply(wk, wl.value_on_indices((a, b)), c))
        acc = vec_add(acc, _pair_apply(wk, wl.value_on_indices((b, c)), a))
        acc = vec_add(acc, _pair_apply(wk, wl.value_on_indices((c, a)), b))
    return acc


def _leibniz_defect(d: TruncatedDeformation, i: int, a: int, b: int):
    dim = d.pair.dim
    acc = zero_vec(dim)
    for k in range(i + 1):
        fk, wl = d.phis[k], d.omegas[i - k]
        fmat = cochain_to_matrix(fk)
        acc = vec_add(acc, fmat.apply(wl.value_on_indices((a, b))))
        acc = vec_sub(acc, _pair_apply(wl, fmat.column(a), b))
        acc = vec_add(acc, _pair_apply(wl, fmat.column(b), a))  # -w(x, f y) = +w(f y, x)
    return acc


def infinitesimal(d: TruncatedDeformation) -> CochainPair:
    """The t^1 term (omega_1, phi_1); always a 2-cocycle for a valid deformation."""
    _require_valid(d)
    if d.order < 1:
        raise ValueError("an order-0 deformation has no infinitesimal")
    pair = d.pair
    out = CochainPair(d.omegas[1], d.phis[1])
    if not lieder_partial(out, pair, adjoint_representation(pair)).is_zero():
        raise AssertionError("valid deformation produced a non-closed infinitesimal")
    return out


def apply_iso(pair: LieDerPair, d: TruncatedDeformation, iso: FormalIso) -> TruncatedDeformation:
    """Pull a deformation back along a formal isomorphism.

    Returns (Phi^-1 . omega_t . (Phi x Phi), Phi^-1 . phi_t . Phi) truncated
    at the deformation's order; the result is again a valid deformation.
    """
    if iso.dim != pair.dim:
        raise ValueError("isomorphism dimension mismatch")
    if iso.order < d.order:
        raise ValueError("isomorphism must carry at least the deformation's order")
    order = d.order
    dim = pair.dim
    inv = iso.inverse()
    new_omegas = []
    for k in range(order + 1):
        w = Cochain.zero(dim, 2, dim)
        for pos, (i, j) in enumerate(w.basis.tuples):
            acc = zero_vec(dim)
            for a in range(k + 1):
                for b_ in range(k - a + 1):
                    for c in range(k - a - b_ + 1):
                        e = k - a - b_ - c
                        x = iso.terms[c].column(i)
                        y = iso.terms[e].column(j)
                        val = d.omegas[b_].evaluate([x, y])
                        if not vec_is_zero(val):
                            acc = vec_add(acc, inv.terms[a].apply(val))
            w.rows[pos] = acc
        new_omegas.append(w)
    new_phis = []
    for k in range(order + 1):
        m = Matrix.zeros(dim, dim)
        for a in range(k + 1):
            for b_ in range(k - a + 1):
                c = k - a - b_
                m = m + inv.terms[a] * cochain_to_matrix(d.phis[b_]) * iso.terms[c]
        new_phis.append(matrix_to_cochain(m))
    out = TruncatedDeformation(pair, new_omegas, new_phis)
    _require_valid(out)
    return out


def obstruction(pair: LieDerPair, d: TruncatedDeformation) -> CochainPair:
    """The degree-3 obstruction (Ob3, Ob2) to extending one order further.

    Computed by direct summation of the coefficient formulas; see
    :func:`obstruction_nr` for the graded-bracket route.  The result is
    always closed for a valid deformation (asserted).
    """
    _require_valid(d)
    dim = pair.dim
    n = d.order
    ob3 = Cochain.zero(dim, 3, dim)
    for pos, (a, b, c) in enumerate(ob3.basis.tuples):
        acc = zero_vec(dim)
        for i in range(1, n + 1):
            j = n + 1 - i
            if j < 1 or j > n:
                continue
            wi, wj = d.omegas[i], d.omegas[j]
            acc = vec_add(acc, _pair_apply(wi, wj.value_on_indices((a, b)), c))
            acc = vec_add(acc, _pair_apply(wi, wj.value_on_indices((b, c)), a))
            acc = vec_add(acc, _pair_apply(wi, wj.value_on_indices((c, a)), b))
        ob3.rows[pos] = acc
    ob2 = Cochain.zero(dim, 2, dim)
    for pos, (a, b) in enumerate(ob2.basis.tuples):
        acc = zero_vec(dim)
        for i in range(1, n + 1):
            j = n + 1 - i
            if j < 1 or j > n:
                continue
            fi, wj = d.phis[i], d.omegas[j]
            fmat = cochain_to_matrix(fi)
            acc = vec_add(acc, fmat.apply(wj.value_on_indices((a, b))))
            acc = vec_sub(acc, _pair_apply(wj, fmat.column(a), b))
            acc = vec_add(acc, _pair_apply(wj, fmat.column(b), a))
        ob2.rows[pos] = acc
    out = CochainPair(ob3, ob2)
    if not lieder_partial(out, pair, adjoint_representation(pair)).is_zero():
        raise AssertionError("obstruction of a valid deformation must be closed")
    return out


def obstruction_nr(pair: LieDerPair, d: TruncatedDeformation) -> CochainPair:
    """Obstruction via the graded bracket: (1/2 sum [w_i, w_j], sum [f_i, w_j])."""
    _require_valid(d)
    dim = pair.dim
    n = d.order
    ob3 = Cochain.zero(dim, 3, dim)
    ob2 = Cochain.zero(dim, 2, dim)
    for i in range(1, n + 1):
        j = n + 1 - i
        if j < 1 or j > n:
            continue
        ob3 = ob3 + nr_bracket(d.omegas[i], d.omegas[j]).scale(Fraction(1, 2))
        ob2 = ob2 + nr_bracket(d.phis[i], d.omegas[j])
    return CochainPair(ob3, ob2)


def extend_deformation(pair: LieDerPair, d: TruncatedDeformation):
    """One-step extension: a canonical (omega_{n+1}, phi_{n+1}) solving
    partial(terms) = obstruction, plus the extended deformation; None when the
    obstruction class is nonzero."""
    ob = obstruction(pair, d)
    primitive = is_coboundary(ob, pair, adjoint_representation(pair))
    if primitive is None:
        return None
    extended = TruncatedDeformation(
        pair, d.omegas + [primitive.f], d.phis + [primitive.g]
    )
    check = check_deformation(pair, extended)
    if not check.ok:
        raise AssertionError(f"extension produced an invalid deformation: {check.violations}")
    return primitive, extended


def trivialize(pair: LieDerPair, d: TruncatedDeformation, max_order: int | None = None):
    """Iteratively strip the lowest-order term with corrections Id + chi t^k.

    Returns a formal isomorphism F with apply_iso(pair, d, F) trivial through
    max_order (default: the deformation's order), or None as soon as some
    order's term is a nonzero cohomology class.
    """
    iso, _ = trivialize_report(pair, d, max_order)
    return iso


def trivialize_report(pair: LieDerPair, d: TruncatedDeformation, max_order: int | None = None):
    """Like :func:`trivialize`, but on failure also returns the blocking data.

    Returns (iso, None) on success, or (None, (order, term)) where term is
    the closed pair cochain at that order whose class is nonzero.
    """
    _require_valid(d)
    if max_order is None:
        max_order = d.order
    if max_order < d.order:
        raise ValueError("cannot trivialize below the deformation's own order")
    dim = pair.dim
    rep = adjoint_representation(pair)
    current = TruncatedDeformation(
        pair,
        d.omegas + [Cochain.zero(dim, 2, dim) for _ in range(max_order - d.order)],
        d.phis + [Cochain.zero(dim, 1, dim) for _ in range(max_order - d.order)],
    )
    total = FormalIso.identity(dim, max_order)
    for k in range(1, max_order + 1):
        term = current.term(k)
        if term.is_zero():
            continue
        primitive = is_coboundary(term.scale(-1), pair, rep)
        if primitive is None:
            return None, (k, term)
        correction = FormalIso.single_term(cochain_to_matrix(primitive.f), k, max_order)
        current = apply_iso(pair, current, correction)
        if not current.term(k).is_zero():
            raise AssertionError(f"correction failed to clear order {k}")
        total = total.compose(correction)
    return total, None


def _require_valid(d: TruncatedDeformation):
    check = check_deformation(d.pair, d)
    if not check.ok:
        raise ValueError(f"invalid deformation: {check.violations[:5]}")
