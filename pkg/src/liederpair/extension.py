"""Central extensions of a pair, and lifting a pair of derivations.

A central extension is stored split: the total pair lives on a basis that is
partitioned by two index lists into a copy of the base and a copy of the
(abelian) fiber.  The projection kills the fiber positions, the inclusion is
the fiber block, and the canonical section is the base block.  Every
constructor re-verifies the defining properties exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import Cochain, CochainPair, ce_d
from .cohomology import CohomologyReport, ce_cohomology, d_matrix, lieder_cohomology
from .core import (
    Derivation,
    LieAlgebra,
    LieDerPair,
    Report,
    trivial_representation,
    verify_derivation,
)
from .linalg import Matrix, rat, vec_add, vec_is_zero, vec_scale, zero_vec


class CocycleConditionError(ValueError):
    """A (psi, chi) datum failed the closedness equations; carries the report."""

    def __init__(self, report: Report):
        self.report = report
        super().__init__(f"cocycle conditions violated: {report.violations}")


@dataclass
class CentralCocycle:
    """psi: a 2-cochain into the fiber; chi: a 1-cochain into the fiber."""

    psi: Cochain
    chi: Cochain

    def __post_init__(self):
        if self.psi.n != 2 or self.chi.n != 1:
            raise ValueError("central cocycle needs a 2-cochain and a 1-cochain")
        if self.psi.g_dim != self.chi.g_dim or self.psi.dim_v != self.chi.dim_v:
            raise ValueError("psi and chi must share source and target spaces")

    def as_pair(self) -> CochainPair:
        return CochainPair(self.psi, self.chi)

    @classmethod
    def from_pair(cls, cp: CochainPair) -> "CentralCocycle":
        if cp.degree != 2:
            raise ValueError("a central cocycle is a degree-2 pair cochain")
        return cls(cp.f, cp.g)


def verify_central_cocycle(base: LieDerPair, fiber_phi: Matrix, c: CentralCocycle) -> Report:
    """The two closedness equations for trivial coefficients.

    p1: psi([x,y],z) + psi([y,z],x) + psi([z,x],y) = 0;
    p2: chi([x,y]) + phi_h(psi(x,y)) - psi(phi_g x, y) - psi(x, phi_g y) = 0.
    """
    a = base.algebra
    phi_g = base.derivation.matrix
    report = Report()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            for k in range(j + 1, a.dim):
                acc = _apply2(c.psi, a.bracket_basis(i, j), _unit(a.dim, k))
                acc = vec_add(acc, _apply2(c.psi, a.bracket_basis(j, k), _unit(a.dim, i)))
                acc = vec_add(acc, _apply2(c.psi, a.bracket_basis(k, i), _unit(a.dim, j)))
                if not vec_is_zero(acc):
                    report.add("p1", (i, j, k))
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            acc = _chi_apply(c.chi, a.bracket_basis(i, j))
            acc = vec_add(acc, fiber_phi.apply(c.psi.value_on_indices((i, j))))
            acc = [x - y for x, y in zip(acc, _apply2(c.psi, phi_g.column(i), _unit(a.dim, j)))]
            acc = [x - y for x, y in zip(acc, _apply2(c.psi, _unit(a.dim, i), phi_g.column(j)))]
            if not vec_is_zero(acc):
                report.add("p2", (i, j))
    return report


class CentralExtension:
    """Total pair with the split bookkeeping; invariants checked at build."""

    def __init__(
        self,
        total: LieDerPair,
        base: LieDerPair,
        fiber_phi: Matrix,
        base_positions,
        fiber_positions,
        check: bool = True,
    ):
        self.total = total
        self.base = base
        self.fiber_phi = fiber_phi
        self.base_positions = list(base_positions)
        self.fiber_positions = list(fiber_positions)
        if sorted(self.base_positions + self.fiber_positions) != list(range(total.dim)):
            raise ValueError("index lists must partition the total basis")
        if len(self.base_positions) != base.dim or len(self.fiber_positions) != fiber_phi.rows:
            raise ValueError("index list lengths do not match base/fiber dimensions")
        if check:
            report = verify_central_extension(self)
            if not report.ok:
                raise ValueError(f"not a central extension: {report.violations}")

    @property
    def dim_h(self) -> int:
        return len(self.fiber_positions)

    def projection(self) -> Matrix:
        p = Matrix.zeros(self.base.dim, self.total.dim)
        for i, q in enumerate(self.base_positions):
            p.data[i][q] = rat(1)
        return p

    def inclusion(self) -> Matrix:
        inc = Matrix.zeros(self.total.dim, self.dim_h)
        for j, q in enumerate(self.fiber_positions):
            inc.data[q][j] = rat(1)
        return inc

    def canonical_section(self) -> Matrix:
        s = Matrix.zeros(self.total.dim, self.base.dim)
        for i, q in enumerate(self.base_positions):
            s.data[q][i] = rat(1)
        return s

    def fiber_coordinates(self, v):
        """Coordinates of a total vector lying in the fiber; error otherwise."""
        for i, q in enumerate(self.base_positions):
            if v[q] != 0:
                raise ValueError("vector does not lie in the fiber")
        return [v[q] for q in self.fiber_positions]


def verify_central_extension(e: CentralExtension) -> Report:
    """Centrality of the fiber, the derivation restriction, and that the
    projection is a pair morphism."""
    from .core import pair_morphism_report

    report = Report()
    total = e.total
    for q in e.fiber_positions:
        for r in range(total.dim):
            if not vec_is_zero(total.algebra.bracket_basis(q, r)):
                report.add("centrality", (q, r))
    inc = e.inclusion()
    if total.derivation.matrix * inc != inc * e.fiber_phi:
        report.add("fiber-derivation", ())
    proj = pair_morphism_report(e.projection(), total, e.base)
    report.violations.extend(proj.violations)
    return report


def build_central_extension(base: LieDerPair, fiber_phi: Matrix, c: CentralCocycle) -> CentralExtension:
    """The pair on base + fiber with bracket twisted by psi and derivation
    twisted by chi.  Raises CocycleConditionError unless (psi, chi) is closed."""
    if c.psi.g_dim != base.dim or c.psi.dim_v != fiber_phi.rows:
        raise ValueError("cocycle shapes do not match base and fiber")
    report = verify_central_cocycle(base, fiber_phi, c)
    if not report.ok:
        raise CocycleConditionError(report)
    n, m = base.dim, fiber_phi.rows
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            val = dict(base.algebra.c.get((i, j), {}))
            for k, x in enumerate(c.psi.get((i, j))):
                if x != 0:
                    val[n + k] = x
            if val:
                brackets[(i, j)] = val
    names = base.algebra.basis_names + [f"h{k+1}" for k in range(m)]
    total_algebra = LieAlgebra(n + m, brackets, names)
    chi_cols = Matrix.from_columns([c.chi.get((j,)) for j in range(n)], rows=m)
    phi_total = Matrix.block(
        [
            [base.derivation.matrix, Matrix.zeros(n, m)],
            [chi_cols, fiber_phi],
        ]
    )
    total = LieDerPair(total_algebra, Derivation(phi_total))
    return CentralExtension(total, base, fiber_phi, range(n), range(n, n + m))


def build_lie_central_extension(base_algebra: LieAlgebra, dim_h: int, psi: Cochain) -> CentralExtension:
    """A central extension of plain Lie algebras from a CE 2-cocycle psi with
    trivial coefficients; all derivations are set to zero."""
    zero_der = Derivation(Matrix.zeros(base_algebra.dim, base_algebra.dim))
    base = LieDerPair(base_algebra, zero_der)
    chi = Cochain.zero(base_algebra.dim, 1, dim_h)
    c = CentralCocycle(psi, chi)
    report = verify_central_cocycle(base, Matrix.zeros(dim_h, dim_h), c)
    if not report.ok:
        raise CocycleConditionError(report)
    return build_central_extension(base, Matrix.zeros(dim_h, dim_h), c)


def section_to_cocycle(e: CentralExtension, s: Matrix) -> CentralCocycle:
    """The cocycle measured by a section: psi = [s., s.] - s[.,.] and
    chi = phi_total . s - s . phi_g, both valued in the fiber."""
    if s.rows != e.total.dim or s.cols != e.base.dim:
        raise ValueError("a section maps the base into the total space")
    if e.projection() * s != Matrix.identity(e.base.dim):
        raise ValueError("not a section: projection composed with it is not the identity")
    n = e.base.dim
    psi = Cochain.zero(n, 2, e.dim_h)
    for (i, j) in psi.basis.tuples:
        lifted = e.total.algebra.bracket(s.column(i), s.column(j))
        straight = s.apply(e.base.algebra.bracket_basis(i, j))
        psi.set_value((i, j), e.fiber_coordinates([a - b for a, b in zip(lifted, straight)]))
    chi = Cochain.zero(n, 1, e.dim_h)
    for j in range(n):
        lifted = e.total.derivation.matrix.apply(s.column(j))
        straight = s.apply(e.base.derivation.matrix.column(j))
        chi.set_value((j,), e.fiber_coordinates([a - b for a, b in zip(lifted, straight)]))
    return CentralCocycle(psi, chi)


def classify_central_extensions(base: LieDerPair, dim_h: int, fiber_phi: Matrix) -> CohomologyReport:
    """Degree-2 pair cohomology with the trivial action on the fiber; each
    representative feeds build_central_extension."""
    rep = trivial_representation(base.dim, dim_h, fiber_phi)
    return lieder_cohomology(base, rep, 2)


# -- lifting a pair of derivations (plain Lie extensions) ---------------------


def theta_apply(psi: Cochain, phi_h: Matrix, phi_g: Matrix) -> Cochain:
    """phi_h . psi - psi(phi_g x, y) - psi(x, phi_g y), re-alternated."""
    out = Cochain.zero(psi.g_dim, 2, psi.dim_v)
    for pos, (i, j) in enumerate(out.basis.tuples):
        acc = phi_h.apply(psi.rows[psi.basis.index((i, j))])
        acc = [x - y for x, y in zip(acc, _apply2(psi, phi_g.column(i), _unit(psi.g_dim, j)))]
        acc = [x - y for x, y in zip(acc, _apply2(psi, _unit(psi.g_dim, i), phi_g.column(j)))]
        out.rows[pos] = acc
    return out


def derivation_pair_obstruction(
    e: CentralExtension, phi_h: Matrix, phi_g: Matrix, s: Matrix | None = None
) -> Cochain:
    """The 2-cochain whose class obstructs lifting (phi_h, phi_g); always a
    CE cocycle with trivial coefficients (asserted)."""
    _check_derivation_pair(e, phi_h, phi_g)
    if s is None:
        s = e.canonical_section()
    psi = section_to_cocycle(e, s).psi
    ob = theta_apply(psi, phi_h, phi_g)
    if not _ce_trivial_d(e.base.algebra, ob).is_zero():
        raise AssertionError("obstruction cochain must be closed")
    return ob


def extend_derivation_pair(e: CentralExtension, phi_h: Matrix, phi_g: Matrix):
    """A total derivation restricting to phi_h and covering phi_g, or None.

    The lift is phi(s x + h) = s(phi_g x) + lambda(x) + phi_h(h) for a
    canonical primitive lambda of the obstruction; both intertwining squares
    are re-verified before returning.
    """
    _check_derivation_pair(e, phi_h, phi_g)
    ob = derivation_pair_obstruction(e, phi_h, phi_g)
    rep = trivial_representation(e.base.dim, e.dim_h)
    dummy = LieDerPair(e.base.algebra, Derivation(Matrix.zeros(e.base.dim, e.base.dim)), check=False)
    lam_flat = d_matrix(dummy, rep, 1).solve(ob.flatten())
    if lam_flat is None:
        return None
    lam = Cochain.from_flat(e.base.dim, 1, e.dim_h, lam_flat)
    s = e.canonical_section()
    inc = e.inclusion()
    phi_total = Matrix.zeros(e.total.dim, e.total.dim)
    for i, q in enumerate(e.base_positions):
        col = vec_add(s.apply(phi_g.column(i)), inc.apply(lam.get((i,))))
        for r in range(e.total.dim):
            phi_total.data[r][q] = col[r]
    for j, q in enumerate(e.fiber_positions):
        col = inc.apply(phi_h.column(j))
        for r in range(e.total.dim):
            phi_total.data[r][q] = col[r]
    check = verify_derivation(e.total.algebra, Derivation(phi_total))
    if not check.ok:
        raise AssertionError(f"constructed lift is not a derivation: {check.violations}")
    if phi_total * inc != inc * phi_h or e.projection() * phi_total != phi_g * e.projection():
        raise AssertionError("constructed lift does not make the squares commute")
    return phi_total


@dataclass
class ThetaMap:
    """The induced action on degree-2 classes, in the canonical basis."""

    matrix: Matrix
    h2: CohomologyReport

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def theta_map(base_algebra: LieAlgebra, dim_h: int, phi_h: Matrix, phi_g: Matrix) -> ThetaMap:
    """Matrix of [psi] -> [phi_h.psi - psi(phi_g x,y) - psi(x,phi_g y)] on the
    degree-2 classes with trivial coefficients.

    Well-definedness is checked mechanically: images of basis coboundaries are
    verified to be coboundaries.
    """
    check = verify_derivation(base_algebra, Derivation(phi_g))
    if not check.ok:
        raise ValueError(f"phi_g is not a derivation of the base: {check.violations}")
    rep = trivial_representation(base_algebra.dim, dim_h)
    dummy = LieDerPair(base_algebra, Derivation(Matrix.zeros(base_algebra.dim, base_algebra.dim)), check=False)
    h2 = ce_cohomology(base_algebra, rep, 2)
    d1 = d_matrix(dummy, rep, 1)
    boundary_cols = [d1.column(j) for j in range(d1.cols)]
    for j in range(d1.cols):
        image = theta_apply(Cochain.from_flat(base_algebra.dim, 2, dim_h, d1.column(j)), phi_h, phi_g)
        if d1.solve(image.flatten()) is None:
            raise AssertionError("a coboundary mapped outside the coboundaries")
    r = len(h2.representatives)
    rows = len(h2.representatives[0].flatten()) if r else d1.rows
    span = Matrix.from_columns([rep_.flatten() for rep_ in h2.representatives] + boundary_cols, rows=rows)
    cols = []
    for rep_ in h2.representatives:
        image = theta_apply(rep_, phi_h, phi_g)
        x = span.solve(image.flatten())
        if x is None:
            raise AssertionError("image of a closed class is not closed")
        cols.append(x[:r])
    return ThetaMap(Matrix.from_columns(cols, rows=r), h2)


def _check_derivation_pair(e: CentralExtension, phi_h: Matrix, phi_g: Matrix):
    if phi_h.rows != e.dim_h or phi_h.cols != e.dim_h:
        raise ValueError("phi_h must be an endomorphism of the fiber")
    check = verify_derivation(e.base.algebra, Derivation(phi_g))
    if not check.ok:
        raise ValueError(f"phi_g is not a derivation of the base: {check.violations}")
    # any endomorphism is a derivation of the abelian fiber; only shapes to check


def _ce_trivial_d(algebra: LieAlgebra, f: Cochain) -> Cochain:
    dummy = LieDerPair(algebra, Derivation(Matrix.zeros(algebra.dim, algebra.dim)), check=False)
    rep = trivial_representation(algebra.dim, f.dim_v)
    return ce_d(f, dummy, rep)


def _apply2(w: Cochain, x, y):
    """w(x, y) for coordinate vectors; bilinear alternating."""
    out = zero_vec(w.dim_v)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj != 0 and i != j:
                out = vec_add(out, vec_scale(xi * yj, w.value_on_indices((i, j))))
    return out


def _chi_apply(chi: Cochain, x):
    out = zero_vec(chi.dim_v)
    for i, xi in enumerate(x):
        if xi != 0:
            out = vec_add(out, vec_scale(xi, chi.get((i,))))
    return out


def _unit(dim: int, i: int):
    v = zero_vec(dim)
    v[i] = rat(1)
    return v
