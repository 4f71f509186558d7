"""Skeletal 2-term homotopy Lie algebras with a degree-0 derivation, and
their correspondence with (pair, representation, 3-cocycle) triples.

Only skeletal structures (zero differential between the two levels) are
represented, so several axioms degenerate: the binary bracket on the degree-0
level must satisfy Jacobi, the mixed bracket is a representation, and the
ternary bracket is a 3-cocycle.  Round-tripping through triples hard-wires
the sign convention binary_derivation_term = -theta_2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochains import Cochain, CochainPair, lieder_partial
from .core import (
    Derivation,
    LieAlgebra,
    LieDerPair,
    LieDerRepresentation,
    Report,
    verify_derivation,
    verify_lie,
    verify_representation,
)
from .linalg import Matrix, rat, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec


class SkeletalLie2:
    """Levels V0, V1 with l2 on V0, a mixed action of V0 on V1, and l3.

    Antisymmetry of l2 and of the mixed bracket is structural: l2_00 and l3
    are alternating cochains, and l2(x, m) = -l2(m, x) is how the mixed
    values are defined.
    """

    def __init__(self, dim_v0: int, dim_v1: int, l2_00: Cochain, l2_01, l3: Cochain):
        if l2_00.n != 2 or l2_00.g_dim != dim_v0 or l2_00.dim_v != dim_v0:
            raise ValueError("l2_00 must be a 2-cochain on V0 with values in V0")
        if l3.n != 3 or l3.g_dim != dim_v0 or l3.dim_v != dim_v1:
            raise ValueError("l3 must be a 3-cochain on V0 with values in V1")
        self.dim_v0 = dim_v0
        self.dim_v1 = dim_v1
        self.l2_00 = l2_00
        self.l2_01 = list(l2_01)  # one dimV1 x dimV1 matrix per V0 basis vector
        if len(self.l2_01) != dim_v0 or any(
            m.rows != dim_v1 or m.cols != dim_v1 for m in self.l2_01
        ):
            raise ValueError("l2_01 must be dimV0 matrices of size dimV1 x dimV1")
        self.l3 = l3

    def mixed(self, x, u):
        """l2(x, u) for x in V0, u in V1 (coordinate vectors)."""
        out = zero_vec(self.dim_v1)
        for i, xi in enumerate(x):
            if xi != 0:
                out = vec_add(out, vec_scale(xi, self.l2_01[i].apply(u)))
        return out

    def bracket(self, x, y):
        return self.l2_00.evaluate([x, y])


class Lie2Derivation:
    """A degree-0 derivation datum (X0, X1, binary term on V0 wedge V0)."""

    def __init__(self, x0: Matrix, x1: Matrix, lx: Cochain):
        self.x0 = x0
        self.x1 = x1
        self.lx = lx
        if lx.n != 2:
            raise ValueError("the binary derivation term is a 2-cochain")
        if x0.rows != x0.cols or x1.rows != x1.cols:
            raise ValueError("X0 and X1 must be endomorphisms")
        if lx.g_dim != x0.rows or lx.dim_v != x1.rows:
            raise ValueError("binary term shape does not match X0/X1")


@dataclass
class Triple:
    """(pair, representation, closed degree-3 pair cochain)."""

    pair: LieDerPair
    rep: LieDerRepresentation
    cocycle: CochainPair

    def __post_init__(self):
        if self.cocycle.degree != 3:
            raise ValueError("the cocycle must be a degree-3 pair cochain")


def verify_skeletal(s: SkeletalLie2) -> Report:
    """Axioms of the underlying 2-term structure with zero differential.

    (a) is structural and (b) is vacuous here; (c) is Jacobi on V0, (d) the
    representation law of the mixed bracket, (e) the ternary cocycle law,
    checked literally on all basis tuples.
    """
    report = Report()
    n0, n1 = s.dim_v0, s.dim_v1
    for i in range(n0):
        for j in range(i + 1, n0):
            for k in range(j + 1, n0):
                x, y, z = _unit(n0, i), _unit(n0, j), _unit(n0, k)
                acc = s.bracket(x, s.bracket(y, z))
                acc = vec_add(acc, s.bracket(y, s.bracket(z, x)))
                acc = vec_add(acc, s.bracket(z, s.bracket(x, y)))
                if not vec_is_zero(acc):
                    report.add("(c)", (i, j, k))
    for i in range(n0):
        for j in range(i + 1, n0):
            x, y = _unit(n0, i), _unit(n0, j)
            for m in range(n1):
                u = _unit(n1, m)
                # l2(x,l2(y,m)) + l2(y,l2(m,x)) + l2(m,l2(x,y)) with the mixed
                # bracket antisymmetric and l2(m, x0-vector) = -mixed(x0, m)
                acc = s.mixed(x, s.mixed(y, u))
                acc = vec_sub(acc, s.mixed(y, s.mixed(x, u)))
                acc = vec_sub(acc, s.mixed(s.bracket(x, y), u))
                if not vec_is_zero(acc):
                    report.add("(d)", (i, j, m))
    for w in range(n0):
        for x in range(n0):
            for y in range(n0):
                for z in range(n0):
                    if not vec_is_zero(_axiom_e_defect(s, w, x, y, z)):
                        report.add("(e)", (w, x, y, z))
                        break
    return report


def _axiom_e_defect(s: SkeletalLie2, w: int, x: int, y: int, z: int):
    n0 = s.dim_v0
    ew, ex, ey, ez = (_unit(n0, t) for t in (w, x, y, z))
    l3 = s.l3.evaluate
    lhs = l3([s.bracket(ew, ex), ey, ez])
    lhs = vec_add(lhs, vec_scale(rat(-1), s.mixed(ey, l3([ew, ex, ez]))))
    lhs = vec_add(lhs, l3([ew, s.bracket(ex, ez), ey]))
    lhs = vec_add(lhs, l3([s.bracket(ew, ez), ex, ey]))
    rhs = vec_scale(rat(-1), s.mixed(ez, l3([ew, ex, ey])))
    rhs = vec_add(rhs, l3([s.bracket(ew, ey), ex, ez]))
    rhs = vec_add(rhs, l3([ew, s.bracket(ex, ey), ez]))
    rhs = vec_add(rhs, s.mixed(ew, l3([ex, ey, ez])))
    rhs = vec_add(rhs, vec_scale(rat(-1), s.mixed(ex, l3([ew, ey, ez]))))
    rhs = vec_add(rhs, l3([ew, s.bracket(ey, ez), ex]))
    return vec_sub(lhs, rhs)


def verify_lie2der(s: SkeletalLie2, d: Lie2Derivation) -> Report:
    """All structure axioms plus the derivation axioms; violations cite the
    axiom letter ((a)/(b) of the derivation are vacuous in the skeletal case
    apart from shape checks done at construction)."""
    report = verify_skeletal(s)
    if d.x0.rows != s.dim_v0 or d.x1.rows != s.dim_v1:
        raise ValueError("derivation endomorphism sizes do not match the levels")
    n0, n1 = s.dim_v0, s.dim_v1
    for i in range(n0):
        for j in range(i + 1, n0):
            x, y = _unit(n0, i), _unit(n0, j)
            # der (b): X0 l2(x,y) = l2(X0 x, y) + l2(x, X0 y)
            acc = d.x0.apply(s.bracket(x, y))
            acc = vec_sub(acc, s.bracket(d.x0.apply(x), y))
            acc = vec_sub(acc, s.bracket(x, d.x0.apply(y)))
            if not vec_is_zero(acc):
                report.add("der(b)", (i, j))
    for i in range(n0):
        x = _unit(n0, i)
        for m in range(n1):
            u = _unit(n1, m)
            # der (c): X1 l2(x,u) = l2(X0 x, u) + l2(x, X1 u)
            acc = d.x1.apply(s.mixed(x, u))
            acc = vec_sub(acc, s.mixed(d.x0.apply(x), u))
            acc = vec_sub(acc, s.mixed(x, d.x1.apply(u)))
            if not vec_is_zero(acc):
                report.add("der(c)", (i, m))
    for i in range(n0):
        for j in range(n0):
            for k in range(n0):
                if not vec_is_zero(_axiom_der_d_defect(s, d, i, j, k)):
                    report.add("der(d)", (i, j, k))
    return report


def _axiom_der_d_defect(s: SkeletalLie2, d: Lie2Derivation, i: int, j: int, k: int):
    n0 = s.dim_v0
    x, y, z = _unit(n0, i), _unit(n0, j), _unit(n0, k)
    lhs = d.x1.apply(s.l3.evaluate([x, y, z]))
    rhs = zero_vec(s.dim_v1)
    for (a, b, c) in ((x, y, z), (y, z, x), (z, x, y)):
        rhs = vec_add(rhs, d.lx.evaluate([a, s.bracket(b, c)]))
        rhs = vec_add(rhs, s.mixed(a, d.lx.evaluate([b, c])))
        rhs = vec_add(rhs, s.l3.evaluate([d.x0.apply(a), b, c]))
    return vec_sub(lhs, rhs)


def pair_to_triple(s: SkeletalLie2, d: Lie2Derivation) -> Triple:
    """Extract (pair, representation, cocycle) from a verified structure."""
    report = verify_lie2der(s, d)
    if not report.ok:
        raise ValueError(f"structure does not verify: {report.violations}")
    n0 = s.dim_v0
    brackets = {}
    for (i, j) in s.l2_00.basis.tuples:
        comps = {k: v for k, v in enumerate(s.l2_00.get((i, j))) if v != 0}
        if comps:
            brackets[(i, j)] = comps
    pair = LieDerPair(LieAlgebra(n0, brackets), Derivation(d.x0))
    rep = LieDerRepresentation(s.dim_v1, s.l2_01, d.x1)
    rep_check = verify_representation(pair, rep)
    if not rep_check.ok:
        raise AssertionError(f"verified structure produced a bad representation: {rep_check.violations}")
    cocycle = CochainPair(s.l3, d.lx.scale(-1))
    if not lieder_partial(cocycle, pair, rep).is_zero():
        raise AssertionError("verified structure produced a non-closed cocycle")
    return Triple(pair, rep, cocycle)


def triple_to_pair(t: Triple) -> tuple:
    """Build the skeletal structure and its derivation from a valid triple."""
    _require_valid_triple(t)
    a = t.pair.algebra
    n0, n1 = a.dim, t.rep.dim_v
    l2_00 = Cochain.zero(n0, 2, n0)
    for (i, j) in l2_00.basis.tuples:
        l2_00.set_value((i, j), a.bracket_basis(i, j))
    s = SkeletalLie2(n0, n1, l2_00, t.rep.rho, t.cocycle.f)
    d = Lie2Derivation(t.pair.derivation.matrix, t.rep.phi_v, t.cocycle.g.scale(-1))
    report = verify_lie2der(s, d)
    if not report.ok:
        raise AssertionError(f"valid triple produced a failing structure: {report.violations}")
    return s, d


def _require_valid_triple(t: Triple):
    for check, label in (
        (verify_lie(t.pair.algebra), "bracket"),
        (verify_derivation(t.pair.algebra, t.pair.derivation), "derivation"),
        (verify_representation(t.pair, t.rep), "representation"),
    ):
        if not check.ok:
            raise ValueError(f"invalid triple ({label}): {check.violations}")
    if not lieder_partial(t.cocycle, t.pair, t.rep).is_zero():
        raise ValueError("invalid triple: the degree-3 cochain is not closed")


@dataclass
class EquivalenceWitness:
    """Maps (alpha, beta, gamma, eta) asserted to relate two triples."""

    alpha: Matrix
    beta: Matrix
    gamma: Cochain
    eta: Matrix


def verify_equivalence_witness(t: Triple, t2: Triple, w: EquivalenceWitness) -> Report:
    """The five equivalence conditions, checked exactly on basis tuples.

    alpha and beta must be invertible (rank check) and alpha must be a
    bracket morphism; these are reported as conditions of their own.  The
    same data read as (chain maps, binary map gamma, homotopy eta) is a
    pair-of-structures isomorphism exactly when these conditions hold, so the
    report doubles as that check.
    """
    report = Report()
    a, a2 = t.pair.algebra, t2.pair.algebra
    n0, n1 = a.dim, t.rep.dim_v
    if w.alpha.rows != a2.dim or w.alpha.cols != n0:
        raise ValueError("alpha has the wrong shape")
    if w.beta.rows != t2.rep.dim_v or w.beta.cols != n1:
        raise ValueError("beta has the wrong shape")
    if not w.alpha.is_invertible():
        raise ValueError("alpha is singular")
    if not w.beta.is_invertible():
        raise ValueError("beta is singular")
    if w.gamma.n != 2 or w.gamma.g_dim != n0 or w.gamma.dim_v != t2.rep.dim_v:
        raise ValueError("gamma must be a 2-cochain on the source valued in the target fiber")
    if w.eta.rows != t2.rep.dim_v or w.eta.cols != n0:
        raise ValueError("eta has the wrong shape")

    for i in range(n0):
        for j in range(i + 1, n0):
            lhs = w.alpha.apply(a.bracket_basis(i, j))
            rhs = a2.bracket(w.alpha.column(i), w.alpha.column(j))
            if lhs != rhs:
                report.add("alpha-morphism", (i, j))
    if w.alpha * t.pair.derivation.matrix != t2.pair.derivation.matrix * w.alpha:
        report.add("(a)", ())
    if w.beta * t.rep.phi_v != t2.rep.phi_v * w.beta:
        report.add("(b)", ())
    for i in range(n0):
        lhs = w.beta * t.rep.rho[i]
        rhs = t2.rep.rho_of(w.alpha.column(i)) * w.beta
        if lhs != rhs:
            report.add("(c)", (i,))
    theta3, theta3_2 = t.cocycle.f, t2.cocycle.f
    theta2, theta2_2 = t.cocycle.g, t2.cocycle.g
    for i in range(n0):
        for j in range(i + 1, n0):
            for k in range(j + 1, n0):
                x, y, z = _unit(n0, i), _unit(n0, j), _unit(n0, k)
                ax, ay, az = w.alpha.column(i), w.alpha.column(j), w.alpha.column(k)
                lhs = t2.rep.act(ax, w.gamma.value_on_indices((j, k)))
                lhs = vec_add(lhs, t2.rep.act(ay, w.gamma.value_on_indices((k, i))))
                lhs = vec_add(lhs, t2.rep.act(az, w.gamma.value_on_indices((i, j))))
                lhs = vec_add(lhs, theta3_2.evaluate([ax, ay, az]))
                rhs = w.gamma.evaluate([a.bracket_basis(i, j), z])
                rhs = vec_add(rhs, w.gamma.evaluate([a.bracket_basis(j, k), x]))
                rhs = vec_add(rhs, w.gamma.evaluate([a.bracket_basis(k, i), y]))
                rhs = vec_add(rhs, w.beta.apply(theta3.value_on_indices((i, j, k))))
                if lhs != rhs:
                    report.add("(d)", (i, j, k))
    phi_g = t.pair.derivation.matrix
    for i in range(n0):
        for j in range(i + 1, n0):
            x, y = _unit(n0, i), _unit(n0, j)
            ax, ay = w.alpha.column(i), w.alpha.column(j)
            lhs = vec_scale(rat(-1), w.beta.apply(theta2.value_on_indices((i, j))))
            lhs = vec_add(lhs, w.gamma.evaluate([phi_g.column(i), y]))
            lhs = vec_add(lhs, w.gamma.evaluate([x, phi_g.column(j)]))
            lhs = vec_sub(lhs, t2.rep.phi_v.apply(w.gamma.value_on_indices((i, j))))
            lhs = vec_add(lhs, theta2_2.evaluate([ax, ay]))
            rhs = vec_scale(rat(-1), t2.rep.act(ay, w.eta.column(i)))
            rhs = vec_add(rhs, t2.rep.act(ax, w.eta.column(j)))
            rhs = vec_sub(rhs, w.eta.apply(a.bracket_basis(i, j)))
            if lhs != rhs:
                report.add("(e)", (i, j))
    return report


def _unit(dim: int, i: int):
    v = zero_vec(dim)
    v[i] = rat(1)
    return v
