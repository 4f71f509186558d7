"""Lie algebras given by structure constants, derivations, and their pairing.

Conventions used throughout the package:

* basis indices are 0-based internally (file formats are 1-based);
* structure constants are stored only for i < j, so antisymmetry holds by
  construction; ``[e_i, e_j] = sum_k c[(i,j)][k] e_k``;
* a linear map is a matrix whose column j holds the coordinates of the image
  of e_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix, rat, vec_add, vec_is_zero, vec_scale, zero_vec


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance: which law, at which basis tuple."""

    law: str
    location: tuple
    detail: str = ""

    def to_json(self):
        return {"law": self.law, "location": [i + 1 for i in self.location], "detail": self.detail}


@dataclass
class Report:
    """Outcome of an exact verification; lists every violation, not just the first."""

    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, location: tuple, detail: str = ""):
        self.violations.append(Violation(law, location, detail))

    def to_json(self):
        return {"ok": self.ok, "violations": [v.to_json() for v in self.violations]}

    def __repr__(self):
        if self.ok:
            return "Report(ok)"
        return f"Report({len(self.violations)} violations: {self.violations[:3]}...)"


class LieAlgebra:
    """A finite-dimensional algebra with an antisymmetric bracket.

    The Jacobi identity is *not* assumed at construction; run
    :func:`verify_lie` to check it.
    """

    def __init__(self, dim: int, brackets=None, basis_names=None):
        self.dim = dim
        self.basis_names = list(basis_names) if basis_names else [f"e{i+1}" for i in range(dim)]
        if len(self.basis_names) != dim:
            raise ValueError("basis name count does not match dim")
        self.c = {}
        for (i, j), comps in (brackets or {}).items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            row = {k: rat(v) for k, v in comps.items() if rat(v) != 0}
            for k in row:
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index {k} out of range")
            if row:
                self.c[(i, j)] = row

    def bracket_basis(self, i: int, j: int):
        """Coordinates of [e_i, e_j], for any i, j."""
        if i == j:
            return zero_vec(self.dim)
        sign = 1
        if i > j:
            i, j = j, i
            sign = -1
        out = zero_vec(self.dim)
        for k, v in self.c.get((i, j), {}).items():
            out[k] = sign * v
        return out

    def bracket(self, x, y):
        """Bilinear extension of the bracket to coordinate vectors."""
        out = zero_vec(self.dim)
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0 or i == j:
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.bracket_basis(i, j)))
        return out

    def ad(self, i: int) -> Matrix:
        """Matrix of ad_{e_i}: column j = [e_i, e_j]."""
        cols = [self.bracket_basis(i, j) for j in range(self.dim)]
        return Matrix.from_columns(cols, rows=self.dim)

    def is_abelian(self) -> bool:
        return not self.c

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.c == other.c


class Derivation:
    """A candidate derivation, stored as its matrix (column j = image of e_j)."""

    def __init__(self, matrix: Matrix):
        if matrix.rows != matrix.cols:
            raise ValueError("a derivation matrix must be square")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, x):
        return self.matrix.apply(x)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.matrix == other.matrix


class LieDerPair:
    """A Lie algebra together with a derivation of it."""

    def __init__(self, algebra: LieAlgebra, derivation: Derivation, check: bool = True):
        if algebra.dim != derivation.dim:
            raise ValueError("derivation size does not match algebra dimension")
        self.algebra = algebra
        self.derivation = derivation
        if check:
            rep = verify_lie(algebra)
            if not rep.ok:
                raise ValueError(f"bracket violates the Jacobi identity: {rep.violations}")
            rep = verify_derivation(algebra, derivation)
            if not rep.ok:
                raise ValueError(f"map violates the Leibniz rule: {rep.violations}")

    @property
    def dim(self) -> int:
        return self.algebra.dim


class LieDerRepresentation:
    """An action rho on V plus an endomorphism of V compatible with the pair.

    Compatibility means phi_V . rho(x) = rho(phi_g(x)) + rho(x) . phi_V for
    every x; see :func:`verify_representation`.
    """

    def __init__(self, dim_v: int, rho: list, phi_v: Matrix):
        self.dim_v = dim_v
        self.rho = list(rho)
        self.phi_v = phi_v
        for m in self.rho:
            if m.rows != dim_v or m.cols != dim_v:
                raise ValueError("each rho(e_i) must be dimV x dimV")
        if phi_v.rows != dim_v or phi_v.cols != dim_v:
            raise ValueError("phi_V must be dimV x dimV")

    @property
    def g_dim(self) -> int:
        return len(self.rho)

    def rho_of(self, x) -> Matrix:
        """rho extended linearly to a coordinate vector x."""
        out = Matrix.zeros(self.dim_v, self.dim_v)
        for i, xi in enumerate(x):
            if xi != 0:
                out = out + self.rho[i].scale(xi)
        return out

    def act(self, x, u):
        """rho(x)(u) for coordinate vectors x in g, u in V."""
        return self.rho_of(x).apply(u)

    def is_trivial(self) -> bool:
        return all(m.is_zero() for m in self.rho)


def verify_lie(a: LieAlgebra) -> Report:
    """Check the Jacobi identity on all increasing basis triples."""
    report = Report()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            for k in range(j + 1, a.dim):
                ei, ej, ek = a.bracket_basis(i, j), a.bracket_basis(j, k), a.bracket_basis(k, i)
                total = vec_add(
                    vec_add(a.bracket(ei, _basis(a.dim, k)), a.bracket(ej, _basis(a.dim, i))),
                    a.bracket(ek, _basis(a.dim, j)),
                )
                if not vec_is_zero(total):
                    report.add("jacobi", (i, j, k))
    return report


def verify_derivation(a: LieAlgebra, d: Derivation) -> Report:
    """Check the Leibniz rule d[x,y] = [dx,y] + [x,dy] on all basis pairs."""
    if a.dim != d.dim:
        raise ValueError("derivation size does not match algebra dimension")
    report = Report()
    for i in range(a.dim):
        di = d.matrix.column(i)
        for j in range(i + 1, a.dim):
            dj = d.matrix.column(j)
            lhs = d(a.bracket_basis(i, j))
            rhs = vec_add(a.bracket(di, _basis(a.dim, j)), a.bracket(_basis(a.dim, i), dj))
            if lhs != rhs:
                report.add("leibniz", (i, j))
    return report


def verify_representation(p: LieDerPair, r: LieDerRepresentation) -> Report:
    """Check that rho is a morphism and satisfies the phi-compatibility law."""
    a = p.algebra
    if r.g_dim != a.dim:
        raise ValueError("representation has the wrong number of rho matrices")
    report = Report()
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            lhs = r.rho_of(a.bracket_basis(i, j))
            rhs = r.rho[i] * r.rho[j] - r.rho[j] * r.rho[i]
            if lhs != rhs:
                report.add("morphism", (i, j))
    phi = p.derivation.matrix
    for i in range(a.dim):
        lhs = r.phi_v * r.rho[i]
        rhs = r.rho_of(phi.column(i)) + r.rho[i] * r.phi_v
        if lhs != rhs:
            report.add("phi-compatibility", (i,))
    return report


def adjoint_representation(p: LieDerPair) -> LieDerRepresentation:
    """The action of g on itself by the bracket, with phi_V = phi_g."""
    a = p.algebra
    return LieDerRepresentation(a.dim, [a.ad(i) for i in range(a.dim)], p.derivation.matrix)


def trivial_representation(g_dim: int, dim_v: int, phi_v: Matrix | None = None) -> LieDerRepresentation:
    """rho = 0 on V; any phi_V is compatible."""
    if phi_v is None:
        phi_v = Matrix.zeros(dim_v, dim_v)
    return LieDerRepresentation(dim_v, [Matrix.zeros(dim_v, dim_v) for _ in range(g_dim)], phi_v)


def semidirect_product(p: LieDerPair, r: LieDerRepresentation) -> LieDerPair:
    """The pair on g + V with bracket [x+u, y+v] = [x,y] + rho(x)v - rho(y)u
    and derivation phi_g + phi_V.

    Raises ValueError if r does not verify against p.
    """
    check = verify_representation(p, r)
    if not check.ok:
        raise ValueError(f"representation does not verify: {check.violations}")
    a = p.algebra
    n, m = a.dim, r.dim_v
    brackets = {}
    for (i, j), comps in a.c.items():
        brackets[(i, j)] = dict(comps)
    for i in range(n):
        rho_i = r.rho[i]
        for b in range(m):
            col = rho_i.column(b)
            entries = {n + k: v for k, v in enumerate(col) if v != 0}
            if entries:
                brackets[(i, n + b)] = entries
    names = a.basis_names + [f"v{b+1}" for b in range(m)]
    total = LieAlgebra(n + m, brackets, names)
    phi = Matrix.block(
        [
            [p.derivation.matrix, Matrix.zeros(n, m)],
            [Matrix.zeros(m, n), r.phi_v],
        ]
    )
    return LieDerPair(total, Derivation(phi))


def pair_morphism_report(m: Matrix, src: LieDerPair, dst: LieDerPair) -> Report:
    """Check that a linear map intertwines brackets and derivations."""
    if m.cols != src.dim or m.rows != dst.dim:
        raise ValueError("morphism shape does not match the two pairs")
    report = Report()
    for i in range(src.dim):
        for j in range(i + 1, src.dim):
            lhs = m.apply(src.algebra.bracket_basis(i, j))
            rhs = dst.algebra.bracket(m.column(i), m.column(j))
            if lhs != rhs:
                report.add("bracket-morphism", (i, j))
    if m * src.derivation.matrix != dst.derivation.matrix * m:
        report.add("derivation-intertwine", ())
    return report


def _basis(dim: int, i: int):
    v = zero_vec(dim)
    v[i] = rat(1)
    return v
