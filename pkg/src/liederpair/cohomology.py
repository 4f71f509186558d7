"""Coboundary matrices and exact cohomology of the pair complex and the
plain Chevalley-Eilenberg complex.

Coordinates on the pair space C^n are the flattened f-part followed by the
flattened g-part, so the differential is the block matrix
``[[D_n, 0], [(-1)^n Delta_n, D_{n-1}]]``.  All dimensions come from exact
rank computations; representatives are kernel basis vectors greedily filtered
against the coboundary column space, which makes every report reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cochains import Cochain, CochainPair, ce_d, delta_op, lieder_partial
from .core import Derivation, LieDerPair, LieDerRepresentation
from .linalg import Matrix


class NotACocycleError(ValueError):
    """Raised when an operation requires a cocycle and the input is not one."""


def plain_dim(g_dim: int, dim_v: int, n: int) -> int:
    return comb(g_dim, n) * dim_v if n >= 0 else 0


def lieder_dim(g_dim: int, dim_v: int, n: int) -> int:
    if n <= 0:
        return 0
    if n == 1:
        return plain_dim(g_dim, dim_v, 1)
    return plain_dim(g_dim, dim_v, n) + plain_dim(g_dim, dim_v, n - 1)


def _basis_cochain(g_dim: int, n: int, dim_v: int, flat_index: int) -> Cochain:
    c = Cochain.zero(g_dim, n, dim_v)
    pos, v = divmod(flat_index, dim_v)
    c.rows[pos][v] = 1
    return c


def d_matrix(pair: LieDerPair, rep: LieDerRepresentation, n: int) -> Matrix:
    """Matrix of the CE differential C^n -> C^{n+1}."""
    src = plain_dim(pair.dim, rep.dim_v, n)
    tgt = plain_dim(pair.dim, rep.dim_v, n + 1)
    cols = [ce_d(_basis_cochain(pair.dim, n, rep.dim_v, k), pair, rep).flatten() for k in range(src)]
    return Matrix.from_columns(cols, rows=tgt)


def delta_matrix(pair: LieDerPair, rep: LieDerRepresentation, n: int) -> Matrix:
    """Matrix of the derivation-insertion operator on C^n (square)."""
    src = plain_dim(pair.dim, rep.dim_v, n)
    cols = [delta_op(_basis_cochain(pair.dim, n, rep.dim_v, k), pair, rep).flatten() for k in range(src)]
    return Matrix.from_columns(cols, rows=src)


def partial_matrix(pair: LieDerPair, rep: LieDerRepresentation, n: int) -> Matrix:
    """Matrix of the pair differential C^n -> C^{n+1}, n >= 1."""
    if n < 1:
        raise ValueError("the pair complex starts at degree 1")
    g_dim, dim_v = pair.dim, rep.dim_v
    dn = d_matrix(pair, rep, n)
    deltan = delta_matrix(pair, rep, n)
    sign = 1 if n % 2 == 0 else -1
    if n == 1:
        return dn.vstack(deltan.scale(sign))
    dn1 = d_matrix(pair, rep, n - 1)
    zero = Matrix.zeros(plain_dim(g_dim, dim_v, n + 1), plain_dim(g_dim, dim_v, n - 1))
    return Matrix.block([[dn, zero], [deltan.scale(sign), dn1]])


@dataclass
class CohomologyReport:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_h: int
    representatives: list = field(default_factory=list)

    def to_json(self, include_representatives=None):
        from .io import cochain_pair_to_json, cochain_to_json

        out = {
            "degree": self.degree,
            "dim_cochains": self.dim_cochains,
            "dim_cocycles": self.dim_cocycles,
            "dim_coboundaries": self.dim_coboundaries,
            "dim_H": self.dim_h,
        }
        if include_representatives or (include_representatives is None and self.representatives):
            reps = []
            for r in self.representatives:
                reps.append(cochain_pair_to_json(r) if isinstance(r, CochainPair) else cochain_to_json(r))
            out["representatives"] = reps
        return out


def _pick_representatives(kernel, boundary_cols, dim_h, unflatten):
    """Greedy filter: keep kernel vectors that grow the span of the boundaries."""
    reps = []
    chosen = list(boundary_cols)
    if not kernel:
        return reps
    rows = len(kernel[0])
    current = Matrix.from_columns(chosen, rows=rows).rank() if chosen else 0
    for z in kernel:
        if len(reps) == dim_h:
            break
        r = Matrix.from_columns(chosen + [z], rows=rows).rank()
        if r > current:
            chosen.append(z)
            current = r
            reps.append(unflatten(z))
    return reps


def lieder_cohomology(
    pair: LieDerPair, rep: LieDerRepresentation, n: int, representatives: bool = True
) -> CohomologyReport:
    """Exact cohomology of the pair complex in degree n.

    Degree 0 returns the zero group (the complex has no 0-cochains by
    convention), and degree 1 has no coboundaries.
    """
    g_dim, dim_v = pair.dim, rep.dim_v
    if n <= 0:
        return CohomologyReport(n, 0, 0, 0, 0)
    dim_c = lieder_dim(g_dim, dim_v, n)
    mat = partial_matrix(pair, rep, n)
    kernel = mat.kernel_basis()
    dim_z = len(kernel)
    if n == 1:
        boundary_cols = []
        dim_b = 0
    else:
        prev = partial_matrix(pair, rep, n - 1)
        boundary_cols = [prev.column(j) for j in range(prev.cols)]
        dim_b = prev.rank()
    dim_h = dim_z - dim_b
    reps = []
    if representatives:
        reps = _pick_representatives(
            kernel, boundary_cols, dim_h, lambda z: CochainPair.from_flat(g_dim, n, dim_v, z)
        )
    return CohomologyReport(n, dim_c, dim_z, dim_b, dim_h, reps)


def ce_cohomology(algebra, rep: LieDerRepresentation, n: int, representatives: bool = True) -> CohomologyReport:
    """Classical Chevalley-Eilenberg cohomology of algebra with coefficients
    in rep (only the rho matrices matter; any phi data is ignored)."""
    pair = LieDerPair(algebra, Derivation(Matrix.zeros(algebra.dim, algebra.dim)), check=False)
    g_dim, dim_v = algebra.dim, rep.dim_v
    if n < 0:
        return CohomologyReport(n, 0, 0, 0, 0)
    dim_c = plain_dim(g_dim, dim_v, n)
    mat = d_matrix(pair, rep, n)
    kernel = mat.kernel_basis()
    dim_z = len(kernel)
    if n == 0:
        boundary_cols = []
        dim_b = 0
    else:
        prev = d_matrix(pair, rep, n - 1)
        boundary_cols = [prev.column(j) for j in range(prev.cols)]
        dim_b = prev.rank()
    dim_h = dim_z - dim_b
    reps = []
    if representatives:
        reps = _pick_representatives(
            kernel, boundary_cols, dim_h, lambda z: Cochain.from_flat(g_dim, n, dim_v, z)
        )
    return CohomologyReport(n, dim_c, dim_z, dim_b, dim_h, reps)


def is_coboundary(z: CochainPair, pair: LieDerPair, rep: LieDerRepresentation):
    """A primitive c with partial(c) = z, or None when z is not exact.

    Raises NotACocycleError when z is not closed, and ValueError below degree
    2 (the pair complex is 0 below degree 1, so a nonzero 1-cochain is never
    exact; test against zero directly there).
    """
    if not lieder_partial(z, pair, rep).is_zero():
        raise NotACocycleError(f"input of degree {z.degree} is not closed")
    n = z.degree
    if n < 2:
        raise ValueError("primitives live in degree >= 1; there is nothing below a 1-cochain")
    mat = partial_matrix(pair, rep, n - 1)
    x = mat.solve(z.flatten())
    if x is None:
        return None
    return CochainPair.from_flat(pair.dim, n - 1, rep.dim_v, x)
