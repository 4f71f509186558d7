"""Shared desk-scale fixtures: the five standard pairs and random generators."""

from fractions import Fraction

import liederpair as lp
from liederpair.linalg import Matrix


def abelian2(phi=None) -> lp.LieDerPair:
    der = lp.Derivation(phi if phi is not None else Matrix.zeros(2, 2))
    return lp.LieDerPair(lp.LieAlgebra(2, {}), der)


def aff1() -> lp.LieDerPair:
    """[e1,e2] = e2 with the inner derivation ad_{e1}."""
    a = lp.LieAlgebra(2, {(0, 1): {1: 1}})
    return lp.LieDerPair(a, lp.Derivation(a.ad(0)))


def heisenberg(grading=True) -> lp.LieDerPair:
    """[e1,e2] = e3; the grading derivation diag(1,1,2) by default."""
    a = lp.LieAlgebra(3, {(0, 1): {2: 1}})
    phi = Matrix.diagonal([1, 1, 2]) if grading else Matrix.zeros(3, 3)
    return lp.LieDerPair(a, lp.Derivation(phi))


def sl2(with_ad_h=True) -> lp.LieDerPair:
    """Basis (h, e, f): [h,e]=2e, [h,f]=-2f, [e,f]=h; derivation ad_h."""
    a = lp.LieAlgebra(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    phi = a.ad(0) if with_ad_h else Matrix.zeros(3, 3)
    return lp.LieDerPair(a, lp.Derivation(phi))


def solvable4() -> lp.LieDerPair:
    """Graded solvable: [e1,ei] = wt(i) ei (weights 1,1,2), [e2,e3] = e4; phi = ad_{e1}."""
    a = lp.LieAlgebra(4, {(0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 2}, (1, 2): {3: 1}})
    return lp.LieDerPair(a, lp.Derivation(a.ad(0)))


def standard_pairs():
    """The five acceptance fixtures."""
    return [
        ("abelian2", abelian2()),
        ("aff1", aff1()),
        ("heisenberg", heisenberg()),
        ("sl2", sl2()),
        ("solvable4", solvable4()),
    ]


def zero_derivation_pairs():
    """Same algebras, all with the zero derivation."""
    out = []
    for name, pair in standard_pairs():
        out.append((name, lp.LieDerPair(pair.algebra, lp.Derivation(Matrix.zeros(pair.dim, pair.dim)))))
    return out


def reps_for(pair: lp.LieDerPair):
    """Adjoint plus a trivial 1-dimensional representation."""
    return [
        ("adjoint", lp.adjoint_representation(pair)),
        ("trivial1", lp.trivial_representation(pair.dim, 1, Matrix.diagonal([3]))),
    ]


def rand_fraction(rng, num=4, den=3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_cochain(rng, g_dim: int, n: int, dim_v: int) -> lp.Cochain:
    c = lp.Cochain.zero(g_dim, n, dim_v)
    for pos in range(c.basis.size):
        for a in range(dim_v):
            c.rows[pos][a] = rand_fraction(rng)
    return c


def rand_pair_cochain(rng, g_dim: int, n: int, dim_v: int) -> lp.CochainPair:
    g = rand_cochain(rng, g_dim, n - 1, dim_v) if n >= 2 else None
    return lp.CochainPair(rand_cochain(rng, g_dim, n, dim_v), g)


def rand_matrix(rng, n: int) -> Matrix:
    return Matrix(n, n, [[rand_fraction(rng) for _ in range(n)] for _ in range(n)])


def rand_cocycle(rng, kernel, g_dim: int, n: int, dim_v: int) -> lp.CochainPair:
    """A random integer combination of a precomputed kernel basis."""
    if not kernel:
        return lp.CochainPair.zero(g_dim, n, dim_v)
    flat = [Fraction(0)] * len(kernel[0])
    for v in kernel:
        c = Fraction(rng.randint(-3, 3))
        if c:
            flat = [a + c * b for a, b in zip(flat, v)]
    return lp.CochainPair.from_flat(g_dim, n, dim_v, flat)


def rand_formal_iso(rng, dim: int, order: int) -> lp.FormalIso:
    return lp.FormalIso([Matrix.identity(dim)] + [rand_matrix(rng, dim) for _ in range(order)])
