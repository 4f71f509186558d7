"""Alternating multilinear cochains on a wedge-indexed basis.

An n-cochain with values in V is determined by its values on strictly
increasing basis tuples (i1 < ... < in).  Tuples are ranked in colexicographic
order, which keeps the tuples drawn from {0..k} as a contiguous prefix.  The
one algorithmic step the textbook formulas leave implicit is re-alternation:
operators like the derivation-insertion sum produce values on *unsorted*
tuples, which must be folded back onto the wedge basis by sorting with the
permutation sign (and dropping repeats).  ``Cochain.value_on_indices`` is that
fold, and every operator below is built on it.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .core import LieDerPair, LieDerRepresentation
from .linalg import rat, vec_add, vec_is_zero, vec_scale, vec_sub, zero_vec

_wedge_cache: dict = {}


class WedgeBasis:
    """Bijection between increasing n-tuples from {0..g_dim-1} and flat ranks."""

    def __init__(self, g_dim: int, n: int):
        self.g_dim = g_dim
        self.n = n
        self.tuples = sorted(combinations(range(g_dim), n), key=lambda t: tuple(reversed(t)))
        self._rank = {t: i for i, t in enumerate(self.tuples)}

    @property
    def size(self) -> int:
        return len(self.tuples)

    def index(self, t) -> int:
        return self._rank[tuple(t)]

    def reduce(self, seq):
        """Sort an arbitrary index tuple onto the basis.

        Returns (rank, sign) where sign is the parity of the sorting
        permutation, or None when an index repeats (the wedge vanishes).
        """
        arr = list(seq)
        sign = 1
        for i in range(1, len(arr)):
            j = i
            while j > 0 and arr[j - 1] > arr[j]:
                arr[j - 1], arr[j] = arr[j], arr[j - 1]
                sign = -sign
                j -= 1
            if j > 0 and arr[j - 1] == arr[j]:
                return None
        return self._rank[tuple(arr)], sign


def wedge_basis(g_dim: int, n: int) -> WedgeBasis:
    key = (g_dim, n)
    if key not in _wedge_cache:
        _wedge_cache[key] = WedgeBasis(g_dim, n)
    return _wedge_cache[key]


class Cochain:
    """An alternating n-linear map from g to V, by values on the wedge basis.

    ``rows[p]`` is the V-coordinate vector on the p-th basis tuple.  Degree 0
    is allowed (a single empty tuple; the cochain is just a vector of V) for
    the plain Chevalley-Eilenberg complex.
    """

    __slots__ = ("g_dim", "n", "dim_v", "basis", "rows")

    def __init__(self, g_dim: int, n: int, dim_v: int, rows=None):
        self.g_dim = g_dim
        self.n = n
        self.dim_v = dim_v
        self.basis = wedge_basis(g_dim, n)
        if rows is None:
            self.rows = [zero_vec(dim_v) for _ in range(self.basis.size)]
        else:
            if len(rows) != self.basis.size or any(len(r) != dim_v for r in rows):
                raise ValueError("cochain rows do not match C(g_dim, n) x dim_v")
            self.rows = [[rat(x) for x in r] for r in rows]

    @classmethod
    def zero(cls, g_dim: int, n: int, dim_v: int) -> "Cochain":
        return cls(g_dim, n, dim_v)

    def copy(self) -> "Cochain":
        return Cochain(self.g_dim, self.n, self.dim_v, [r[:] for r in self.rows])

    def set_value(self, t, vec):
        self.rows[self.basis.index(t)] = [rat(x) for x in vec]

    def get(self, t):
        return self.rows[self.basis.index(t)][:]

    def value_on_indices(self, idxs):
        """Value on an arbitrary basis-index tuple, re-alternated."""
        red = self.basis.reduce(idxs)
        if red is None:
            return zero_vec(self.dim_v)
        pos, sign = red
        return self.rows[pos][:] if sign == 1 else vec_scale(rat(-1), self.rows[pos])

    def evaluate(self, args):
        """Multilinear alternating evaluation on coordinate vectors."""
        if len(args) != self.n:
            raise ValueError(f"degree-{self.n} cochain takes {self.n} arguments, got {len(args)}")
        out = zero_vec(self.dim_v)
        self._accumulate(args, 0, (), rat(1), out)
        return out

    def _accumulate(self, args, slot, idxs, coeff, out):
        if slot == self.n:
            red = self.basis.reduce(idxs)
            if red is not None:
                pos, sign = red
                for a in range(self.dim_v):
                    out[a] += sign * coeff * self.rows[pos][a]
            return
        for i, xi in enumerate(args[slot]):
            if xi != 0:
                self._accumulate(args, slot + 1, idxs + (i,), coeff * xi, out)

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and (self.g_dim, self.n, self.dim_v) == (other.g_dim, other.n, other.dim_v)
            and self.rows == other.rows
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.g_dim, self.n, self.dim_v, [vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.g_dim, self.n, self.dim_v, [vec_sub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        c = rat(c)
        return Cochain(self.g_dim, self.n, self.dim_v, [vec_scale(c, r) for r in self.rows])

    def flatten(self):
        """Row-major coordinates: position-major, then V index."""
        return [x for r in self.rows for x in r]

    @classmethod
    def from_flat(cls, g_dim: int, n: int, dim_v: int, flat) -> "Cochain":
        size = comb(g_dim, n)
        if len(flat) != size * dim_v:
            raise ValueError("flat coordinate length mismatch")
        rows = [list(flat[p * dim_v : (p + 1) * dim_v]) for p in range(size)]
        return cls(g_dim, n, dim_v, rows)

    def _compatible(self, other: "Cochain"):
        if (self.g_dim, self.n, self.dim_v) != (other.g_dim, other.n, other.dim_v):
            raise ValueError("cochain shapes differ")

    def __repr__(self) -> str:
        return f"Cochain(n={self.n}, g_dim={self.g_dim}, dim_v={self.dim_v})"


class CochainPair:
    """An element (f_n, g_{n-1}) of the pair complex; g is absent when n = 1."""

    __slots__ = ("f", "g")

    def __init__(self, f: Cochain, g: Cochain | None):
        if f.n == 1:
            if g is not None:
                raise ValueError("degree-1 pair cochains have no second component")
        else:
            if f.n < 1:
                raise ValueError("pair cochains start at degree 1")
            if g is None or g.n != f.n - 1 or g.g_dim != f.g_dim or g.dim_v != f.dim_v:
                raise ValueError("second component must be a cochain of degree n-1 over the same spaces")
        self.f = f
        self.g = g

    @property
    def degree(self) -> int:
        return self.f.n

    @classmethod
    def zero(cls, g_dim: int, n: int, dim_v: int) -> "CochainPair":
        g = Cochain.zero(g_dim, n - 1, dim_v) if n >= 2 else None
        return cls(Cochain.zero(g_dim, n, dim_v), g)

    def is_zero(self) -> bool:
        return self.f.is_zero() and (self.g is None or self.g.is_zero())

    def __eq__(self, other) -> bool:
        return isinstance(other, CochainPair) and self.f == other.f and self.g == other.g

    def __add__(self, other: "CochainPair") -> "CochainPair":
        return CochainPair(self.f + other.f, None if self.g is None else self.g + other.g)

    def __sub__(self, other: "CochainPair") -> "CochainPair":
        return CochainPair(self.f - other.f, None if self.g is None else self.g - other.g)

    def __neg__(self) -> "CochainPair":
        return self.scale(-1)

    def scale(self, c) -> "CochainPair":
        return CochainPair(self.f.scale(c), None if self.g is None else self.g.scale(c))

    def flatten(self):
        out = self.f.flatten()
        if self.g is not None:
            out += self.g.flatten()
        return out

    @classmethod
    def from_flat(cls, g_dim: int, n: int, dim_v: int, flat) -> "CochainPair":
        f_len = comb(g_dim, n) * dim_v
        f = Cochain.from_flat(g_dim, n, dim_v, flat[:f_len])
        if n == 1:
            if len(flat) != f_len:
                raise ValueError("flat coordinate length mismatch")
            return cls(f, None)
        g = Cochain.from_flat(g_dim, n - 1, dim_v, flat[f_len:])
        return cls(f, g)

    def __repr__(self) -> str:
        return f"CochainPair(degree={self.degree})"


# -- distinguished cochains -------------------------------------------------


def bracket_cochain(pair: LieDerPair) -> Cochain:
    """The bracket of g as a g-valued 2-cochain."""
    a = pair.algebra
    w = Cochain.zero(a.dim, 2, a.dim)
    for (i, j), comps in a.c.items():
        row = zero_vec(a.dim)
        for k, v in comps.items():
            row[k] = v
        w.set_value((i, j), row)
    return w


def derivation_cochain(pair: LieDerPair) -> Cochain:
    """The derivation of g as a g-valued 1-cochain."""
    a = pair.algebra
    f = Cochain.zero(a.dim, 1, a.dim)
    for j in range(a.dim):
        f.set_value((j,), pair.derivation.matrix.column(j))
    return f


def identity_cochain(g_dim: int) -> Cochain:
    f = Cochain.zero(g_dim, 1, g_dim)
    for j in range(g_dim):
        row = zero_vec(g_dim)
        row[j] = rat(1)
        f.set_value((j,), row)
    return f


def matrix_to_cochain(m) -> Cochain:
    """View an endomorphism matrix of g as a g-valued 1-cochain."""
    f = Cochain.zero(m.cols, 1, m.rows)
    for j in range(m.cols):
        f.set_value((j,), m.column(j))
    return f


def cochain_to_matrix(f: Cochain):
    from .linalg import Matrix

    if f.n != 1:
        raise ValueError("only 1-cochains correspond to matrices")
    return Matrix.from_columns([f.get((j,)) for j in range(f.g_dim)], rows=f.dim_v)


# -- the coboundary operators ------------------------------------------------


def ce_d(f: Cochain, pair: LieDerPair, rep: LieDerRepresentation) -> Cochain:
    """The Chevalley-Eilenberg differential of f; degree n -> n+1.

    On a basis tuple (t_0 < ... < t_n) the value is the usual two-block sum:
    signed rho-actions on f with one argument removed, plus signed insertions
    of brackets [e_a, e_b] expanded in coordinates and re-alternated.
    """
    _check_compat(f, pair, rep)
    a = pair.algebra
    n = f.n
    out = Cochain.zero(f.g_dim, n + 1, f.dim_v)
    for pos, t in enumerate(out.basis.tuples):
        acc = zero_vec(f.dim_v)
        for i in range(n + 1):
            rest = t[:i] + t[i + 1 :]
            val = f.value_on_indices(rest)
            if not vec_is_zero(val):
                sign = 1 if i % 2 == 0 else -1
                acc = vec_add(acc, vec_scale(rat(sign), rep.rho[t[i]].apply(val)))
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                w = a.bracket_basis(t[i], t[j])
                if vec_is_zero(w):
                    continue
                rest = tuple(t[m] for m in range(n + 1) if m != i and m != j)
                sign = 1 if (i + j) % 2 == 0 else -1  # (-1)^{(i+1)+(j+1)} with 1-based slots
                for k, wk in enumerate(w):
                    if wk != 0:
                        val = f.value_on_indices((k,) + rest)
                        if not vec_is_zero(val):
                            acc = vec_add(acc, vec_scale(rat(sign) * wk, val))
        out.rows[pos] = acc
    return out


def delta_op(f: Cochain, pair: LieDerPair, rep: LieDerRepresentation) -> Cochain:
    """The degree-preserving operator: sum of phi_g insertions minus phi_V after f."""
    _check_compat(f, pair, rep)
    phi = pair.derivation.matrix
    out = Cochain.zero(f.g_dim, f.n, f.dim_v)
    for pos, t in enumerate(out.basis.tuples):
        acc = vec_scale(rat(-1), rep.phi_v.apply(f.rows[pos]))
        for s in range(f.n):
            col = phi.column(t[s])
            for j, cj in enumerate(col):
                if cj != 0:
                    val = f.value_on_indices(t[:s] + (j,) + t[s + 1 :])
                    if not vec_is_zero(val):
                        acc = vec_add(acc, vec_scale(cj, val))
        out.rows[pos] = acc
    return out


def lieder_partial(cp: CochainPair, pair: LieDerPair, rep: LieDerRepresentation) -> CochainPair:
    """The pair differential: (f, g) -> (d f, d g + (-1)^n delta f)."""
    n = cp.degree
    df = ce_d(cp.f, pair, rep)
    sign = rat(1) if n % 2 == 0 else rat(-1)
    second = delta_op(cp.f, pair, rep).scale(sign)
    if cp.g is not None:
        second = second + ce_d(cp.g, pair, rep)
    return CochainPair(df, second)


# -- Nijenhuis-Richardson bracket --------------------------------------------


def nr_circle(p: Cochain, q: Cochain) -> Cochain:
    """The unshuffle composition P . Q of g-valued cochains.

    For P of arity p+1 and Q of arity q+1 the result has arity p+q+1: sum over
    (q+1, p)-unshuffles, Q eaten first, its value expanded in coordinates and
    fed to P's first slot.
    """
    _check_g_valued(p)
    _check_g_valued(q)
    dim = p.g_dim
    arity = p.n + q.n - 1
    out = Cochain.zero(dim, arity, dim)
    if arity > dim:
        return out
    for pos, t in enumerate(out.basis.tuples):
        acc = zero_vec(dim)
        for subset in combinations(range(arity), q.n):
            first = tuple(t[m] for m in subset)
            rest = tuple(t[m] for m in range(arity) if m not in subset)
            sign = _unshuffle_sign(subset, arity)
            inner = q.value_on_indices(first)
            for k, ck in enumerate(inner):
                if ck != 0:
                    val = p.value_on_indices((k,) + rest)
                    if not vec_is_zero(val):
                        acc = vec_add(acc, vec_scale(rat(sign) * ck, val))
        out.rows[pos] = acc
    return out


def nr_bracket(p: Cochain, q: Cochain) -> Cochain:
    """[P, Q] = P.Q - (-1)^{pq} Q.P on g-valued cochains (graded degrees p = arity-1)."""
    pq = (p.n - 1) * (q.n - 1)
    second = nr_circle(q, p)
    if pq % 2 == 0:
        return nr_circle(p, q) - second
    return nr_circle(p, q) + second


def _unshuffle_sign(subset, total: int) -> int:
    # parity of the permutation (subset..., complement...) of (0..total-1):
    # inversions = sum over chosen positions of how many unchosen sit before them
    chosen = set(subset)
    inversions = 0
    seen_unchosen = 0
    for m in range(total):
        if m in chosen:
            inversions += seen_unchosen
        else:
            seen_unchosen += 1
    return 1 if inversions % 2 == 0 else -1


def _check_compat(f: Cochain, pair: LieDerPair, rep: LieDerRepresentation):
    if f.g_dim != pair.dim:
        raise ValueError("cochain is over a different algebra dimension")
    if rep.g_dim != pair.dim:
        raise ValueError("representation is over a different algebra dimension")
    if f.dim_v != rep.dim_v:
        raise ValueError("cochain values do not live in the representation space")


def _check_g_valued(f: Cochain):
    if f.dim_v != f.g_dim:
        raise ValueError("the graded bracket needs g-valued cochains")
    if f.n < 1:
        raise ValueError("the graded bracket starts at 1-cochains")
