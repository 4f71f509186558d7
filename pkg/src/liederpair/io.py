"""JSON file formats.

All indices in files are 1-based; rationals are strings "p" or "p/q" (plain
integers are also accepted).  Brackets are sparse maps ``"i,j" -> {k: value}``
for i < j; cochains are sparse maps from wedge keys ``"i1^i2^...^in"`` to
V-coordinate arrays, omitted keys meaning zero.  Matrices are dense row
lists, column j holding the image of the j-th basis vector.  Parse errors
carry the offending key path.
"""

from __future__ import annotations

import json

from .cochains import Cochain, CochainPair
from .core import (
    Derivation,
    LieAlgebra,
    LieDerPair,
    LieDerRepresentation,
    verify_derivation,
    verify_lie,
    verify_representation,
)
from .deformation import FormalIso, TruncatedDeformation
from .extension import CentralCocycle, CentralExtension
from .lie2 import EquivalenceWitness, Lie2Derivation, SkeletalLie2, Triple
from .linalg import Matrix, rat, rat_str


class ParseError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"at {path or '<root>'}: {message}")


class AxiomError(ValueError):
    """Parsed data failed a verification; carries the violation report."""

    def __init__(self, label: str, report):
        self.label = label
        self.report = report
        super().__init__(f"{label} does not verify: {report.violations}")


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"line {err.lineno}, column {err.colno}", err.msg) from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_rational(x, path: str):
    try:
        return rat(x)
    except (ValueError, TypeError) as err:
        raise ParseError(path, str(err)) from None


def parse_matrix(obj, path: str, rows: int | None = None, cols: int | None = None) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError(path, "expected a non-empty list of rows")
    data = [[parse_rational(x, f"{path}[{i+1}][{j+1}]") for j, x in enumerate(row)] for i, row in enumerate(obj)]
    if any(len(r) != len(data[0]) for r in data):
        raise ParseError(path, "ragged rows")
    m = Matrix.from_rows(data)
    if rows is not None and m.rows != rows:
        raise ParseError(path, f"expected {rows} rows, found {m.rows}")
    if cols is not None and m.cols != cols:
        raise ParseError(path, f"expected {cols} columns, found {m.cols}")
    return m


def matrix_to_json(m: Matrix):
    return [[rat_str(x) for x in row] for row in m.data]


def _parse_index(token: str, dim: int, path: str) -> int:
    try:
        i = int(token)
    except ValueError:
        raise ParseError(path, f"bad index {token!r}") from None
    if not 1 <= i <= dim:
        raise ParseError(path, f"index {i} out of range 1..{dim}")
    return i - 1


# -- algebras -----------------------------------------------------------------


def parse_algebra(obj, path: str = "") -> LieAlgebra:
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    if "dim" not in obj or not isinstance(obj["dim"], int) or obj["dim"] < 0:
        raise ParseError(f"{path}dim", "expected a non-negative integer")
    dim = obj["dim"]
    names = obj.get("basis")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise ParseError(f"{path}basis", f"expected {dim} names")
    brackets = {}
    for key, comps in (obj.get("brackets") or {}).items():
        kpath = f"{path}brackets/{key}"
        parts = key.split(",")
        if len(parts) != 2:
            raise ParseError(kpath, 'bracket keys look like "i,j"')
        i = _parse_index(parts[0], dim, kpath)
        j = _parse_index(parts[1], dim, kpath)
        if not i < j:
            raise ParseError(kpath, "bracket keys need i < j")
        if not isinstance(comps, dict):
            raise ParseError(kpath, "expected {target-index: rational}")
        row = {}
        for k, v in comps.items():
            row[_parse_index(k, dim, f"{kpath}/{k}")] = parse_rational(v, f"{kpath}/{k}")
        brackets[(i, j)] = row
    try:
        return LieAlgebra(dim, brackets, names)
    except ValueError as err:
        raise ParseError(path or "<algebra>", str(err)) from None


def parse_pair_file(obj, verify: bool = True):
    """(LieDerPair, representation-or-None) from an algebra file object.

    A missing derivation means the zero derivation.  With verify=True a
    failing axiom raises AxiomError carrying the full report.
    """
    algebra = parse_algebra(obj)
    if verify:
        check = verify_lie(algebra)
        if not check.ok:
            raise AxiomError("bracket", check)
    if "derivation" in obj:
        der = Derivation(parse_matrix(obj["derivation"], "derivation", algebra.dim, algebra.dim))
    else:
        der = Derivation(Matrix.zeros(algebra.dim, algebra.dim))
    if verify:
        check = verify_derivation(algebra, der)
        if not check.ok:
            raise AxiomError("derivation", check)
    pair = LieDerPair(algebra, der, check=False)
    rep = None
    if "representation" in obj:
        rep = parse_representation(obj["representation"], algebra.dim, "representation")
        if verify:
            check = verify_representation(pair, rep)
            if not check.ok:
                raise AxiomError("representation", check)
    return pair, rep


def parse_representation(obj, g_dim: int, path: str) -> LieDerRepresentation:
    if not isinstance(obj, dict) or "dimV" not in obj:
        raise ParseError(path, "expected an object with dimV")
    dim_v = obj["dimV"]
    if not isinstance(dim_v, int) or dim_v < 0:
        raise ParseError(f"{path}/dimV", "expected a non-negative integer")
    rho_obj = obj.get("rho")
    if rho_obj is None:
        rho = [Matrix.zeros(dim_v, dim_v) for _ in range(g_dim)]
    else:
        if not isinstance(rho_obj, list) or len(rho_obj) != g_dim:
            raise ParseError(f"{path}/rho", f"expected {g_dim} matrices")
        rho = [parse_matrix(m, f"{path}/rho[{i+1}]", dim_v, dim_v) for i, m in enumerate(rho_obj)]
    if "phiV" in obj:
        phi_v = parse_matrix(obj["phiV"], f"{path}/phiV", dim_v, dim_v)
    else:
        phi_v = Matrix.zeros(dim_v, dim_v)
    return LieDerRepresentation(dim_v, rho, phi_v)


def algebra_to_json(pair: LieDerPair, rep: LieDerRepresentation | None = None):
    a = pair.algebra
    brackets = {}
    for (i, j), comps in sorted(a.c.items()):
        brackets[f"{i+1},{j+1}"] = {str(k + 1): rat_str(v) for k, v in sorted(comps.items())}
    out = {"dim": a.dim, "basis": list(a.basis_names), "brackets": brackets}
    if not pair.derivation.matrix.is_zero():
        out["derivation"] = matrix_to_json(pair.derivation.matrix)
    if rep is not None:
        out["representation"] = {
            "dimV": rep.dim_v,
            "rho": [matrix_to_json(m) for m in rep.rho],
            "phiV": matrix_to_json(rep.phi_v),
        }
    return out


# -- cochains -----------------------------------------------------------------


def parse_cochain(obj, g_dim: int, n: int, dim_v: int, path: str) -> Cochain:
    """Sparse wedge-key map; omitted keys are zero."""
    c = Cochain.zero(g_dim, n, dim_v)
    if obj is None:
        return c
    if not isinstance(obj, dict):
        raise ParseError(path, "expected {wedge-key: coordinate array}")
    for key, vec in obj.items():
        kpath = f"{path}/{key}"
        tokens = [t for t in key.split("^") if t] if key else []
        if len(tokens) != n:
            raise ParseError(kpath, f"expected a degree-{n} wedge key")
        idxs = tuple(_parse_index(t, g_dim, kpath) for t in tokens)
        if len(set(idxs)) != n or list(idxs) != sorted(idxs):
            raise ParseError(kpath, "wedge keys must be strictly increasing")
        if not isinstance(vec, list) or len(vec) != dim_v:
            raise ParseError(kpath, f"expected {dim_v} coordinates")
        c.set_value(idxs, [parse_rational(x, f"{kpath}[{a+1}]") for a, x in enumerate(vec)])
    return c


def cochain_to_json(c: Cochain):
    out = {}
    for pos, t in enumerate(c.basis.tuples):
        if any(x != 0 for x in c.rows[pos]):
            out["^".join(str(i + 1) for i in t)] = [rat_str(x) for x in c.rows[pos]]
    return out


def cochain_pair_to_json(cp: CochainPair):
    out = {"degree": cp.degree, "f": cochain_to_json(cp.f)}
    if cp.g is not None:
        out["g"] = cochain_to_json(cp.g)
    return out


def parse_cochain_pair(obj, g_dim: int, n: int, dim_v: int, path: str) -> CochainPair:
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object with f (and g when degree >= 2)")
    f = parse_cochain(obj.get("f"), g_dim, n, dim_v, f"{path}/f")
    g = parse_cochain(obj.get("g"), g_dim, n - 1, dim_v, f"{path}/g") if n >= 2 else None
    return CochainPair(f, g)


# -- deformations -------------------------------------------------------------


def parse_deformation(obj, pair: LieDerPair, path: str = "deformation") -> TruncatedDeformation:
    """{"order": n, "omega": [...], "phi": [...]}; term lists may omit index 0."""
    if not isinstance(obj, dict) or "order" not in obj:
        raise ParseError(path, "expected an object with order/omega/phi")
    order = obj["order"]
    if not isinstance(order, int) or order < 0:
        raise ParseError(f"{path}/order", "expected a non-negative integer")
    dim = pair.dim

    def parse_terms(key: str, degree: int):
        terms = obj.get(key) or []
        if not isinstance(terms, list):
            raise ParseError(f"{path}/{key}", "expected a list of cochains")
        if len(terms) == order + 1:
            explicit0 = terms[0]
            higher = terms[1:]
        elif len(terms) == order:
            explicit0 = None
            higher = terms
        else:
            raise ParseError(f"{path}/{key}", f"expected {order} or {order+1} terms")
        parsed = [
            parse_cochain(t, dim, degree, dim, f"{path}/{key}[{i}]") for i, t in enumerate(higher, start=1)
        ]
        return explicit0, parsed

    omega0, omegas = parse_terms("omega", 2)
    phi0, phis = parse_terms("phi", 1)
    d = TruncatedDeformation.from_terms(pair, omegas, phis)
    if omega0 is not None and parse_cochain(omega0, dim, 2, dim, f"{path}/omega[0]") != d.omegas[0]:
        raise ParseError(f"{path}/omega[0]", "explicit order-0 term differs from the base bracket")
    if phi0 is not None and parse_cochain(phi0, dim, 1, dim, f"{path}/phi[0]") != d.phis[0]:
        raise ParseError(f"{path}/phi[0]", "explicit order-0 term differs from the base derivation")
    return d


def deformation_to_json(d: TruncatedDeformation):
    return {
        "order": d.order,
        "omega": [cochain_to_json(w) for w in d.omegas],
        "phi": [cochain_to_json(f) for f in d.phis],
    }


def parse_formal_iso(obj, dim: int, path: str = "iso") -> FormalIso:
    if not isinstance(obj, dict) or "terms" not in obj or not isinstance(obj["terms"], list):
        raise ParseError(path, "expected an object with a list of term matrices")
    terms = [parse_matrix(m, f"{path}/terms[{i}]", dim, dim) for i, m in enumerate(obj["terms"])]
    try:
        return FormalIso(terms)
    except ValueError as err:
        raise ParseError(path, str(err)) from None


def formal_iso_to_json(iso: FormalIso):
    return {"terms": [matrix_to_json(t) for t in iso.terms]}


# -- central extensions -------------------------------------------------------


def parse_extension(obj, path: str = "") -> CentralExtension:
    """Either base + fiber + cocycle, or base + fiber + total + index lists."""
    from .extension import build_central_extension

    if not isinstance(obj, dict) or "base" not in obj or "fiber" not in obj:
        raise ParseError(path or "<extension>", "expected base and fiber blocks")
    base, _ = parse_pair_file(obj["base"])
    fiber = obj["fiber"]
    if not isinstance(fiber, dict) or "dim" not in fiber:
        raise ParseError(f"{path}fiber", "expected {dim, phi?}")
    dim_h = fiber["dim"]
    if not isinstance(dim_h, int) or dim_h < 0:
        raise ParseError(f"{path}fiber/dim", "expected a non-negative integer")
    if "phi" in fiber:
        fiber_phi = parse_matrix(fiber["phi"], f"{path}fiber/phi", dim_h, dim_h)
    else:
        fiber_phi = Matrix.zeros(dim_h, dim_h)
    if "cocycle" in obj:
        c = obj["cocycle"]
        if not isinstance(c, dict):
            raise ParseError(f"{path}cocycle", "expected {psi, chi?}")
        psi = parse_cochain(c.get("psi"), base.dim, 2, dim_h, f"{path}cocycle/psi")
        chi = parse_cochain(c.get("chi"), base.dim, 1, dim_h, f"{path}cocycle/chi")
        return build_central_extension(base, fiber_phi, CentralCocycle(psi, chi))
    if "total" not in obj:
        raise ParseError(path or "<extension>", "need either a cocycle or a total algebra")
    total, _ = parse_pair_file(obj["total"])
    for key in ("base_positions", "fiber_positions"):
        if key not in obj or not isinstance(obj[key], list):
            raise ParseError(f"{path}{key}", "expected an index list")
    bp = [_parse_index(str(i), total.dim, f"{path}base_positions") for i in obj["base_positions"]]
    fp = [_parse_index(str(i), total.dim, f"{path}fiber_positions") for i in obj["fiber_positions"]]
    try:
        return CentralExtension(total, base, fiber_phi, bp, fp)
    except ValueError as err:
        raise ParseError(path or "<extension>", str(err)) from None


def extension_to_json(e: CentralExtension):
    return {
        "base": algebra_to_json(e.base),
        "fiber": {"dim": e.dim_h, "phi": matrix_to_json(e.fiber_phi)},
        "total": algebra_to_json(e.total),
        "base_positions": [q + 1 for q in e.base_positions],
        "fiber_positions": [q + 1 for q in e.fiber_positions],
    }


def cocycle_to_json(c: CentralCocycle):
    return {"psi": cochain_to_json(c.psi), "chi": cochain_to_json(c.chi)}


# -- skeletal structures ------------------------------------------------------


def parse_lie2(obj, path: str = ""):
    """(SkeletalLie2, Lie2Derivation-or-None)."""
    if not isinstance(obj, dict) or "dimV0" not in obj or "dimV1" not in obj:
        raise ParseError(path or "<lie2>", "expected dimV0 and dimV1")
    n0, n1 = obj["dimV0"], obj["dimV1"]
    for label, value in (("dimV0", n0), ("dimV1", n1)):
        if not isinstance(value, int) or value < 0:
            raise ParseError(f"{path}{label}", "expected a non-negative integer")
    l2_00 = parse_cochain(obj.get("l2_00"), n0, 2, n0, f"{path}l2_00")
    l2_01_obj = obj.get("l2_01")
    if l2_01_obj is None:
        l2_01 = [Matrix.zeros(n1, n1) for _ in range(n0)]
    else:
        if not isinstance(l2_01_obj, list) or len(l2_01_obj) != n0:
            raise ParseError(f"{path}l2_01", f"expected {n0} matrices")
        l2_01 = [parse_matrix(m, f"{path}l2_01[{i+1}]", n1, n1) for i, m in enumerate(l2_01_obj)]
    l3 = parse_cochain(obj.get("l3"), n0, 3, n1, f"{path}l3")
    s = SkeletalLie2(n0, n1, l2_00, l2_01, l3)
    d = None
    if "derivation" in obj:
        dd = obj["derivation"]
        if not isinstance(dd, dict):
            raise ParseError(f"{path}derivation", "expected {X0, X1, lX}")
        x0 = parse_matrix(dd["X0"], f"{path}derivation/X0", n0, n0) if "X0" in dd else Matrix.zeros(n0, n0)
        x1 = parse_matrix(dd["X1"], f"{path}derivation/X1", n1, n1) if "X1" in dd else Matrix.zeros(n1, n1)
        lx = parse_cochain(dd.get("lX"), n0, 2, n1, f"{path}derivation/lX")
        d = Lie2Derivation(x0, x1, lx)
    return s, d


def lie2_to_json(s: SkeletalLie2, d: Lie2Derivation | None = None):
    out = {
        "dimV0": s.dim_v0,
        "dimV1": s.dim_v1,
        "l2_00": cochain_to_json(s.l2_00),
        "l2_01": [matrix_to_json(m) for m in s.l2_01],
        "l3": cochain_to_json(s.l3),
    }
    if d is not None:
        out["derivation"] = {
            "X0": matrix_to_json(d.x0),
            "X1": matrix_to_json(d.x1),
            "lX": cochain_to_json(d.lx),
        }
    return out


def parse_triple(obj, path: str = "") -> Triple:
    pair, rep = parse_pair_file(obj)
    if rep is None:
        raise ParseError(f"{path}representation", "a triple needs a representation block")
    c = obj.get("cocycle")
    if not isinstance(c, dict):
        raise ParseError(f"{path}cocycle", "expected {theta3, theta2}")
    theta3 = parse_cochain(c.get("theta3"), pair.dim, 3, rep.dim_v, f"{path}cocycle/theta3")
    theta2 = parse_cochain(c.get("theta2"), pair.dim, 2, rep.dim_v, f"{path}cocycle/theta2")
    return Triple(pair, rep, CochainPair(theta3, theta2))


def triple_to_json(t: Triple):
    out = algebra_to_json(t.pair, t.rep)
    out["cocycle"] = {
        "theta3": cochain_to_json(t.cocycle.f),
        "theta2": cochain_to_json(t.cocycle.g),
    }
    return out


def parse_witness(obj, t: Triple, t2: Triple, path: str = "witness") -> EquivalenceWitness:
    if not isinstance(obj, dict):
        raise ParseError(path, "expected {alpha, beta, gamma, eta}")
    n0, n1 = t.pair.dim, t.rep.dim_v
    m0, m1 = t2.pair.dim, t2.rep.dim_v
    alpha = parse_matrix(obj["alpha"], f"{path}/alpha", m0, n0) if "alpha" in obj else Matrix.identity(n0)
    beta = parse_matrix(obj["beta"], f"{path}/beta", m1, n1) if "beta" in obj else Matrix.identity(n1)
    gamma = parse_cochain(obj.get("gamma"), n0, 2, m1, f"{path}/gamma")
    eta = parse_matrix(obj["eta"], f"{path}/eta", m1, n0) if "eta" in obj else Matrix.zeros(m1, n0)
    return EquivalenceWitness(alpha, beta, gamma, eta)
