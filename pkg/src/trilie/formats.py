"""JSON file formats.

Rationals are written as ``"p/q"`` strings (or plain integers); basis indices
in keys are 1-based. A structure field may hold either an inline object or a
string path, resolved relative to the referring file.

Every parse error is a :class:`FormatError` naming the file and the JSON path
of the offending value.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exactlin import Matrix, rat_str
from .report import TrilieError
from .repcoh import Representation, TwoCochain, adjoint
from .threelie import ThreeLieAlgebra
from .nsnr import NSThreeLie


class FormatError(TrilieError, ValueError):
    def __init__(self, message: str, source: str = "", path: str = "$"):
        self.source = source
        self.path = path
        loc = f"{source}:{path}" if source else path
        super().__init__(f"{loc}: {message}")


class _Ctx:
    def __init__(self, source: str = "", base: Path | None = None):
        self.source = source
        self.base = base or Path(".")

    def fail(self, path: str, message: str):
        raise FormatError(message, self.source, path)


def parse_rational(value: Any, ctx: _Ctx, path: str) -> Fraction:
    if isinstance(value, bool):
        ctx.fail(path, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            if "." in value or "e" in value.lower():
                raise ValueError
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            ctx.fail(path, f"malformed rational {value!r} (use \"p/q\")")
    ctx.fail(path, f"expected a rational, got {type(value).__name__}")


def _vector(value: Any, n: int | None, ctx: _Ctx, path: str) -> tuple:
    if not isinstance(value, list):
        ctx.fail(path, "expected a list")
    if n is not None and len(value) != n:
        ctx.fail(path, f"expected {n} entries, got {len(value)}")
    return tuple(parse_rational(x, ctx, f"{path}[{i}]") for i, x in enumerate(value))


def _matrix(value: Any, rows: int | None, cols: int | None, ctx: _Ctx, path: str) -> Matrix:
    if isinstance(value, dict):
        if "matrix" not in value:
            ctx.fail(path, "missing 'matrix'")
        value, path = value["matrix"], f"{path}.matrix"
    if not isinstance(value, list) or not value:
        ctx.fail(path, "expected a nonempty list of rows")
    if rows is not None and len(value) != rows:
        ctx.fail(path, f"expected {rows} rows, got {len(value)}")
    width = cols if cols is not None else (len(value[0]) if isinstance(value[0], list) else None)
    out = [_vector(r, width, ctx, f"{path}[{i}]") for i, r in enumerate(value)]
    return Matrix.from_rows(out, width)


def _key(key: str, arity: int, dim: int, ctx: _Ctx, path: str, sep: str = ",") -> tuple:
    try:
        parts = [int(p) for p in key.replace("|", ",").split(",")]
    except ValueError:
        ctx.fail(path, f"malformed index key {key!r}")
    if len(parts) != arity:
        ctx.fail(path, f"key {key!r} needs {arity} indices")
    if any(not 1 <= p <= dim for p in parts):
        ctx.fail(path, f"index out of range 1..{dim} in {key!r}")
    return tuple(p - 1 for p in parts)


def _require(obj: dict, field: str, ctx: _Ctx, path: str):
    if not isinstance(obj, dict):
        ctx.fail(path, "expected an object")
    if field not in obj:
        ctx.fail(path, f"missing field '{field}'")
    return obj[field]


def _dim(obj: dict, ctx: _Ctx, path: str, field: str = "dim") -> int:
    d = _require(obj, field, ctx, path)
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        ctx.fail(f"{path}.{field}", "expected a nonnegative integer")
    return d


def _check_type(obj: dict, expected: str, ctx: _Ctx, path: str) -> None:
    t = obj.get("type", expected) if isinstance(obj, dict) else None
    if t != expected:
        ctx.fail(f"{path}.type", f"expected type {expected!r}, got {t!r}")


# -- loading ---------------------------------------------------------------------

def read_json(path: str | Path) -> tuple[Any, _Ctx]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read file ({exc.strerror or exc})", str(p)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}",
                          str(p)) from exc
    return data, _Ctx(str(p), p.parent)


def _deref(value: Any, ctx: _Ctx, path: str) -> tuple[Any, _Ctx, str]:
    if isinstance(value, str):
        data, sub = read_json(ctx.base / value)
        return data, sub, "$"
    return value, ctx, path


def algebra_from(obj: Any, ctx: _Ctx | None = None, path: str = "$") -> ThreeLieAlgebra:
    ctx = ctx or _Ctx()
    obj, ctx, path = _deref(obj, ctx, path)
    _check_type(obj, "3lie", ctx, path)
    d = _dim(obj, ctx, path)
    brackets = obj.get("brackets", {})
    if not isinstance(brackets, dict):
        ctx.fail(f"{path}.brackets", "expected an object")
    structure = {}
    for key, v in brackets.items():
        kp = f"{path}.brackets[{key!r}]"
        i, j, k = _key(key, 3, d, ctx, kp)
        if not i < j < k:
            ctx.fail(kp, "bracket keys must satisfy i<j<k")
        structure[(i, j, k)] = _vector(v, d, ctx, kp)
    return ThreeLieAlgebra(d, structure, name=str(obj.get("name", "")))


def representation_from(obj: Any, ctx: _Ctx | None = None, path: str = "$") -> Representation:
    ctx = ctx or _Ctx()
    obj, ctx, path = _deref(obj, ctx, path)
    _check_type(obj, "rep", ctx, path)
    A = algebra_from(_require(obj, "algebra", ctx, path), ctx, f"{path}.algebra")
    rho_raw = obj.get("rho", {})
    if rho_raw == "adjoint":
        from .threelie import verify
        return adjoint(verify(A))
    m = _dim(obj, ctx, path)
    if not isinstance(rho_raw, dict):
        ctx.fail(f"{path}.rho", "expected an object or \"adjoint\"")
    rho = {}
    for key, v in rho_raw.items():
        kp = f"{path}.rho[{key!r}]"
        i, j = _key(key, 2, A.dim, ctx, kp)
        if not i < j:
            ctx.fail(kp, "representation keys must satisfy i<j")
        rho[(i, j)] = _matrix(v, m, m, ctx, kp)
    return Representation(A, m, rho, name=str(obj.get("name", "")))


def cochain_values(raw: Any, d: int, m: int, ctx: _Ctx, path: str) -> TwoCochain:
    if not isinstance(raw, dict):
        ctx.fail(path, "expected an object keyed \"i,j,k\"")
    vals = {}
    for key, v in raw.items():
        kp = f"{path}[{key!r}]"
        i, j, k = _key(key, 3, d, ctx, kp)
        if not i < j < k:
            ctx.fail(kp, "cochain keys must satisfy i<j<k")
        vals[(i, j, k)] = _vector(v, m, ctx, kp)
    return TwoCochain(d, m, vals)


def cochain_from(obj: Any, ctx: _Ctx | None = None, path: str = "$") -> TwoCochain:
    ctx = ctx or _Ctx()
    obj, ctx, path = _deref(obj, ctx, path)
    _check_type(obj, "cochain", ctx, path)
    d = _dim(obj, ctx, path)
    m = _dim(obj, ctx, path, "dimV")
    return cochain_values(obj.get("values", {}), d, m, ctx, f"{path}.values")


def matrix_from(obj: Any, rows: int | None = None, cols: int | None = None,
                ctx: _Ctx | None = None, path: str = "$") -> Matrix:
    ctx = ctx or _Ctx()
    obj, ctx, path = _deref(obj, ctx, path)
    return _matrix(obj, rows, cols, ctx, path)


def trbo_parts_from(obj: Any, ctx: _Ctx | None = None, path: str = "$"):
    """``(algebra, representation, cocycle, T)`` without any verification."""
    ctx = ctx or _Ctx()
    obj, ctx, path = _deref(obj, ctx, path)
    _check_type(obj, "trbo", ctx, path)
    rep_raw = _require(obj, "representation", ctx, path)
    if rep_raw == "adjoint":
        from .threelie import verify
        A = algebra_from(_require(obj, "algebra", ctx, path), ctx, f"{path}.algebra")
        rep = adjoint(verify(A))
    else:
        rep = representation_from(rep_raw, ctx, f"{path}.representation")
        if "algebra" in obj:
            A = algebra_from(obj["algebra"], ctx, f"{path}.algebra")
            if A != rep.algebra:
                ctx.fail(f"{path}.algebra", "algebra differs from the representation's algebra")
    A = rep.algebra
    coc = obj.get("cocycle", {})
    if coc == "minus-bracket":
        phi = TwoCochain(A.dim, rep.dimV, {t: tuple(-x for x in v) for t, v in A.structure.items()})
    else:
        phi = cochain_values(coc, A.dim, rep.dimV, ctx, f"{path}.cocycle")
    T = _matrix(_require(obj, "T", ctx, path), A.dim, rep.dimV, ctx, f"{path}.T")
    return A, rep, phi, T


def ns_from(obj: Any, ctx: _Ctx | None = None, path: str = "$") -> NSThreeLie:
    ctx = ctx or _Ctx()
    obj, ctx, path = _deref(obj, ctx, path)
    _check_type(obj, "ns", ctx, path)
    d = _dim(obj, ctx, path)
    curly = {}
    for key, v in obj.get("curly", {}).items():
        kp = f"{path}.curly[{key!r}]"
        if "|" not in key:
            ctx.fail(kp, "curly keys look like \"i,j|k\"")
        i, j, k = _key(key, 3, d, ctx, kp)
        if not i < j:
            ctx.fail(kp, "curly keys must satisfy i<j")
        curly[(i, j, k)] = _vector(v, d, ctx, kp)
    square = {}
    for key, v in obj.get("square", {}).items():
        kp = f"{path}.square[{key!r}]"
        i, j, k = _key(key, 3, d, ctx, kp)
        if not i < j < k:
            ctx.fail(kp, "square keys must satisfy i<j<k")
        square[(i, j, k)] = _vector(v, d, ctx, kp)
    return NSThreeLie(d, curly, square)


def load(path: str | Path, kind: str):
    data, ctx = read_json(path)
    loaders = {"3lie": algebra_from, "rep": representation_from, "cochain": cochain_from,
               "ns": ns_from, "trbo": trbo_parts_from}
    if kind == "matrix":
        return matrix_from(data, ctx=ctx)
    return loaders[kind](data, ctx)


def load_deformation(path: str | Path):
    """``(trbo parts, frakT, frakT2 | None, X | None)``."""
    data, ctx = read_json(path)
    _check_type(data, "deformation", ctx, "$")
    parts = trbo_parts_from(_require(data, "operator", ctx, "$"), ctx, "$.operator")
    A, rep = parts[0], parts[1]
    S1 = _matrix(_require(data, "frakT", ctx, "$"), A.dim, rep.dimV, ctx, "$.frakT")
    S2 = (_matrix(data["frakT2"], A.dim, rep.dimV, ctx, "$.frakT2")
          if "frakT2" in data else None)
    X = None
    if "X" in data:
        raw = data["X"]
        if not isinstance(raw, list) or len(raw) != 2:
            ctx.fail("$.X", "expected a pair of vectors")
        X = tuple(_vector(r, A.dim, ctx, f"$.X[{i}]") for i, r in enumerate(raw))
    return parts, S1, S2, X


# -- dumping ---------------------------------------------------------------------

def vector_to(v) -> list:
    return [rat_str(Fraction(x)) for x in v]


def _key_out(*idx: int, sep: str = ",") -> str:
    return sep.join(str(i + 1) for i in idx)


def matrix_to(M: Matrix) -> dict:
    return {"matrix": [vector_to(M.row(i)) for i in range(M.rows)]}


def algebra_to(A: ThreeLieAlgebra) -> dict:
    out = {"type": "3lie", "dim": A.dim,
           "brackets": {_key_out(*t): vector_to(v) for t, v in A.structure.items()}}
    if A.name:
        out["name"] = A.name
    return out


def representation_to(rep: Representation) -> dict:
    return {"type": "rep", "algebra": algebra_to(rep.algebra), "dim": rep.dimV,
            "rho": {_key_out(*k): matrix_to(m)["matrix"] for k, m in rep.rho.items()}}


def cochain_to(phi: TwoCochain) -> dict:
    return {"type": "cochain", "dim": phi.d, "dimV": phi.dimV,
            "values": {_key_out(*t): vector_to(v) for t, v in phi.values.items()}}


def trbo_to(T) -> dict:
    ctx = T.context
    return {"type": "trbo", "representation": representation_to(ctx.rep),
            "cocycle": cochain_to(ctx.phi)["values"], "T": matrix_to(T.T)["matrix"]}


def ns_to(A: NSThreeLie) -> dict:
    curly = {f"{i + 1},{j + 1}|{k + 1}": vector_to(v) for (i, j, k), v in A.curly.items()}
    return {"type": "ns", "dim": A.dim, "curly": curly,
            "square": {_key_out(*t): vector_to(v) for t, v in A.square.items()}}


def to_document(obj) -> dict:
    from .trbo import TwistedRBO
    if isinstance(obj, ThreeLieAlgebra):
        return algebra_to(obj)
    if isinstance(obj, Representation):
        return representation_to(obj)
    if isinstance(obj, TwoCochain):
        return cochain_to(obj)
    if isinstance(obj, NSThreeLie):
        return ns_to(obj)
    if isinstance(obj, Matrix):
        return matrix_to(obj)
    if isinstance(obj, TwistedRBO):
        return trbo_to(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=2)


def write(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


__all__ = ["FormatError", "parse_rational", "read_json", "algebra_from",
           "representation_from", "cochain_from", "matrix_from", "trbo_parts_from",
           "ns_from", "load", "load_deformation", "algebra_to", "representation_to",
           "cochain_to", "matrix_to", "vector_to", "trbo_to", "ns_to", "to_document", "dumps", "write"]
