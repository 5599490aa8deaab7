"""Text and JSON formats for scalars, signatures, instances, graphs, logs and collapse results.

Every writer produces text its reader maps back to an equal value.
Scalars are written ``a/b+c/d i``; vertices and positions are 1-based in
text and 0-based in memory.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import linalg
from .canonical import CanonicalForm
from .collapse import Certificate, CollapsedProblem, HoloProblem
from .graph import UnderlyingGraph
from .holant import Instance, InstanceError, Vertex
from .scalar import Scalar, format_full, parse_scalar
from .tensor import Signature
from .transforms import Bar, Exchange, Flip, GlobalFactor, Side, Slash


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


def _scalar(text, field=None, line=None) -> Scalar:
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return Scalar(text)
        raise FormatError(f"expected a scalar string, got {text!r}", line, field)
    try:
        return parse_scalar(text)
    except ValueError as exc:
        raise FormatError(str(exc), line, field) from None


# -- nested arrays -----------------------------------------------------------


def nested(values: np.ndarray):
    """Object array of Scalars to nested lists of strings."""
    if not isinstance(values, np.ndarray):
        return format_full(values)
    if values.ndim == 0:
        return format_full(values[()])
    return [nested(values[k]) for k in range(values.shape[0])]


def _shape_of(data, field) -> tuple[int, ...]:
    shape = []
    x = data
    while isinstance(x, list):
        if not x:
            raise FormatError("empty array", field=field)
        shape.append(len(x))
        x = x[0]
    return tuple(shape)


def from_nested(data, field: str = "values") -> np.ndarray:
    shape = _shape_of(data, field)
    out = np.empty(shape, dtype=object)

    def fill(x, idx):
        if len(idx) == len(shape):
            if isinstance(x, list):
                raise FormatError(f"ragged array at index {idx}", field=field)
            out[idx] = _scalar(x, field)
            return
        if not isinstance(x, list) or len(x) != shape[len(idx)]:
            raise FormatError(f"ragged array at index {idx}", field=field)
        for k, y in enumerate(x):
            fill(y, idx + (k,))

    fill(data, ())
    return out


def signature_to_json(sig: Signature):
    return nested(sig.values)


def signature_from_json(data, field: str = "signature") -> Signature:
    arr = from_nested(data, field)
    try:
        return Signature(arr)
    except ValueError as exc:
        raise FormatError(str(exc), field=field) from None


def matrix_to_json(mat) -> list:
    return nested(linalg.as_matrix(mat))


def matrix_from_json(data, field: str = "matrix") -> np.ndarray:
    arr = from_nested(data, field)
    if arr.ndim != 2:
        raise FormatError(f"expected a 2-d array, got {arr.ndim} dimensions", field=field)
    return arr


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno) from None


def dump_json(data) -> str:
    return json.dumps(data, indent=1) + "\n"


def read_signature(text: str) -> tuple[Signature, int | None]:
    """A signature document: a nested array, or ``{"values": ..., "split": s}``."""
    data = _load_json(text)
    if isinstance(data, dict):
        if "values" not in data:
            raise FormatError("missing", field="values")
        split = data.get("split")
        if split is not None and not isinstance(split, int):
            raise FormatError("split must be an integer", field="split")
        return signature_from_json(data["values"], "values"), split
    return signature_from_json(data), None


def write_signature(sig: Signature, split: int | None = None) -> str:
    if split is None:
        return dump_json(signature_to_json(sig))
    return dump_json({"values": signature_to_json(sig), "split": split})


def read_matrix(text: str) -> np.ndarray:
    return matrix_from_json(_load_json(text))


# -- instances ------------------------------------------------------------------


def instance_to_json(inst: Instance) -> dict:
    def side(vs):
        return [{"name": v.name, "signature": v.signature, "edges": list(v.edges)} for v in vs]

    return {
        "domain_size": inst.domain_size,
        "signatures": {k: signature_to_json(s) for k, s in inst.signatures.items()},
        "left": side(inst.left),
        "right": side(inst.right),
        "edges": inst.edges,
        "dangling": list(inst.dangling),
    }


def instance_from_json(data) -> Instance:
    if not isinstance(data, dict):
        raise FormatError("instance must be a JSON object")
    for key in ("domain_size", "signatures", "left", "right"):
        if key not in data:
            raise FormatError("missing", field=key)
    if not isinstance(data["domain_size"], int):
        raise FormatError("must be an integer", field="domain_size")
    sigs = {k: signature_from_json(v, f"signatures.{k}") for k, v in data["signatures"].items()}

    def side(name):
        out = []
        for k, v in enumerate(data[name]):
            try:
                out.append(Vertex(str(v["name"]), str(v["signature"]), tuple(map(str, v["edges"]))))
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad vertex entry: {exc}", field=f"{name}[{k}]") from None
        return out

    try:
        inst = Instance(data["domain_size"], sigs, side("left"), side("right"), tuple(data.get("dangling", ())))
    except InstanceError as exc:
        raise FormatError(str(exc)) from None
    if "edges" in data and sorted(map(str, data["edges"])) != sorted(inst.edges):
        raise FormatError("edge list does not match the vertices' edge slots", field="edges")
    return inst


def read_instance(text: str) -> Instance:
    return instance_from_json(_load_json(text))


def write_instance(inst: Instance) -> str:
    return dump_json(instance_to_json(inst))


# -- line formats -------------------------------------------------------------


def _lines(text: str):
    """Non-blank lines with comments removed, with 1-based line numbers."""
    for k, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line.split()


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _pair(re: str, im: str, line: int) -> Scalar:
    try:
        return Scalar(Fraction(re), Fraction(im))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad weight {re} {im}", line) from None


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {tok!r}", line) from None


def write_graph(g: UnderlyingGraph) -> str:
    out = [str(g.n)]
    if g.split is not None:
        out.append(f"split {g.split}")
    for (i, j), w in sorted(g.weights.items()):
        out.append(f"{i + 1} {j + 1} {_frac(w.re)} {_frac(w.im)}")
    return "\n".join(out) + "\n"


def read_graph(text: str) -> UnderlyingGraph:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty graph file")
    k, toks = lines[0]
    if len(toks) != 1:
        raise FormatError("first line must be the vertex count", k)
    n = _int(toks[0], k, "vertex count")
    split = None
    weights = {}
    for k, toks in lines[1:]:
        if toks[0] == "split":
            if len(toks) != 2 or split is not None:
                raise FormatError("expected one 'split s' line", k)
            split = _int(toks[1], k, "split")
            continue
        if len(toks) != 4:
            raise FormatError("expected 'i j re im'", k)
        i, j = _int(toks[0], k, "vertex") - 1, _int(toks[1], k, "vertex") - 1
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise FormatError(f"bad vertex pair {i + 1} {j + 1}", k)
        key = (min(i, j), max(i, j))
        if key in weights:
            raise FormatError(f"pair {key[0] + 1} {key[1] + 1} given twice", k)
        w = _pair(toks[2], toks[3], k)
        weights[key] = w if i < j else -w
    try:
        return UnderlyingGraph(n, weights, split)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_step(step) -> str:
    if isinstance(step, Flip):
        return f"FLIP {step.side.value} {step.pos + 1}"
    if isinstance(step, GlobalFactor):
        return f"GF {_frac(step.c.re)} {_frac(step.c.im)}"
    if isinstance(step, Exchange):
        return f"EXCH {step.side.value} {step.pos + 1}"
    kind = "BAR" if isinstance(step, Bar) else "SLASH"
    return f"{kind} {step.side.value} {step.pos + 1} {_frac(step.weight.re)} {_frac(step.weight.im)}"


def parse_step(toks, line: int | None = None):
    arity = {"FLIP": 3, "GF": 3, "EXCH": 3, "BAR": 5, "SLASH": 5}
    kind = toks[0]
    if kind not in arity:
        raise FormatError(f"unknown step {kind!r}", line)
    if len(toks) != arity[kind]:
        raise FormatError(f"{kind} takes {arity[kind] - 1} fields", line)
    if kind == "GF":
        c = _pair(toks[1], toks[2], line)
        if not c:
            raise FormatError("global factor must be nonzero", line)
        return GlobalFactor(c)
    try:
        side = Side(toks[1])
    except ValueError:
        raise FormatError(f"side must be 'in' or 'out', got {toks[1]!r}", line) from None
    pos = _int(toks[2], line, "position") - 1
    if pos < 0:
        raise FormatError("positions start at 1", line)
    if kind == "FLIP":
        return Flip(side, pos)
    if kind == "EXCH":
        return Exchange(side, pos)
    w = _pair(toks[3], toks[4], line)
    return (Bar if kind == "BAR" else Slash)(side, pos, w)


def write_log(log) -> str:
    return "".join(format_step(s) + "\n" for s in log)


def read_log(text: str) -> tuple:
    return tuple(parse_step(toks, k) for k, toks in _lines(text))


def write_canonical(c: CanonicalForm) -> str:
    out = [f"s {c.s}", f"t {c.t}", f"r {c.r}"]
    if c.zero:
        out.append("zero")
    for w in c.weights:
        out.append(f"weight {_frac(w.re)} {_frac(w.im)}")
    out.append("[row_log]")
    out.extend(format_step(s) for s in c.row_log)
    out.append("[col_log]")
    out.extend(format_step(s) for s in c.col_log)
    return "\n".join(out) + "\n"


def read_canonical(text: str) -> CanonicalForm:
    head = {}
    weights = []
    zero = False
    logs = {"[row_log]": [], "[col_log]": []}
    section = None
    for k, toks in _lines(text):
        if toks[0] in logs:
            section = toks[0]
        elif section is not None:
            logs[section].append(parse_step(toks, k))
        elif toks[0] in ("s", "t", "r") and len(toks) == 2:
            head[toks[0]] = _int(toks[1], k, toks[0])
        elif toks[0] == "weight" and len(toks) == 3:
            weights.append(_pair(toks[1], toks[2], k))
        elif toks == ["zero"]:
            zero = True
        else:
            raise FormatError(f"unexpected line {' '.join(toks)!r}", k)
    for key in ("s", "t", "r"):
        if key not in head:
            raise FormatError("missing header line", field=key)
    try:
        return CanonicalForm(head["s"], head["t"], head["r"], tuple(weights),
                             tuple(logs["[row_log]"]), tuple(logs["[col_log]"]), zero)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


# -- collapse results ---------------------------------------------------------


def problem_to_json(p: HoloProblem) -> dict:
    return {
        "left": [signature_to_json(f) for f in p.left],
        "base": matrix_to_json(p.base),
        "right": [signature_to_json(h) for h in p.right],
    }


def problem_from_json(data, field: str = "problem") -> HoloProblem:
    try:
        left = [signature_from_json(f, f"{field}.left") for f in data["left"]]
        right = [signature_from_json(h, f"{field}.right") for h in data["right"]]
        base = matrix_from_json(data["base"], f"{field}.base")
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing {exc}", field=field) from None
    try:
        return HoloProblem(left, base, right)
    except ValueError as exc:
        raise FormatError(str(exc), field=field) from None


_MATRIX_EXTRAS = ("A", "P", "Q", "B", "C1", "SAM")


def collapse_to_json(result: CollapsedProblem, original: HoloProblem | None = None, mode: str = "") -> dict:
    c = result.certificate
    cert = {
        "t": c.t,
        "r": c.r,
        "constants": list(c.constants),
        "kept": list(c.kept),
        "col_log": [format_step(s) for s in c.col_log],
    }
    for key in _MATRIX_EXTRAS:
        if key in c.extra:
            cert[key] = matrix_to_json(c.extra[key])
    for key in ("S", "T"):
        if key in c.extra:
            cert[key] = list(c.extra[key])
    out = {"mode": mode, "r": c.r, "collapsed": problem_to_json(result.problem), "certificate": cert}
    if original is not None:
        out["original"] = problem_to_json(original)
    return out


def collapse_from_json(data) -> tuple[CollapsedProblem, HoloProblem | None, str]:
    if not isinstance(data, dict):
        raise FormatError("collapse result must be a JSON object")
    try:
        cert = data["certificate"]
        log = tuple(parse_step(line.split(), None) for line in cert["col_log"])
        extra = {k: matrix_from_json(cert[k], f"certificate.{k}") for k in _MATRIX_EXTRAS if k in cert}
        extra.update({k: tuple(cert[k]) for k in ("S", "T") if k in cert})
        certificate = Certificate(cert["t"], cert["r"], tuple(cert["constants"]), tuple(cert["kept"]), log, extra)
        collapsed = CollapsedProblem(problem_from_json(data["collapsed"], "collapsed"), certificate)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing {exc}", field="certificate") from None
    original = problem_from_json(data["original"], "original") if "original" in data else None
    return collapsed, original, str(data.get("mode", ""))


def read_collapse(text: str):
    return collapse_from_json(_load_json(text))


def write_collapse(result: CollapsedProblem, original: HoloProblem | None = None, mode: str = "") -> str:
    return dump_json(collapse_to_json(result, original, mode))


__all__ = [
    "FormatError",
    "nested",
    "from_nested",
    "signature_to_json",
    "signature_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "read_signature",
    "write_signature",
    "read_matrix",
    "instance_to_json",
    "instance_from_json",
    "read_instance",
    "write_instance",
    "write_graph",
    "read_graph",
    "format_step",
    "parse_step",
    "write_log",
    "read_log",
    "write_canonical",
    "read_canonical",
    "problem_to_json",
    "problem_from_json",
    "collapse_to_json",
    "collapse_from_json",
    "read_collapse",
    "write_collapse",
]
