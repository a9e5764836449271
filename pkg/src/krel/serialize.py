"""JSON documents for spaces, subspaces, relations and boundary relations.

Scalars are strings ``"a/b+c/d*i"``; matrices are row-major nested lists;
subspaces and relation graphs are lists of column vectors.  Instance
documents carry ``kind`` and ``schemaVersion`` next to the payload keys.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import KrelError, ParseError
from .scalars import Arithmetic, default_arithmetic, format_scalar, parse_scalar
from .spaces import KreinSpace, Subspace, krein_space, span

__all__ = [
    "SCHEMA_VERSION",
    "encode_scalar",
    "encode_vector",
    "encode_matrix",
    "encode_columns",
    "encode_space",
    "encode_subspace",
    "encode_relation",
    "encode_relation_graph",
    "encode_gbr",
    "decode_space",
    "decode_subspace",
    "decode_relation",
    "decode_gbr",
    "decode_document",
    "instance",
    "load_document",
    "dumps",
]

SCHEMA_VERSION = 1
KINDS = ("space", "subspace", "relation", "gbr")


def encode_scalar(z) -> str:
    return format_scalar(z)


def encode_vector(v) -> list[str]:
    return [format_scalar(x) for x in np.asarray(v).reshape(-1)]


def encode_matrix(a) -> list[list[str]]:
    a = np.asarray(a)
    return [[format_scalar(x) for x in row] for row in a]


def encode_columns(b) -> list[list[str]]:
    b = np.asarray(b)
    return [encode_vector(b[:, j]) for j in range(b.shape[1])]


def encode_space(k: KreinSpace) -> dict:
    out = {"dim": k.dim, "gram": encode_matrix(k.gram)}
    if k.label:
        out["label"] = k.label
    return out


def encode_subspace(s: Subspace) -> dict:
    return {"ambient": encode_space(s.ambient), "basis": encode_columns(s.basis)}


def encode_relation_graph(r) -> dict:
    """Graph of a relation without its spaces (used inside larger reports)."""
    return {"dims": [r.n, r.m], "graph": encode_columns(r.graph.basis)}


def encode_relation(r) -> dict:
    return {"from": encode_space(r.source), "to": encode_space(r.target),
            "graph": encode_columns(r.graph.basis)}


def encode_gbr(g) -> dict:
    return {"K": encode_space(g.K), "H": encode_space(g.H), "graph": encode_columns(g.basis)}


def instance(kind: str, payload: dict) -> dict:
    """Wrap a payload as an instance document."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    return {"schemaVersion": SCHEMA_VERSION, "kind": kind, **payload}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# decoding ------------------------------------------------------------------------------

def _need(doc, key, what):
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be a JSON object")
    if key not in doc:
        raise ParseError(f"{what} lacks the {key!r} field")
    return doc[key]


def _scalar(x):
    if isinstance(x, bool):
        raise ParseError("booleans are not scalars")
    if isinstance(x, (int, float)):
        return parse_scalar(repr(x)) if isinstance(x, float) else parse_scalar(str(x))
    return parse_scalar(x)


def _matrix(ar: Arithmetic, rows, nrows=None, ncols=None, what="matrix") -> np.ndarray:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{what} must be a list of lists")
    if nrows is not None and len(rows) != nrows:
        raise ParseError(f"{what} has {len(rows)} rows, expected {nrows}")
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ParseError(f"{what} is ragged")
    width = widths.pop() if widths else (ncols or 0)
    if ncols is not None and width != ncols:
        raise ParseError(f"{what} has {width} columns, expected {ncols}")
    data = [[_scalar(x) for x in r] for r in rows]
    if not data:
        return ar.zeros(0, width)
    return ar.convert(np.array(data, dtype=object).reshape(len(rows), width))


def _columns(ar: Arithmetic, cols, length: int, what="graph") -> np.ndarray:
    if not isinstance(cols, list):
        raise ParseError(f"{what} must be a list of column vectors")
    if not cols:
        return ar.zeros(length, 0)
    m = _matrix(ar, cols, ncols=length, what=what)
    return np.ascontiguousarray(m.T)


def decode_space(doc, arithmetic: Arithmetic | None = None) -> KreinSpace:
    ar = arithmetic or default_arithmetic()
    gram = _need(doc, "gram", "space")
    dim = doc.get("dim")
    if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool) or dim < 0):
        raise ParseError("space dim must be a natural number")
    g = _matrix(ar, gram, nrows=dim, ncols=dim, what="gram")
    return krein_space(g, label=str(doc.get("label", "")), arithmetic=ar)


def decode_subspace(doc, arithmetic: Arithmetic | None = None) -> Subspace:
    ar = arithmetic or default_arithmetic()
    amb = decode_space(_need(doc, "ambient", "subspace"), ar)
    return span(amb, _columns(ar, _need(doc, "basis", "subspace"), amb.dim, "basis"))


def decode_relation(doc, arithmetic: Arithmetic | None = None):
    """Relation document; identical ``from``/``to`` entries (or a missing ``to``) give a relation in one space."""
    from .relations import relation

    ar = arithmetic or default_arithmetic()
    src_doc = _need(doc, "from", "relation")
    src = decode_space(src_doc, ar)
    tgt_doc = doc.get("to", src_doc)
    tgt = src if tgt_doc == src_doc else decode_space(tgt_doc, ar)
    vecs = _columns(ar, _need(doc, "graph", "relation"), src.dim + tgt.dim)
    return relation(src, tgt, vecs)


def decode_gbr(doc, arithmetic: Arithmetic | None = None):
    from .green import build_gbr

    ar = arithmetic or default_arithmetic()
    K = decode_space(_need(doc, "K", "gbr"), ar)
    H = decode_space(_need(doc, "H", "gbr"), ar)
    vecs = _columns(ar, _need(doc, "graph", "gbr"), 2 * (K.dim + H.dim))
    return build_gbr(K, H, vecs)


def _infer_kind(doc: dict) -> str:
    if "kind" in doc:
        kind = doc["kind"]
        if kind not in KINDS:
            raise ParseError(f"unknown document kind {kind!r}")
        return kind
    if "K" in doc and "H" in doc:
        return "gbr"
    if "from" in doc:
        return "relation"
    if "ambient" in doc:
        return "subspace"
    if "gram" in doc:
        return "space"
    raise ParseError("cannot tell the document kind")


def decode_document(doc, arithmetic: Arithmetic | None = None):
    """``(kind, value)`` for an instance document."""
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = doc.get("schemaVersion", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schemaVersion {version!r}")
    kind = _infer_kind(doc)
    decoder = {"space": decode_space, "subspace": decode_subspace,
               "relation": decode_relation, "gbr": decode_gbr}[kind]
    try:
        return kind, decoder(doc, arithmetic)
    except KrelError:
        raise
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed {kind} document: {exc}") from exc


def load_document(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return doc
