"""Bit-exact interchange formats for operators and generator images.

Operators serialize as {p, n, terms: [{coeff, x_exp, d_exp}]} with terms
in canonical order (divided index by total degree then lex, descending;
exponent vectors lex descending inside a part).  Generator image files
embed full operator objects.  JSON rendering is pinned (sorted keys,
two-space indent, trailing newline) so golden files compare byte for
byte.
"""

from __future__ import annotations

import json

from .autgroup import GeneratorImages, ShiftVector
from .diffop import DiffOp
from .errors import MismatchError
from .laurent import LaurentPoly
from .scalars import as_prime


def op_to_dict(op: DiffOp) -> dict:
    terms = []
    for beta, f in op.sorted_parts():
        for exps, c in f.sorted_terms():
            terms.append({"coeff": c, "x_exp": list(exps), "d_exp": list(beta)})
    return {"p": op.p.p, "n": op.n, "terms": terms}


def op_from_dict(data: dict) -> DiffOp:
    p = as_prime(data["p"])
    n = int(data["n"])
    parts: dict[tuple[int, ...], dict] = {}
    for entry in data["terms"]:
        beta = tuple(int(e) for e in entry["d_exp"])
        exps = tuple(int(e) for e in entry["x_exp"])
        if len(beta) != n or len(exps) != n:
            raise MismatchError(f"exponent arrays must have length {n}")
        parts.setdefault(beta, {})[exps] = int(entry["coeff"])
    return DiffOp(p, n, {b: LaurentPoly(p, n, t) for b, t in parts.items()})


def poly_to_dict(f: LaurentPoly) -> dict:
    return {
        "p": f.p.p,
        "n": f.n,
        "terms": [{"coeff": c, "x_exp": list(e)} for e, c in f.sorted_terms()],
    }


def poly_from_dict(data: dict) -> LaurentPoly:
    p = as_prime(data["p"])
    n = int(data["n"])
    return LaurentPoly(
        p, n, {tuple(int(e) for e in t["x_exp"]): int(t["coeff"]) for t in data["terms"]}
    )


def images_to_dict(g: GeneratorImages) -> dict:
    return {
        "p": g.p.p,
        "n": g.n,
        "precision": g.precision,
        "x_images": [op_to_dict(img) for img in g.x_images],
        "xinv_images": [op_to_dict(img) for img in g.xinv_images],
        "d_images": [[op_to_dict(img) for img in row] for row in g.d_images],
    }


def images_from_dict(data: dict) -> GeneratorImages:
    p = as_prime(data["p"])
    n = int(data["n"])
    precision = int(data["precision"])

    def read(entry) -> DiffOp:
        op = op_from_dict(entry)
        if op.p != p or op.n != n:
            raise MismatchError("embedded operator disagrees with file header")
        return op

    return GeneratorImages(
        p,
        n,
        precision,
        tuple(read(e) for e in data["x_images"]),
        tuple(read(e) for e in data["xinv_images"]),
        tuple(tuple(read(e) for e in row) for row in data["d_images"]),
    )


def shift_to_dict(s: ShiftVector) -> dict:
    return {
        "p": s.p.p,
        "n": s.n,
        "precision": s.precision,
        "digits": s.digit_rows(),
    }


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
