"""JSON serialisation with bit-exact round trips and strict validation.

Every file carries a format-version field; a major-version mismatch is an
error.  Matrix entries are written as length-m coefficient lists
(length 1 over prime fields).  Loading re-validates all structural
invariants and rejects rather than repairs.
"""

from __future__ import annotations

import json

import numpy as np

from .field import Field, GF
from .linalg import Mat
from .reps import Rep, validate_rep
from .graded import GradedRep, validate_graded

__all__ = ["save", "load", "to_json", "from_json", "FORMAT_VERSION"]

FORMAT_VERSION = "1.0"


class FormatError(ValueError):
    pass


def _field_to_json(F: Field) -> dict:
    return {"p": F.p, "m": F.m, "modulus": list(F.modulus)}


def _field_from_json(d: dict) -> Field:
    try:
        p, m, modulus = int(d["p"]), int(d["m"]), tuple(int(c) for c in d["modulus"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad field record: {exc}")
    F = GF(p, m)
    if F.modulus != modulus:
        F = Field(p, m, modulus)
    return F


def _mat_to_json(M: Mat) -> dict:
    F = M.field
    return {
        "field": _field_to_json(F),
        "rows": M.rows,
        "cols": M.cols,
        "entries": [F.coeffs(int(e)) for e in M.a.reshape(-1)],
    }


def _mat_from_json(d: dict) -> Mat:
    F = _field_from_json(d["field"])
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    if len(entries) != rows * cols:
        raise FormatError("entry count does not match the shape")
    flat = np.zeros(rows * cols, dtype=np.int64)
    for i, coeffs in enumerate(entries):
        if len(coeffs) != F.m:
            raise FormatError("coefficient list has the wrong length")
        if any(not 0 <= int(c) < F.p for c in coeffs):
            raise FormatError("coefficient out of range")
        flat[i] = F.encode_coeffs(coeffs)
    return Mat(F, flat.reshape(rows, cols))


def to_json(obj) -> dict:
    """Serialisable dict for a Mat, Rep or GradedRep."""
    if isinstance(obj, Mat):
        body = _mat_to_json(obj)
        body.update(format_version=FORMAT_VERSION, kind="matrix")
        return body
    if isinstance(obj, Rep):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "rep",
            "field": _field_to_json(obj.field),
            "dim": obj.dim,
            "E": _mat_to_json(obj.E),
            "F": _mat_to_json(obj.F),
            "H": _mat_to_json(obj.H),
        }
    if isinstance(obj, GradedRep):
        body = to_json(obj.rep)
        body["kind"] = "graded_rep"
        body["r"] = obj.r
        body["deg"] = [int(x) for x in obj.deg]
        if obj.shift_step is not None:
            body["shift_step"] = obj.shift_step
            body["shift_perm"] = [int(x) for x in obj.shift_perm]
        return body
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def from_json(d: dict):
    """Rebuild and re-validate an object from its dict form."""
    try:
        version = str(d["format_version"])
        kind = d["kind"]
    except (KeyError, TypeError):
        raise FormatError("missing format_version or kind")
    if version.split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise FormatError(f"major version mismatch: {version} vs {FORMAT_VERSION}")
    if kind == "matrix":
        return _mat_from_json(d)
    if kind in ("rep", "graded_rep"):
        F = _field_from_json(d["field"])
        E, Fm, H = (_mat_from_json(d[k]) for k in ("E", "F", "H"))
        if not (E.field == Fm.field == H.field == F):
            raise FormatError("component fields disagree")
        if int(d["dim"]) != E.rows:
            raise FormatError("declared dimension disagrees with the matrices")
        rep = validate_rep(Rep(F, E, Fm, H))
        if kind == "rep":
            return rep
        deg = tuple(int(x) for x in d["deg"])
        step = d.get("shift_step")
        perm = d.get("shift_perm")
        return validate_graded(GradedRep(
            rep, int(d["r"]), deg,
            None if step is None else int(step),
            None if perm is None else tuple(int(x) for x in perm)))
    raise FormatError(f"unknown kind {kind!r}")


def save(obj, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json(obj), fh)


def load(path):
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"malformed file: {exc}")
    return from_json(d)
