"""Linear-form text parsing and JSON (de)serialization of arrangements.

Form text: semicolon- or newline-separated linear forms in x1..xl and
optionally z (the cone coordinate, mapped to the last position), with
integer or rational coefficients, e.g. "2*x1 + x2 - 1/2*x5".  Constant
terms are rejected: every hyperplane is central.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction

from .arrangement import Arrangement, arrangement, canonicalize_normal
from .fields import QQ, field_from_json


class FormParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


_TERM = re.compile(
    r"\s*(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?"
    r"(?P<var>x(?P<index>\d+)|z)?\s*")


def _parse_form_terms(text):
    "Yield (coefficient, variable|None) pairs; variable is 'z' or an int."
    pos = 0
    any_term = False
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise FormParseError(f"cannot read a term in {text!r}", pos)
        sign, coef, var, index = m.group("sign", "coef", "var", "index")
        if coef is None and var is None:
            raise FormParseError(f"cannot read a term in {text!r}", pos)
        c = Fraction(coef) if coef and "/" not in coef else (
            Fraction(*map(int, coef.split("/"))) if coef else Fraction(1))
        if sign == "-":
            c = -c
        if var is None:
            raise FormParseError("constant terms are not allowed in a "
                                 f"central form: {text!r}", pos)
        yield c, ("z" if var == "z" else int(index))
        pos = m.end()
        any_term = True
    if not any_term:
        raise FormParseError("empty linear form")


def parse_linear_form(text, dim=None):
    "One linear form to a coefficient vector over the rationals."
    coeffs = {}
    uses_z = False
    max_x = 0
    for c, var in _parse_form_terms(text):
        if var == "z":
            uses_z = True
            coeffs["z"] = coeffs.get("z", Fraction(0)) + c
        else:
            max_x = max(max_x, var)
            coeffs[var] = coeffs.get(var, Fraction(0)) + c
    if dim is None:
        dim = max_x + (1 if uses_z else 0)
    elif max_x + (1 if uses_z else 0) > dim:
        raise FormParseError(f"form {text!r} does not fit in dimension {dim}")
    vec = [Fraction(0)] * dim
    for var, c in coeffs.items():
        vec[dim - 1 if var == "z" else var - 1] = c
    if not any(vec):
        raise FormParseError(f"form {text!r} cancels to zero")
    return tuple(vec)


def split_forms(text):
    parts = re.split(r"[;\n]", text)
    return [p.strip() for p in parts if p.strip()]


def parse_linear_forms(text, dim=None, field=QQ) -> Arrangement:
    """Parse a whole arrangement from form text (rational coefficients);
    duplicate forms collapse with a warning."""
    forms = split_forms(text)
    if dim is None:
        dim = 0
        uses_z = False
        for f in forms:
            for _, var in _parse_form_terms(f):
                if var == "z":
                    uses_z = True
                else:
                    dim = max(dim, var)
        dim += 1 if uses_z else 0
    vectors = [parse_linear_form(f, dim) for f in forms]
    arr = arrangement(dim, field, vectors)
    if len(arr) < len(vectors):
        warnings.warn(f"{len(vectors) - len(arr)} duplicate forms collapsed",
                      stacklevel=2)
    return arr


# ---------------------------------------------------------------------------
# JSON

def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "dim": arr.dim,
        "field": arr.field.to_json(),
        "hyperplanes": [[arr.field.format(x) for x in h.normal]
                        for h in arr.hyperplanes],
    }


def arrangement_from_json(data) -> Arrangement:
    field = field_from_json(data["field"])
    normals = [[field.parse(s) for s in row] for row in data["hyperplanes"]]
    return arrangement(int(data["dim"]), field, normals)


def flat_to_json(arr, flat):
    return [[arr.field.format(x) for x in row] for row in flat.forms]


def graph_to_json(g):
    return {"n": g.n, "edges": [list(e) for e in g.edge_list()]}


def graph_from_json(data):
    from .graphic import graph
    return graph(int(data["n"]), [tuple(e) for e in data["edges"]])
