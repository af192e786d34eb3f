"""Built-in demonstration arrangements.

FREE_NOT_DIVISIONAL_FORMS is a rank-5 arrangement of 21 hyperplanes that
is free with exponents (1,5,5,5,5) and accurate, yet admits no divisional
flag: the unique dimension-4 witness ker(x4) contains neither of the two
dimension-3 witnesses.  It lives inside a rank-5 restriction of the E7
Weyl arrangement.
"""

from __future__ import annotations

from .arrangement import Arrangement, flat_from_normals
from .parsing import parse_linear_form, parse_linear_forms

FREE_NOT_DIVISIONAL_FORMS = """
x2; x1 + x3 - x5; 2*x1 + x2 + x3; 2*x1 + x2 + 2*x3 + x4 - x5;
x5; x1 + x3; x2 + x5; 2*x1 + x2 + 2*x3 + x4; 2*x1 + x3 - x5;
2*x1 + 2*x2 + 2*x3 + x4; x2 + x3 + x4; x1 + x2 + x3 + x4;
x3 + x4; x1 + x2 + x3; x1; x1 + x3 + x4; 2*x1 + x2 + x3 - x5;
x2 + x3 + x4 + x5; x1 - x5; x1 - x4 - x5; x4
"""

FREE_NOT_DIVISIONAL_EXPONENTS = (1, 5, 5, 5, 5)

# the two dimension-3 witness flats, as pairs of defining forms
WITNESS_X1_FORMS = ("2*x1 + x2 + x3", "2*x1 + x2 + 2*x3 + x4 - x5")
WITNESS_X2_FORMS = ("x2 + x5", "x2 + x3 + x4")


def free_not_divisional() -> Arrangement:
    return parse_linear_forms(FREE_NOT_DIVISIONAL_FORMS, dim=5)


def witness_flat(arr: Arrangement, which: str):
    forms = {"X1": WITNESS_X1_FORMS, "X2": WITNESS_X2_FORMS}[which]
    return flat_from_normals(arr, [parse_linear_form(f, dim=5)
                                   for f in forms])
