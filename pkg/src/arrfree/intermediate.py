"""Intermediate arrangements A^k_l(r) over the cyclotomic field of order
r: k coordinate hyperplanes plus all x_i - zeta^n x_j.

The k = 0 and k = l endpoints are the reflection arrangements of the
monomial groups G(r,r,l) and G(r,1,l).  Every hyperplane restriction is
again intermediate, with the resulting label depending only on the
support class of the restricted form, so accuracy can be decided purely
on labels (the symbolic recursion); the cyclotomic brute force replays
the same decision on the actual arrangement as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .accuracy import check_accuracy
from .arrangement import (Arrangement, arrangement, flat_from_normals,
                          localization)
from .fields import CyclotomicField

COORDINATE = "coordinate"           # alpha = x_i
DIFF_BOTH_LOW = "diff_both_low"     # x_i - zeta^n x_j with i < j <= k
DIFF_SPLIT = "diff_split"           # i <= k < j
DIFF_BOTH_HIGH = "diff_both_high"   # k < i < j


@dataclass(frozen=True)
class IntermediateLabel:
    l: int
    r: int
    k: int

    def __post_init__(self):
        if self.l < 2 or self.r < 2 or not 0 <= self.k <= self.l:
            raise ValueError(f"invalid intermediate label {self}")

    def __str__(self):
        return f"A^{self.k}_{self.l}({self.r})"


def build_intermediate(label: IntermediateLabel) -> Arrangement:
    field = CyclotomicField(label.r)
    normals = []
    for i in range(label.k):
        v = [field.zero()] * label.l
        v[i] = field.one()
        normals.append(v)
    for i in range(label.l):
        for j in range(i + 1, label.l):
            for n in range(label.r):
                v = [field.zero()] * label.l
                v[i] = field.one()
                v[j] = -field.zeta(n)
                normals.append(v)
    arr = arrangement(label.l, field, normals)
    assert len(arr) == hyperplane_count(label)
    return arr


def hyperplane_count(label: IntermediateLabel) -> int:
    return label.k + label.r * label.l * (label.l - 1) // 2


def intermediate_exponents(label: IntermediateLabel):
    "(1, r+1, ..., (l-2)r+1, (l-1)r - l + k + 1), sorted."
    l, r, k = label.l, label.r, label.k
    exps = [i * r + 1 for i in range(l - 1)]
    exps.append((l - 1) * r - l + k + 1)
    return tuple(sorted(exps))


def hyperplane_class(label: IntermediateLabel, normal) -> str:
    "Support class of a canonical normal of the built arrangement."
    support = [i for i, x in enumerate(normal) if x]
    if len(support) == 1:
        return COORDINATE
    i, j = support
    if j < label.k:
        return DIFF_BOTH_LOW
    if i < label.k:
        return DIFF_SPLIT
    return DIFF_BOTH_HIGH


def table2_restriction_types(label: IntermediateLabel):
    """Applicable (class, resulting label) rows for this label: the
    endpoints have a single class, interior k splits by support."""
    l, r, k = label.l, label.r, label.k
    rows = []
    if k == 0:
        rows.append((DIFF_BOTH_HIGH, IntermediateLabel(l - 1, r, 1)))
    elif k == l:
        rows.append((DIFF_BOTH_LOW, IntermediateLabel(l - 1, r, l - 1)))
        rows.append((COORDINATE, IntermediateLabel(l - 1, r, l - 1)))
    else:
        if k >= 2:
            rows.append((DIFF_BOTH_LOW, IntermediateLabel(l - 1, r, k - 1)))
        rows.append((DIFF_SPLIT, IntermediateLabel(l - 1, r, k)))
        if k <= l - 2:
            rows.append((DIFF_BOTH_HIGH, IntermediateLabel(l - 1, r, k + 1)))
        rows.append((COORDINATE, IntermediateLabel(l - 1, r, l - 1)))
    return rows


# ---------------------------------------------------------------------------
# symbolic accuracy over labels

def _reachable_at_level(label: IntermediateLabel, level: int):
    "Labels reachable from `label` by restriction chains down to l = level."
    frontier = {label}
    current = label.l
    while current > level:
        nxt = set()
        for lab in frontier:
            for _, res in table2_restriction_types(lab):
                nxt.add(res)
        frontier = nxt
        current -= 1
    return frontier


def symbolic_accuracy(label: IntermediateLabel) -> str:
    """Dimension-by-dimension decision over the restriction-label graph:
    accurate iff every exact exponent prefix is realized by a chain.
    Dimension 1 is always realizable (any full-rank chain bottoms out in a
    single hyperplane on a line, exponents (1,))."""
    exps = intermediate_exponents(label)
    for d in range(2, label.l):
        prefix = exps[:d]
        hit = any(intermediate_exponents(lab) == prefix
                  for lab in _reachable_at_level(label, d))
        if not hit:
            return "not_accurate"
    return "accurate"


def closed_form_accuracy(label: IntermediateLabel) -> str:
    """The classification: interior k is accurate iff r = 2 or r + k >= l;
    k = l (full monomial group) is always accurate; k = 0 is the G(r,r,l)
    reflection arrangement, accurate only for r = 2 or l = 2."""
    l, r, k = label.l, label.r, label.k
    if k == l:
        return "accurate"
    if k == 0:
        return "accurate" if (r == 2 or l == 2) else "not_accurate"
    return "accurate" if (r == 2 or r + k >= l) else "not_accurate"


def bruteforce_cross_check(label: IntermediateLabel, max_flats=None) -> str:
    "Full accuracy decision on the built cyclotomic arrangement."
    arr = build_intermediate(label)
    report = check_accuracy(arr, intermediate_exponents(label), mode="exact",
                            strategy="exhaustive", max_flats=max_flats)
    return report.verdict


def restriction_exponent_set(label: IntermediateLabel):
    "Exponent vectors of all hyperplane restrictions, per the label rows."
    return sorted({intermediate_exponents(res)
                   for _, res in table2_restriction_types(label)})


def localization_fixture_check(l: int, r: int, max_flats=None):
    """Accuracy is not preserved under localization: A^1_l(r) for
    r >= l-1 >= 3 is accurate, but its localization at
    X = intersection of all x_i - zeta^n x_j with 2 <= i < j <= l is a copy
    of A^0_{l-1}(r), which is not.  Returns the verified report."""
    if l < 4:
        raise ValueError("the localization fixture needs l >= 4")
    if r < l - 1:
        raise ValueError("the localization fixture needs r >= l - 1")
    label = IntermediateLabel(l, r, 1)
    arr = build_intermediate(label)
    field = arr.field
    cut = []
    for i in range(1, l):
        for j in range(i + 1, l):
            for n in range(r):
                v = [field.zero()] * l
                v[i] = field.one()
                v[j] = -field.zeta(n)
                cut.append(v)
    x = flat_from_normals(arr, cut)
    loc = localization(arr, x)
    # the localized normals live in coordinates 2..l; drop the dead one
    projected = arrangement(l - 1, field,
                            [h.normal[1:] for h in loc.hyperplanes])
    target = build_intermediate(IntermediateLabel(l - 1, r, 0))
    iso = projected.normal_set() == target.normal_set()
    ambient_verdict = symbolic_accuracy(label)
    local_verdict = symbolic_accuracy(IntermediateLabel(l - 1, r, 0))
    return {
        "label": str(label),
        "flat_rank": x.rank,
        "localization_isomorphic_to": str(IntermediateLabel(l - 1, r, 0)),
        "isomorphism_verified": iso,
        "ambient_verdict": ambient_verdict,
        "localization_verdict": local_verdict,
        "verdicts_differ": ambient_verdict != local_verdict,
    }
