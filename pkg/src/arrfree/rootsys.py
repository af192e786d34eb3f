"""Crystallographic root systems, root posets, ideals, and the Weyl and
ideal arrangements they define.

Coordinate models are rational throughout: A_n in n+1 coordinates,
B/C/D/F in rank-many, E6/E7 filtered out of the 8-coordinate E8 model by
vanishing tail coefficients, and G2 in its simple-root basis (its
Euclidean plane model needs sqrt 3).  Simple-root coefficients come from
an exact linear solve against the simple basis, never from per-family
closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arrangement import Arrangement, arrangement
from .fields import QQ
from .linalg import reduce_vector, rref

_VALID = {"A": lambda n: n >= 1, "B": lambda n: n >= 2, "C": lambda n: n >= 2,
          "D": lambda n: n >= 3, "E": lambda n: n in (6, 7, 8),
          "F": lambda n: n == 4, "G": lambda n: n == 2}

_COXETER = {"A": lambda n: n + 1, "B": lambda n: 2 * n, "C": lambda n: 2 * n,
            "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
            "F": lambda n: 12, "G": lambda n: 6}


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        ok = _VALID.get(self.family)
        if ok is None or not ok(self.rank):
            raise ValueError(f"invalid root system type {self.family}{self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_type(text: str) -> RootSystemType:
    text = text.strip().upper()
    if len(text) < 2 or text[0] not in _VALID:
        raise ValueError(f"cannot parse root system type {text!r}")
    return RootSystemType(text[0], int(text[1:]))


@dataclass(frozen=True)
class Root:
    coords: tuple
    simple_coeffs: tuple
    height: int


@dataclass(frozen=True)
class RootSystem:
    rstype: RootSystemType
    dim: int
    simples: tuple
    positive_roots: tuple

    @property
    def rank(self):
        return self.rstype.rank

    def coxeter_number(self):
        return _COXETER[self.rstype.family](self.rstype.rank)

    def highest_root(self):
        return max(self.positive_roots, key=lambda r: r.height)

    def root_index(self, root: Root):
        return self.positive_roots.index(root)


def _e(dim, i, value=1):
    v = [Fraction(0)] * dim
    v[i] = Fraction(value)
    return v


def _raw_roots(rstype):
    "Positive root coordinate vectors plus simple-root vectors."
    fam, n = rstype.family, rstype.rank
    if fam == "A":
        dim = n + 1
        roots = []
        for i in range(dim):
            for j in range(i + 1, dim):
                v = _e(dim, i)
                v[j] = Fraction(-1)
                roots.append(v)
        simples = []
        for i in range(n):
            v = _e(dim, i)
            v[i + 1] = Fraction(-1)
            simples.append(v)
        return dim, simples, roots
    if fam in ("B", "C", "D"):
        dim = n
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                v = _e(dim, i)
                v[j] = Fraction(-1)
                roots.append(v)
                w = _e(dim, i)
                w[j] = Fraction(1)
                roots.append(w)
        if fam == "B":
            roots.extend(_e(dim, i) for i in range(n))
        elif fam == "C":
            roots.extend(_e(dim, i, 2) for i in range(n))
        simples = []
        for i in range(n - 1):
            v = _e(dim, i)
            v[i + 1] = Fraction(-1)
            simples.append(v)
        if fam == "B":
            simples.append(_e(dim, n - 1))
        elif fam == "C":
            simples.append(_e(dim, n - 1, 2))
        else:
            v = _e(dim, n - 2)
            v[n - 1] = Fraction(1)
            simples.append(v)
        return dim, simples, roots
    if fam == "F":
        dim = 4
        roots = [_e(dim, i) for i in range(4)]
        for i in range(4):
            for j in range(i + 1, 4):
                v = _e(dim, i)
                v[j] = Fraction(-1)
                roots.append(v)
                w = _e(dim, i)
                w[j] = Fraction(1)
                roots.append(w)
        for s2 in (1, -1):
            for s3 in (1, -1):
                for s4 in (1, -1):
                    roots.append([Fraction(1, 2), Fraction(s2, 2),
                                  Fraction(s3, 2), Fraction(s4, 2)])
        a1 = _e(dim, 1)
        a1[2] = Fraction(-1)
        a2 = _e(dim, 2)
        a2[3] = Fraction(-1)
        a3 = _e(dim, 3)
        a4 = [Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)]
        return dim, [a1, a2, a3, a4], roots
    if fam == "G":
        # simple-root basis: coordinates are the simple coefficients
        dim = 2
        data = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        roots = [[Fraction(a), Fraction(b)] for a, b in data]
        return dim, roots[:2], roots
    # E6/E7/E8 share the 8-coordinate model
    dim = 8
    roots = []
    for i in range(8):
        for j in range(i + 1, 8):
            v = _e(dim, j)
            v[i] = Fraction(-1)
            roots.append(v)
            w = _e(dim, j)
            w[i] = Fraction(1)
            roots.append(w)
    for signs in range(1 << 7):
        if bin(signs).count("1") % 2 == 0:
            v = [Fraction(1, 2) if not (signs >> i & 1) else Fraction(-1, 2)
                 for i in range(7)]
            v.append(Fraction(1, 2))
            roots.append(v)
    a1 = [Fraction(1, 2)] + [Fraction(-1, 2)] * 6 + [Fraction(1, 2)]
    a2 = _e(dim, 0)
    a2[1] = Fraction(1)
    simples = [a1, a2]
    for i in range(6):
        v = _e(dim, i + 1)
        v[i] = Fraction(-1)
        simples.append(v)
    return dim, simples, roots


def _solve_coeffs(simples, vec):
    """Express vec in the simple basis: eliminate against the augmented
    rref of the simples and read the combination off the bookkeeping tail."""
    k = len(simples)
    rows = [list(s) + [Fraction(1 if j == i else 0) for j in range(k)]
            for i, s in enumerate(simples)]
    basis = rref(rows)
    residual = reduce_vector(list(vec) + [Fraction(0)] * k, basis)
    if any(residual[:len(vec)]):
        return None
    return tuple(-residual[len(vec) + i] for i in range(k))


@lru_cache(maxsize=None)
def build_root_system(rstype: RootSystemType) -> RootSystem:
    dim, simples, raw = _raw_roots(rstype)
    if rstype.family == "E":
        full = build_root_system(RootSystemType("E", 8)) if rstype.rank < 8 else None
        if full is not None:
            keep = [r for r in full.positive_roots
                    if all(c == 0 for c in r.simple_coeffs[rstype.rank:])]
            roots = tuple(Root(r.coords, r.simple_coeffs[:rstype.rank], r.height)
                          for r in sorted(keep, key=_root_order))
            simple_roots = tuple(r for r in roots if r.height == 1)
            rs = RootSystem(rstype, 8, simple_roots, roots)
            _validate(rs)
            return rs
    roots = []
    for vec in raw:
        coeffs = _solve_coeffs(simples, vec)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            raise AssertionError(f"root {vec} not integral over simples")
        ints = tuple(int(c) for c in coeffs)
        if all(c >= 0 for c in ints):
            root = Root(tuple(vec), ints, sum(ints))
        else:
            raise AssertionError(f"negative root {vec} in positive list")
        roots.append(root)
    roots.sort(key=_root_order)
    rs = RootSystem(rstype, dim, tuple(r for r in roots if r.height == 1),
                    tuple(roots))
    _validate(rs)
    return rs


def _root_order(root):
    return (root.height, root.simple_coeffs)


def _validate(rs):
    n, h = rs.rank, rs.coxeter_number()
    assert len(rs.positive_roots) == n * h // 2, rs.rstype
    assert len(rs.simples) == n
    assert rs.highest_root().height == h - 1


def root_poset_leq(beta: Root, gamma: Root) -> bool:
    "beta <= gamma iff gamma - beta has nonnegative simple coefficients."
    if len(beta.simple_coeffs) != len(gamma.simple_coeffs):
        raise ValueError("roots from different systems")
    return all(g - b >= 0
               for b, g in zip(beta.simple_coeffs, gamma.simple_coeffs))


# ---------------------------------------------------------------------------
# ideals of the root poset

@dataclass(frozen=True)
class Ideal:
    rstype: RootSystemType
    roots: tuple  # sorted indices into positive_roots

    def __len__(self):
        return len(self.roots)


def ideal_from_indices(rs: RootSystem, indices) -> Ideal:
    indices = sorted(set(indices))
    pr = rs.positive_roots
    for i in indices:
        below = [j for j in range(len(pr))
                 if root_poset_leq(pr[j], pr[i])]
        if not set(below) <= set(indices):
            raise ValueError("root set is not downward closed")
    return Ideal(rs.rstype, tuple(indices))


def ideal_closure(rs: RootSystem, generator_indices) -> Ideal:
    "Downward closure of a set of roots (antichain generators accepted)."
    pr = rs.positive_roots
    keep = set()
    for i in generator_indices:
        for j in range(len(pr)):
            if root_poset_leq(pr[j], pr[i]):
                keep.add(j)
    return Ideal(rs.rstype, tuple(sorted(keep)))


def full_ideal(rs: RootSystem) -> Ideal:
    return Ideal(rs.rstype, tuple(range(len(rs.positive_roots))))


def enumerate_ideals(rstype: RootSystemType, max_positive_roots=30):
    """All order ideals, enumerated by including/skipping roots along the
    height linear extension; deterministic order."""
    rs = build_root_system(rstype)
    pr = rs.positive_roots
    if len(pr) > max_positive_roots:
        raise ValueError(
            f"{rstype} has {len(pr)} positive roots, over the cap "
            f"{max_positive_roots}")
    below = []
    for i in range(len(pr)):
        below.append(frozenset(
            j for j in range(len(pr)) if j != i and root_poset_leq(pr[j], pr[i])))
    out = []

    def walk(i, current):
        if i == len(pr):
            out.append(Ideal(rstype, tuple(sorted(current))))
            return
        walk(i + 1, current)
        if below[i] <= current:
            walk(i + 1, current | {i})

    walk(0, frozenset())
    out.sort(key=lambda ideal: (len(ideal.roots), ideal.roots))
    return out


def highest_root(rstype: RootSystemType) -> Root:
    return build_root_system(rstype).highest_root()


def coxeter_number(rstype: RootSystemType) -> int:
    return build_root_system(rstype).coxeter_number()


# ---------------------------------------------------------------------------
# arrangements from ideals

def ideal_arrangement(rstype: RootSystemType, ideal: Ideal) -> Arrangement:
    "Hyperplanes ker(beta) for beta in the ideal; Phi+ gives the Weyl case."
    rs = build_root_system(rstype)
    if ideal.rstype != rstype:
        raise ValueError("ideal belongs to a different root system")
    return arrangement(rs.dim, QQ,
                       [rs.positive_roots[i].coords for i in ideal.roots])


def weyl_arrangement(rstype: RootSystemType) -> Arrangement:
    rs = build_root_system(rstype)
    return ideal_arrangement(rstype, full_ideal(rs))


def root_height_partition(rstype: RootSystemType, ideal: Ideal):
    """Ordered blocks of hyperplane indices (into ideal_arrangement, whose
    order is the ideal's root order) grouped by root height 1..m_I."""
    rs = build_root_system(rstype)
    heights = [rs.positive_roots[i].height for i in ideal.roots]
    if not heights:
        return []
    blocks = []
    for h in range(1, max(heights) + 1):
        blocks.append(tuple(pos for pos, hh in enumerate(heights) if hh == h))
    return blocks
