"""Central hyperplane arrangements and their intersection lattices.

Flats are keyed by the reduced row echelon basis of the linear forms
vanishing on them, which is canonical for the subspace, so deduplication
and hashing are exact.  The lattice is built level by level (rank k flats
intersected with hyperplanes), and the Moebius function is evaluated with
the subset order on contains-masks: Y >= X as subspaces iff the hyperplane
set through Y is contained in the one through X.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fields import Field, scalar_key
from .linalg import (in_row_space, matrix_rank, pivot_columns, reduce_vector,
                     rref, rref_insert)
from .polynomials import integer_roots_if_splits, poly_divides

DEFAULT_MAX_FLATS = 2_000_000


class CapExceededError(RuntimeError):
    """Lattice growth hit the configured flat cap.

    Carries partial progress: counts of flats per completed rank."""

    def __init__(self, message, level_sizes):
        super().__init__(message)
        self.level_sizes = tuple(level_sizes)


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple

    def __repr__(self):
        return f"Hyperplane({self.normal})"


@dataclass(frozen=True)
class Arrangement:
    dim: int
    field: Field
    hyperplanes: tuple

    def __len__(self):
        return len(self.hyperplanes)

    def normals(self):
        return tuple(h.normal for h in self.hyperplanes)

    def normal_set(self):
        return frozenset(h.normal for h in self.hyperplanes)

    def rank(self):
        return matrix_rank(self.normals())


def canonicalize_normal(vec, field):
    "Scale so the first nonzero coordinate is 1."
    vec = tuple(field.scalar(x) for x in vec)
    lead = next((x for x in vec if x), None)
    if lead is None:
        raise ValueError("zero vector does not define a hyperplane")
    if lead != field.one():
        vec = tuple(x / lead for x in vec)
    return vec


def arrangement(dim, field, normals) -> Arrangement:
    "Canonicalize and deduplicate normals, keeping first-seen order."
    seen = set()
    hyps = []
    for vec in normals:
        if len(vec) != dim:
            raise ValueError(f"normal {vec!r} has length != {dim}")
        cv = canonicalize_normal(vec, field)
        if cv not in seen:
            seen.add(cv)
            hyps.append(Hyperplane(cv))
    return Arrangement(dim, field, tuple(hyps))


def deletion(arr: Arrangement, h) -> Arrangement:
    "Remove one hyperplane (given as Hyperplane, index, or normal)."
    if isinstance(h, Hyperplane):
        target = h
    elif isinstance(h, int):
        target = arr.hyperplanes[h]
    else:
        target = Hyperplane(canonicalize_normal(h, arr.field))
    if target not in arr.hyperplanes:
        raise ValueError("hyperplane not present in the arrangement")
    return Arrangement(arr.dim, arr.field,
                       tuple(x for x in arr.hyperplanes if x != target))


# ---------------------------------------------------------------------------
# flats

@dataclass(frozen=True)
class Flat:
    forms: tuple          # rref basis of the vanishing forms
    contains: frozenset   # hyperplane indices through the flat

    @property
    def rank(self):
        return len(self.forms)

    def __repr__(self):
        return f"Flat(rank={self.rank}, contains={sorted(self.contains)})"


def _contains_of(arr, forms):
    return frozenset(i for i, h in enumerate(arr.hyperplanes)
                     if in_row_space(h.normal, forms))


def ambient_flat(arr) -> Flat:
    return Flat((), frozenset())


def flat_from_normals(arr, vectors) -> Flat:
    forms = rref([canonicalize_normal(v, arr.field) for v in vectors])
    return Flat(forms, _contains_of(arr, forms))


def flat_from_hyperplanes(arr, indices) -> Flat:
    if not indices:
        return ambient_flat(arr)
    return flat_from_normals(arr, [arr.hyperplanes[i].normal for i in indices])


def _check_flat(arr, flat):
    "A genuine flat is spanned by the normals of the hyperplanes through it."
    if flat.rank == 0:
        return
    span = rref([arr.hyperplanes[i].normal for i in flat.contains])
    if span != flat.forms:
        raise ValueError("flat does not belong to the intersection lattice")


def localization(arr: Arrangement, flat: Flat) -> Arrangement:
    "Sub-arrangement of the hyperplanes containing the flat; same ambient."
    _check_flat(arr, flat)
    keep = sorted(flat.contains)
    return Arrangement(arr.dim, arr.field,
                       tuple(arr.hyperplanes[i] for i in keep))


def restriction(arr: Arrangement, flat: Flat) -> Arrangement:
    return restriction_with_map(arr, flat)[0]


def restriction_with_map(arr, flat):
    """Restrict to a flat of rank q >= 1: arrangement in dim - q coordinates
    (the non-pivot columns of the flat's echelon basis, ascending), plus a
    map from restricted hyperplane index to originating indices."""
    _check_flat(arr, flat)
    if flat.rank == 0:
        raise ValueError("restriction needs a flat of rank >= 1")
    pivots = set(pivot_columns(flat.forms))
    free = [c for c in range(arr.dim) if c not in pivots]
    out = []
    seen = {}
    origins = []
    for i, h in enumerate(arr.hyperplanes):
        if i in flat.contains:
            continue
        residual = reduce_vector(h.normal, flat.forms)
        vec = canonicalize_normal([residual[c] for c in free], arr.field)
        if vec in seen:
            origins[seen[vec]].append(i)
        else:
            seen[vec] = len(out)
            out.append(vec)
            origins.append([i])
    restricted = Arrangement(len(free), arr.field,
                             tuple(Hyperplane(v) for v in out))
    return restricted, tuple(tuple(o) for o in origins)


# ---------------------------------------------------------------------------
# the intersection lattice

class Lattice:
    def __init__(self, arr: Arrangement, max_flats=DEFAULT_MAX_FLATS):
        self.arrangement = arr
        self.max_flats = max_flats
        top = ambient_flat(arr)
        self._levels = [[top]]
        self._masks = [[0]]
        self._keys = {(): top}
        self._exhausted = len(arr) == 0
        self._mobius = None

    @property
    def built_rank(self):
        return len(self._levels) - 1

    @property
    def complete(self):
        return self._exhausted

    def flat_count(self):
        return sum(len(level) for level in self._levels)

    def ensure_rank(self, k):
        while not self._exhausted and self.built_rank < k:
            self._extend()
        return self

    def ensure_complete(self):
        return self.ensure_rank(self.arrangement.dim)

    def _extend(self):
        arr = self.arrangement
        norms = arr.normals()
        m = len(norms)
        new = {}
        new_masks = {}
        for flat, mask in zip(self._levels[-1], self._masks[-1]):
            for j in range(m):
                if mask >> j & 1:
                    continue
                forms2 = rref_insert(flat.forms, norms[j])
                if forms2 in new:
                    continue
                contains = [i for i in flat.contains]
                mask2 = mask
                for i in range(m):
                    if not (mask2 >> i & 1) and in_row_space(norms[i], forms2):
                        contains.append(i)
                        mask2 |= 1 << i
                new[forms2] = Flat(forms2, frozenset(contains))
                new_masks[forms2] = mask2
        if not new:
            self._exhausted = True
            return
        if self.flat_count() + len(new) > self.max_flats:
            raise CapExceededError(
                f"flat cap {self.max_flats} exceeded while building rank "
                f"{self.built_rank + 1}",
                [len(level) for level in self._levels])
        keys = sorted(new, key=_forms_key)
        self._levels.append([new[k] for k in keys])
        self._masks.append([new_masks[k] for k in keys])
        for k in keys:
            self._keys[k] = new[k]
        self._mobius = None
        if self.built_rank >= self.arrangement.dim:
            self._exhausted = True

    def flats(self, rank=None):
        if rank is None:
            self.ensure_complete()
            return [f for level in self._levels for f in level]
        self.ensure_rank(rank)
        if rank > self.built_rank:
            return []
        return list(self._levels[rank])

    def find(self, flat: Flat) -> bool:
        return flat.forms in self._keys

    def rank(self):
        self.ensure_complete()
        return self.built_rank

    def mobius(self):
        "Moebius values mu(V, X) for every flat of the built levels."
        if self._mobius is None:
            done = []
            table = {}
            for level, masks in zip(self._levels, self._masks):
                for flat, mask in zip(level, masks):
                    if flat.rank == 0:
                        value = 1
                    else:
                        value = -sum(v for m, v in done if m & mask == m)
                    table[flat] = value
                done.extend(
                    (m, table[f]) for f, m in zip(level, masks))
            self._mobius = table
        return self._mobius

    def characteristic_polynomial(self):
        "chi(A, t) = sum over flats of mu(V, X) t^dim(X), constant first."
        self.ensure_complete()
        mob = self.mobius()
        ell = self.arrangement.dim
        coeffs = [0] * (ell + 1)
        for flat, value in mob.items():
            coeffs[ell - flat.rank] += value
        return tuple(coeffs)


def _forms_key(forms):
    return tuple(tuple(scalar_key(x) for x in row) for row in forms)


def flat_sort_key(flat: Flat):
    return _forms_key(flat.forms)


def build_lattice(arr, max_rank=None, max_flats=DEFAULT_MAX_FLATS) -> Lattice:
    lat = Lattice(arr, max_flats=max_flats)
    if max_rank is None:
        lat.ensure_complete()
    else:
        lat.ensure_rank(max_rank)
    return lat


@lru_cache(maxsize=4096)
def characteristic_polynomial(arr: Arrangement,
                              max_flats=DEFAULT_MAX_FLATS) -> tuple:
    return build_lattice(arr, max_flats=max_flats).characteristic_polynomial()


# ---------------------------------------------------------------------------
# modularity, supersolvability, divisional flags

def is_modular(lattice: Lattice, flat: Flat) -> bool:
    """X is modular iff X + Y is again a flat for every flat Y.  The sum is
    a flat exactly when its codimension q_X + q_Y - rank(X u Y) matches the
    rank of the hyperplanes through both X and Y."""
    lattice.ensure_complete()
    arr = lattice.arrangement
    norms = arr.normals()
    mask_x = _mask_of(flat)
    qx = flat.rank
    for level, masks in zip(lattice._levels, lattice._masks):
        for other, mask_y in zip(level, masks):
            common = mask_x & mask_y
            if common == mask_x or common == mask_y:
                continue  # comparable flats: the sum is the smaller-rank one
            stacked = flat.forms
            for row in other.forms:
                stacked = rref_insert(stacked, row)
            codim_sum = qx + other.rank - len(stacked)
            common_rank = len(rref([norms[i] for i in _mask_bits(common)]))
            if codim_sum != common_rank:
                return False
    return True


def _mask_of(flat):
    mask = 0
    for i in flat.contains:
        mask |= 1 << i
    return mask


def _mask_bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def supersolvable_certificate(arr, lattice=None):
    """Depth-first search for a maximal chain of modular flats
    V = X_0 < X_1 < ... < X_r (rank i each).  Returns (chain, exponents)
    with exponents |A_{X_i}| - |A_{X_{i-1}}| padded by ambient zeros and
    sorted, or None."""
    lat = lattice if lattice is not None else build_lattice(arr)
    lat.ensure_complete()
    r = lat.rank()
    modular_cache = {}

    def modular(flat):
        if flat not in modular_cache:
            modular_cache[flat] = is_modular(lat, flat)
        return modular_cache[flat]

    def extend(chain):
        depth = len(chain) - 1
        if depth == r:
            return chain
        prev = chain[-1]
        for cand in sorted(lat.flats(depth + 1), key=flat_sort_key):
            if not prev.contains <= cand.contains:
                continue
            if not modular(cand):
                continue
            result = extend(chain + [cand])
            if result is not None:
                return result
        return None

    chain = extend([ambient_flat(arr)])
    if chain is None:
        return None
    exps = [len(chain[i].contains) - len(chain[i - 1].contains)
            for i in range(1, len(chain))]
    exps.extend([0] * (arr.dim - r))
    return chain[1:], tuple(sorted(exps))


def divisional_flag_search(arr, max_flats=DEFAULT_MAX_FLATS):
    """Flag V = X_0 > X_1 > ... > X_{l-2} with chi(A^{X_i}) dividing
    chi(A^{X_{i-1}}) at every step (exact integer division); greedy by
    decreasing |A_X| with full backtracking, so None is conclusive."""
    ell = arr.dim
    if ell <= 2 or len(arr) == 0:
        return []
    lat = build_lattice(arr, max_flats=max_flats)
    chi_cache = {(): characteristic_polynomial(arr, max_flats)}

    def chi_of(flat):
        if flat.forms not in chi_cache:
            chi_cache[flat.forms] = characteristic_polynomial(
                restriction(arr, flat), max_flats)
        return chi_cache[flat.forms]

    def extend(flag, chi_prev):
        depth = len(flag)
        if depth == ell - 2:
            return flag
        candidates = lat.flats(depth + 1)
        prev = flag[-1] if flag else None
        order = sorted(candidates,
                       key=lambda f: (-len(f.contains), flat_sort_key(f)))
        for cand in order:
            if prev is not None and not prev.contains <= cand.contains:
                continue
            chi_here = chi_of(cand)
            if not poly_divides(chi_here, chi_prev):
                continue
            result = extend(flag + [cand], chi_here)
            if result is not None:
                return result
        return None

    return extend([], chi_cache[()])


def restriction_roots(arr, flat, max_flats=DEFAULT_MAX_FLATS):
    """Root multiset of chi(A^X, t) if it splits over Z with nonnegative
    roots; None otherwise.  The rank-0 flat yields the roots of chi(A)."""
    if flat.rank == 0:
        chi = characteristic_polynomial(arr, max_flats)
    else:
        chi = characteristic_polynomial(restriction(arr, flat), max_flats)
    return integer_roots_if_splits(chi)
