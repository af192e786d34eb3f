"""Multiple-addition certification of freeness and the restriction
witnesses it buys.

A step adds a set of hyperplanes to a free base whose top exponent e has
multiplicity p, and is valid when (1) the added normals are independent,
(2) their common intersection X lies in no base hyperplane (over an
infinite field that is the same as X not being covered by the union), and
(3) every added H satisfies |base| - |(base u {H})^H| = e.  The result is
free with the top q exponents bumped to e+1.  Folding steps from the
empty arrangement certifies MAT-freeness; folding from a trusted free
base gives the generalized pipeline.  Valid certificates also locate
accuracy witnesses: inside block k, any q between consecutive block sizes
is realized by some size-q subset whose intersection flat restricts with
the first l-q exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .arrangement import (Arrangement, CapExceededError, arrangement,
                          ambient_flat, characteristic_polynomial,
                          flat_from_hyperplanes, restriction)
from .linalg import in_row_space, matrix_rank, rref
from .polynomials import integer_roots_if_splits


class InconsistencyError(RuntimeError):
    """A theorem-guaranteed witness failed to materialize; this indicates a
    bug or an invalid certificate, never a property of the input."""


@dataclass(frozen=True)
class StepRecord:
    index: int                 # 1-based block position
    added: tuple               # hyperplane indices into the target
    rank_ok: bool
    noncover_ok: bool
    counts: tuple              # |base| - |(base u {H})^H| per added H
    exponents_after: tuple

    def to_json(self):
        return {"k": self.index, "rank_ok": self.rank_ok,
                "noncover_ok": self.noncover_ok, "counts": list(self.counts)}


@dataclass(frozen=True)
class MATViolation:
    step: int
    condition: str             # "1", "2", "3", or "multiplicity"
    detail: str
    offender: int | None = None

    def __bool__(self):
        return False


@dataclass(frozen=True)
class MATCertificate:
    target: Arrangement
    partition: tuple           # tuple of tuples of hyperplane indices
    steps: tuple
    exponents: tuple
    base_size: int = 0
    base_exponents: tuple | None = None
    base_provenance: str = ""

    def block_sizes(self):
        return tuple(len(b) for b in self.partition)

    def to_json(self):
        data = {
            "partition": [list(b) for b in self.partition],
            "steps": [s.to_json() for s in self.steps],
            "exponents": list(self.exponents),
        }
        if self.base_exponents is not None:
            data["base"] = {"exponents": list(self.base_exponents),
                            "provenance": self.base_provenance}
        return data


def _top_exponent(exponents):
    e = exponents[-1]
    p = sum(1 for x in exponents if x == e)
    return e, p


def verify_mat_step(base: Arrangement, base_exponents, added_normals,
                    step_index=1):
    """Check conditions (1)-(3) for adding the given hyperplanes to the
    base; returns a StepRecord on success, else the first MATViolation."""
    field = base.field
    exps = tuple(sorted(base_exponents))
    if len(exps) != base.dim or sum(exps) != len(base):
        raise ValueError("base exponents do not fit the base arrangement")
    added = [tuple(field.scalar(x) for x in v) for v in added_normals]
    q = len(added)
    if q == 0:
        raise ValueError("a step must add at least one hyperplane")
    base_set = base.normal_set()
    probe = arrangement(base.dim, field, added)
    if len(probe) != q or any(h.normal in base_set for h in probe.hyperplanes):
        raise ValueError("added hyperplanes must be distinct and disjoint "
                         "from the base")
    e, p = _top_exponent(exps)
    if q > p:
        return MATViolation(step_index, "multiplicity",
                            f"{q} hyperplanes added but the top exponent {e} "
                            f"has multiplicity {p}")
    forms = rref(added)
    if len(forms) != q:
        return MATViolation(step_index, "1",
                            f"added normals have rank {len(forms)} != {q}")
    for i, h in enumerate(base.hyperplanes):
        if in_row_space(h.normal, forms):
            return MATViolation(step_index, "2",
                                "intersection of the added hyperplanes lies "
                                f"inside base hyperplane {i}", offender=i)
    counts = []
    for j, vec in enumerate(added):
        enlarged = arrangement(base.dim, field,
                               list(base.normals()) + [vec])
        flat = flat_from_hyperplanes(enlarged, [len(enlarged) - 1])
        count = len(base) - len(restriction(enlarged, flat))
        counts.append(count)
        if count != e:
            return MATViolation(step_index, "3",
                                f"|base| - |restriction| = {count} != top "
                                f"exponent {e} at added hyperplane {j}",
                                offender=j)
    new_exps = tuple(sorted(exps[:len(exps) - q] + (e + 1,) * q))
    return StepRecord(step_index, (), True, True, tuple(counts), new_exps)


def certify_from_free_base(base: Arrangement, base_exponents, blocks,
                           provenance=""):
    """Fold verify_mat_step over an ordered partition of added hyperplanes
    (each block a list of normals).  The target arrangement is the base
    followed by the blocks in order; certificate indices refer to it."""
    field = base.field
    normals = list(base.normals())
    partition = []
    here = base
    exps = tuple(sorted(base_exponents))
    steps = []
    for k, block in enumerate(blocks, start=1):
        block_normals = [tuple(field.scalar(x) for x in v) for v in block]
        record = verify_mat_step(here, exps, block_normals, step_index=k)
        if isinstance(record, MATViolation):
            return record
        indices = tuple(range(len(normals), len(normals) + len(block_normals)))
        partition.append(indices)
        normals.extend(block_normals)
        here = arrangement(base.dim, field, normals)
        if len(here) != len(normals):
            raise ValueError("blocks overlap the base or each other")
        exps = record.exponents_after
        steps.append(StepRecord(k, indices, True, True, record.counts, exps))
    return MATCertificate(here, tuple(partition), tuple(steps), exps,
                          base_size=len(base),
                          base_exponents=tuple(sorted(base_exponents)),
                          base_provenance=provenance)


def certify_partition(arr: Arrangement, partition):
    """Certify an ordered partition (hyperplane index blocks covering the
    arrangement) as successive steps from the empty arrangement; on success
    the exponents are cross-checked against the dual-partition counts."""
    seen = set()
    for block in partition:
        for i in block:
            if i in seen:
                raise ValueError("partition blocks overlap")
            seen.add(i)
    if seen != set(range(len(arr))):
        raise ValueError("partition does not cover the arrangement")
    empty = Arrangement(arr.dim, arr.field, ())
    blocks = [[arr.hyperplanes[i].normal for i in block] for block in partition]
    cert = certify_from_free_base(empty, (0,) * arr.dim, blocks)
    if isinstance(cert, MATViolation):
        return cert
    # remap indices back to the caller's arrangement order
    partition = tuple(tuple(block) for block in partition)
    steps = tuple(StepRecord(s.index, partition[s.index - 1], s.rank_ok,
                             s.noncover_ok, s.counts, s.exponents_after)
                  for s in cert.steps)
    dual = dual_partition_exponents(arr.dim, [len(b) for b in partition])
    if dual != cert.exponents:
        raise InconsistencyError(
            f"dual-partition exponents {dual} disagree with accumulated "
            f"{cert.exponents}")
    return MATCertificate(arr, partition, steps, cert.exponents,
                          base_size=0, base_exponents=None)


def dual_partition_exponents(ambient_dim, block_sizes):
    "e_i = #{k : |pi_k| >= l - i + 1} for i = 1..l."
    return tuple(sorted(
        sum(1 for p in block_sizes if p >= ambient_dim - i + 1)
        for i in range(1, ambient_dim + 1)))


# ---------------------------------------------------------------------------
# accuracy witnesses from a certificate

def accuracy_witnesses(cert: MATCertificate, arr: Arrangement | None = None,
                       max_flats=None):
    """Map q -> (block index, witness Flat, restriction exponents) for every
    q between consecutive block sizes.  Searches size-q subsets of block k
    in lexicographic order until the restriction's characteristic roots are
    the first l-q certificate exponents; the underlying theorems guarantee
    a hit, so exhaustion raises InconsistencyError."""
    arr = arr if arr is not None else cert.target
    ell = arr.dim
    exps = cert.exponents
    sizes = cert.block_sizes() + (0,)
    witnesses = {}
    for k, block in enumerate(cert.partition, start=1):
        p_k = sizes[k - 1]
        p_next = sizes[k]
        for q in range(p_next, p_k + 1):
            if q in witnesses:
                continue
            witnesses[q] = _find_witness(arr, block, q, exps, k, max_flats)
    return witnesses


def _find_witness(arr, block, q, exps, block_index, max_flats):
    ell = arr.dim
    target = tuple(exps[:ell - q])
    kwargs = {} if max_flats is None else {"max_flats": max_flats}
    if q == 0:
        flat = ambient_flat(arr)
        chi = characteristic_polynomial(arr, **kwargs)
        roots = integer_roots_if_splits(chi)
        if roots != target:
            raise InconsistencyError(
                f"chi roots {roots} != certified exponents {target}")
        return (block_index, flat, target)
    for subset in combinations(sorted(block), q):
        flat = flat_from_hyperplanes(arr, subset)
        if flat.rank != q:
            continue
        chi = characteristic_polynomial(restriction(arr, flat), **kwargs)
        if integer_roots_if_splits(chi) == target:
            return (block_index, flat, target)
    raise InconsistencyError(
        f"no size-{q} subset of block {block_index} restricts to exponents "
        f"{target}")


# ---------------------------------------------------------------------------
# partition search

def search_mat_partition(arr: Arrangement, strategy="exhaustive",
                         hint_blocks=None, char_poly=None,
                         max_hyperplanes=16, max_flats=None):
    """Find an MAT-partition.

    strategy "height_hint" tries only the caller-provided blocks (the
    root-height partition when the arrangement came from an ideal).
    strategy "exhaustive" backtracks over all ordered partitions; when chi
    is available (computed, or passed in from an independent oracle) it
    must split and its root multiset forces the block sizes to the dual
    partition, which prunes the search massively.  A None from exhaustive
    search is conclusive."""
    if strategy == "height_hint":
        if hint_blocks is None:
            raise ValueError("height_hint needs the candidate blocks")
        cert = certify_partition(arr, hint_blocks)
        return None if isinstance(cert, MATViolation) else cert
    if strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")
    if len(arr) > max_hyperplanes:
        raise CapExceededError(
            f"exhaustive partition search capped at {max_hyperplanes} "
            f"hyperplanes", [])
    sizes_options = None
    chi = char_poly
    if chi is None:
        try:
            kwargs = {} if max_flats is None else {"max_flats": max_flats}
            chi = characteristic_polynomial(arr, **kwargs)
        except CapExceededError:
            chi = None
    if chi is not None:
        roots = integer_roots_if_splits(chi)
        if roots is None:
            return None  # chi does not factor, so the arrangement is not even free
        sizes = _dual_of_exponents(roots)
        if sum(sizes) != len(arr) or (len(sizes) > 1 and sizes[0] == sizes[1]):
            return None
        sizes_options = [sizes]
    else:
        sizes_options = _size_compositions(len(arr), arr.dim)

    for sizes in sizes_options:
        result = _search_blocks(arr, sizes, [], list(range(len(arr))))
        if result is not None:
            return result
    return None


def _dual_of_exponents(exponents):
    if not exponents or exponents[-1] == 0:
        return ()
    return tuple(sum(1 for e in exponents if e >= k)
                 for k in range(1, exponents[-1] + 1))


def _size_compositions(total, dim):
    "All size sequences with p1 > p2 >= ... and p1 <= dim, summing to total."
    out = []

    def walk(remaining, prev, acc, first):
        if remaining == 0:
            out.append(tuple(acc))
            return
        limit = min(remaining, prev)
        for size in range(limit, 0, -1):
            if first and size == prev:
                continue  # strict inequality |pi_1| > |pi_2|
            walk(remaining - size, size, acc + [size], False)

    for p1 in range(min(total, dim), 0, -1):
        walk(total - p1, p1, [p1], True)
    return out


def _search_blocks(arr, sizes, chosen, remaining):
    k = len(chosen)
    if k == len(sizes):
        cert = certify_partition(arr, chosen)
        return None if isinstance(cert, MATViolation) else cert
    base = arrangement(arr.dim, arr.field,
                       [arr.hyperplanes[i].normal
                        for block in chosen for i in block])
    base_exps = dual_partition_exponents(arr.dim, [len(b) for b in chosen])
    want = sizes[k]
    for subset in combinations(remaining, want):
        normals = [arr.hyperplanes[i].normal for i in subset]
        record = verify_mat_step(base, base_exps, normals, step_index=k + 1)
        if isinstance(record, MATViolation):
            continue
        rest = [i for i in remaining if i not in subset]
        result = _search_blocks(arr, sizes, chosen + [tuple(subset)], rest)
        if result is not None:
            return result
    return None
