"""Extended Shi, ideal-Shi, extended Catalan, and Shi-minus-simples
arrangements, built centrally in rank+1 coordinates.

Roots are written in the simple-root-coefficient basis (exact rational
and essential), with a distinguished cone coordinate z appended:
H_beta^j = ker(beta - j z).  The certified pipeline starts from the free
base Shi^k minus its simple-root hyperplanes at shift k, whose exponents
(1, hk-1, ..., hk-1) are a quoted input, re-adds that simple block, and
then the ideal's height blocks at shift -k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .accuracy import (AccuracyReport, CERTIFIED_FREE, DimensionEntry,
                       ACCURATE)
from .arrangement import Arrangement, arrangement
from .fields import QQ
from .matfree import (InconsistencyError, MATCertificate, MATViolation,
                      accuracy_witnesses, certify_from_free_base,
                      dual_partition_exponents)
from .rootsys import (Ideal, RootSystemType, build_root_system, full_ideal,
                      ideal_from_indices)

SHI_MINUS_PROVENANCE = ("exponents of Shi^k minus the shift-k simple-root "
                        "hyperplanes: (1, hk-1 x rank), a quoted freeness "
                        "result, not re-derived here")


@dataclass(frozen=True)
class ConedDeformation:
    rstype: RootSystemType
    level: int
    ideal: Ideal | None
    removed_simples: tuple        # simple indices removed at shift k
    arrangement: Arrangement
    tags: tuple                   # per hyperplane: ("root", root_idx, shift) or ("cone",)

    def hyperplane_index(self, tag):
        return self.tags.index(tag)


def _root_vector(rs, root_idx, shift):
    coeffs = rs.positive_roots[root_idx].simple_coeffs
    return tuple(Fraction(c) for c in coeffs) + (Fraction(-shift),)


def _cone_vector(rank):
    return tuple(Fraction(0) for _ in range(rank)) + (Fraction(1),)


def _build(rstype, k, ideal_indices, removed_simples):
    if k < 1:
        raise ValueError("the level k must be a positive integer")
    rs = build_root_system(rstype)
    rank = rs.rank
    simple_idx = [rs.root_index(s) for s in rs.simples]
    removed = {simple_idx[i] for i in removed_simples}
    vectors = []
    tags = []
    # Shi part minus the removed shift-k simple hyperplanes, cone last
    for r in range(len(rs.positive_roots)):
        for j in range(-k + 1, k + 1):
            if j == k and r in removed:
                continue
            vectors.append(_root_vector(rs, r, j))
            tags.append(("root", r, j))
    vectors.append(_cone_vector(rank))
    tags.append(("cone",))
    # removed simple hyperplanes come back as their own block ...
    for i in sorted(removed):
        vectors.append(_root_vector(rs, i, k))
        tags.append(("root", i, k))
    # ... followed by the ideal's height blocks at shift -k
    if ideal_indices is not None:
        for r in ideal_indices:
            vectors.append(_root_vector(rs, r, -k))
            tags.append(("root", r, -k))
    return rs, arrangement(rank + 1, QQ, vectors), tuple(tags)


def build_shi(rstype: RootSystemType, k: int) -> ConedDeformation:
    "Shi^k: shifts -k+1..k for every positive root, plus the cone ker z."
    rs, arr, tags = _build(rstype, k, None, ())
    assert len(arr) == 2 * k * len(rs.positive_roots) + 1
    return ConedDeformation(rstype, k, None, (), arr, tags)


def build_ideal_shi(rstype: RootSystemType, k: int,
                    ideal: Ideal) -> ConedDeformation:
    "Shi^k plus the shift -k hyperplanes of the ideal's roots."
    rs = build_root_system(rstype)
    ideal = ideal_from_indices(rs, ideal.roots)  # validates closure
    rs, arr, tags = _build(rstype, k, ideal.roots, ())
    assert len(arr) == 2 * k * len(rs.positive_roots) + 1 + len(ideal.roots)
    return ConedDeformation(rstype, k, ideal, (), arr, tags)


def build_catalan(rstype: RootSystemType, k: int) -> ConedDeformation:
    rs = build_root_system(rstype)
    return build_ideal_shi(rstype, k, full_ideal(rs))


def build_shi_minus(rstype: RootSystemType, k: int,
                    sigma) -> ConedDeformation:
    """Shi^k with the shift-k hyperplanes of the simple roots in sigma
    (given by simple positions 0..rank-1) removed."""
    rs = build_root_system(rstype)
    sigma = tuple(sorted(set(sigma)))
    if any(i < 0 or i >= rs.rank for i in sigma):
        raise ValueError("sigma must be a set of simple-root positions")
    _, arr, tags = _build(rstype, k, None, sigma)
    # the removed block is not re-added for the standalone construction
    drop = len(sigma)
    arr = Arrangement(arr.dim, arr.field,
                      arr.hyperplanes[:len(arr) - drop])
    return ConedDeformation(rstype, k, None, sigma, arr,
                            tags[:len(tags) - drop])


def shi_minus_exponents(rstype: RootSystemType, k: int, sigma_size: int):
    "(1, hk-1 repeated |sigma|, hk repeated rank-|sigma|), sorted."
    rs = build_root_system(rstype)
    h = rs.coxeter_number()
    return tuple(sorted(
        (1,) + (h * k - 1,) * sigma_size + (h * k,) * (rs.rank - sigma_size)))


def ideal_shi_exponents(rstype: RootSystemType, k: int, ideal: Ideal):
    "(1, hk + e_1^I, ..., hk + e_rank^I), the certified target."
    rs = build_root_system(rstype)
    h = rs.coxeter_number()
    heights = [rs.positive_roots[i].height for i in ideal.roots]
    sizes = []
    if heights:
        for t in range(1, max(heights) + 1):
            sizes.append(sum(1 for x in heights if x == t))
    ideal_exps = dual_partition_exponents(rs.rank, sizes)
    return tuple(sorted((1,) + tuple(h * k + e for e in ideal_exps)))


def shi_pipeline_certificate(rstype: RootSystemType, k: int,
                             ideal: Ideal | None = None):
    """Certify Shi_I^k from the free base Shi^k_{-Delta}: one block of the
    simple-root hyperplanes at shift k, then the ideal's height blocks at
    shift -k.  Returns (deformation, certificate)."""
    rs = build_root_system(rstype)
    if ideal is None:
        ideal = Ideal(rstype, ())
    deform = build_ideal_shi(rstype, k, ideal)
    all_simples = tuple(range(rs.rank))
    base = build_shi_minus(rstype, k, all_simples)
    base_exps = shi_minus_exponents(rstype, k, rs.rank)
    simple_idx = [rs.root_index(s) for s in rs.simples]
    blocks = [[_root_vector(rs, i, k) for i in simple_idx]]
    heights = [rs.positive_roots[i].height for i in ideal.roots]
    if heights:
        for t in range(1, max(heights) + 1):
            blocks.append([_root_vector(rs, i, -k)
                           for i in ideal.roots
                           if rs.positive_roots[i].height == t])
    cert = certify_from_free_base(base.arrangement, base_exps, blocks,
                                  provenance=SHI_MINUS_PROVENANCE)
    if isinstance(cert, MATViolation):
        raise InconsistencyError(
            f"Shi pipeline step failed, which contradicts the quoted "
            f"freeness results: {cert}")
    expected = ideal_shi_exponents(rstype, k, ideal)
    if cert.exponents != expected:
        raise InconsistencyError(
            f"pipeline exponents {cert.exponents} != formula {expected}")
    if cert.target.normal_set() != deform.arrangement.normal_set():
        raise InconsistencyError("pipeline target differs from Shi_I^k")
    return deform, cert


def shi_accuracy_witnesses(rstype: RootSystemType, k: int,
                           ideal: Ideal | None = None) -> AccuracyReport:
    """Per-dimension certified witnesses for Shi_I^k, block by block: for
    each q the restriction at a size-q subset of one block realizes the
    first rank+1-q exponents."""
    deform, cert = shi_pipeline_certificate(rstype, k, ideal)
    arr = cert.target
    ell = arr.dim
    wmap = accuracy_witnesses(cert, arr)
    entries = []
    for d in range(ell, 0, -1):
        q = ell - d
        if q not in wmap:
            raise InconsistencyError(f"no certified witness at dimension {d}")
        _, flat, exps = wmap[q]
        if exps != cert.exponents[:d]:
            raise InconsistencyError(
                f"witness exponents {exps} are not the certified prefix")
        entries.append(DimensionEntry(d, True, flat, exps, CERTIFIED_FREE))
    return AccuracyReport(ACCURATE, "exact", tuple(entries),
                          provenance="MAT pipeline certificate")
