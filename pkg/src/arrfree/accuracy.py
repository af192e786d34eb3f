"""Accuracy of free arrangements: per-dimension witness flats.

An arrangement with sorted exponents e_1 <= ... <= e_l is accurate when
every dimension d has a flat X of that dimension whose restriction is
free with exponents (e_1, ..., e_d); almost accurate drops the ordering
and only asks for a sub-multiset.  Splitting of the restriction's
characteristic polynomial with the right roots is necessary for that
(Terao factorization), so a failed exhaustive scan refutes the property,
while a hit is only CHARPOLY_CONSISTENT evidence unless a certificate
pins the restriction's freeness (CERTIFIED_FREE).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .arrangement import (Arrangement, CapExceededError, Flat, ambient_flat,
                          build_lattice, characteristic_polynomial,
                          flat_sort_key, restriction, restriction_roots)
from .matfree import MATCertificate, accuracy_witnesses
from .polynomials import integer_roots_if_splits

CERTIFIED_FREE = "certified_free"
CHARPOLY_CONSISTENT = "charpoly_consistent"

ACCURATE = "accurate"
NOT_ACCURATE = "not_accurate"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DimensionEntry:
    dim: int
    satisfied: bool
    witness: Flat | None
    exponents: tuple | None
    evidence: str

    def to_json(self, field):
        return {
            "d": self.dim,
            "witness": None if self.witness is None else
            [[field.format(x) for x in row] for row in self.witness.forms],
            "exponents": None if self.exponents is None else list(self.exponents),
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class AccuracyReport:
    verdict: str
    mode: str
    entries: tuple
    provenance: str = ""

    def entry(self, dim):
        for e in self.entries:
            if e.dim == dim:
                return e
        return None

    def to_json(self, field):
        return {"verdict": self.verdict, "mode": self.mode,
                "dimensions": [e.to_json(field) for e in self.entries]}


def restriction_exponent_candidates(arr, flat, max_flats=None):
    """Roots of chi(A^X) if it splits over Z with nonnegative roots, else
    None (the restriction is certainly not free)."""
    kwargs = {} if max_flats is None else {"max_flats": max_flats}
    return restriction_roots(arr, flat, **kwargs)


def _matches(roots, prefix, exponents, mode):
    if roots is None:
        return False
    if mode == "exact":
        return roots == prefix
    return not (Counter(roots) - Counter(exponents))


def check_accuracy(arr: Arrangement, exponents, mode="exact",
                   strategy="witness_first", certificate=None,
                   provenance="", max_flats=None) -> AccuracyReport:
    """Decide accuracy (mode "exact") or almost accuracy (mode "almost")
    for a free arrangement with the given sorted exponents.

    witness_first consults an MAT certificate's block witnesses when one
    is supplied, falling back to an exhaustive flat scan per dimension;
    exhaustive always scans.  Dimensions below l - rank(A) have no flats
    at all; they carry an all-zero required prefix and are reported
    satisfied with a null witness."""
    if mode not in ("exact", "almost"):
        raise ValueError(f"unknown mode {mode!r}")
    exponents = tuple(sorted(exponents))
    ell = arr.dim
    if len(exponents) != ell:
        raise ValueError("exponent vector length must match the dimension")
    if sum(exponents) != len(arr):
        raise ValueError("exponents must sum to the number of hyperplanes")
    rank = arr.rank()
    kwargs = {} if max_flats is None else {"max_flats": max_flats}

    cert_map = {}
    if certificate is not None and strategy == "witness_first":
        if not isinstance(certificate, MATCertificate):
            raise TypeError("certificate must be an MATCertificate")
        cert_map = accuracy_witnesses(certificate, arr, max_flats=max_flats)

    lattice = None
    entries = []
    verdict = ACCURATE
    try:
        for d in range(ell, 0, -1):
            q = ell - d
            prefix = exponents[:d]
            if q > rank:
                ok = all(e == 0 for e in prefix)
                entries.append(DimensionEntry(d, ok, None,
                                              prefix if ok else None,
                                              CHARPOLY_CONSISTENT))
                if not ok:
                    verdict = NOT_ACCURATE
                    break
                continue
            if q in cert_map:
                _, flat, exps = cert_map[q]
                if _matches(exps, prefix, exponents, mode):
                    entries.append(DimensionEntry(d, True, flat, exps,
                                                  CERTIFIED_FREE))
                    continue
            if q == 0:
                roots = integer_roots_if_splits(
                    characteristic_polynomial(arr, **kwargs))
                ok = _matches(roots, prefix, exponents, mode)
                entries.append(DimensionEntry(d, ok, ambient_flat(arr),
                                              roots if ok else None,
                                              CHARPOLY_CONSISTENT))
                if not ok:
                    verdict = NOT_ACCURATE
                    break
                continue
            if lattice is None:
                lattice = build_lattice(arr, max_rank=0, **kwargs)
            found = None
            for flat in sorted(lattice.flats(q), key=flat_sort_key):
                roots = restriction_exponent_candidates(arr, flat,
                                                        max_flats=max_flats)
                if _matches(roots, prefix, exponents, mode):
                    found = (flat, roots)
                    break
            if found is None:
                entries.append(DimensionEntry(d, False, None, None,
                                              CHARPOLY_CONSISTENT))
                verdict = NOT_ACCURATE
                break
            entries.append(DimensionEntry(d, True, found[0], found[1],
                                          CHARPOLY_CONSISTENT))
    except CapExceededError:
        return AccuracyReport(INCONCLUSIVE, mode, tuple(entries), provenance)
    return AccuracyReport(verdict, mode, tuple(entries), provenance)


def scan_unique_witnesses(arr, exponents, d, max_flats=None):
    """All dimension-d flats whose restriction roots equal the exact
    exponent prefix; used to verify uniqueness claims."""
    exponents = tuple(sorted(exponents))
    q = arr.dim - d
    if q < 0:
        raise ValueError("dimension exceeds the ambient dimension")
    prefix = exponents[:d]
    if q == 0:
        roots = integer_roots_if_splits(characteristic_polynomial(arr))
        return [ambient_flat(arr)] if roots == prefix else []
    kwargs = {} if max_flats is None else {"max_flats": max_flats}
    lattice = build_lattice(arr, max_rank=q, **kwargs)
    out = []
    for flat in sorted(lattice.flats(q), key=flat_sort_key):
        if restriction_exponent_candidates(arr, flat,
                                           max_flats=max_flats) == prefix:
            out.append(flat)
    return out
