"""Integer polynomials in one variable, coefficients ascending from the
constant term (the serialization order used throughout)."""

from __future__ import annotations


def poly_trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                      for i in range(n)])


def poly_sub(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                      for i in range(n)])


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim(out)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_from_roots(roots):
    p = (1,)
    for r in roots:
        p = poly_mul(p, (-r, 1))
    return p


def poly_divmod(a, b):
    "Euclidean division over Q restricted to integer inputs; b monic-led."
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if db == 0:
        raise ZeroDivisionError("division by a constant polynomial")
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] % lead != 0:
            return None, tuple(a)  # not exactly divisible over Z at this step
        c = a[i] // lead
        q[i - db] = c
        if c:
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    return poly_trim(q), poly_trim(a[:db])


def poly_divides(a, b) -> bool:
    "True iff a divides b exactly over the integers."
    if len(b) == 1 and b[0] == 0:
        return True
    if len(a) > len(b):
        return False
    q, r = poly_divmod(b, a)
    return q is not None and r == (0,)


def integer_roots_if_splits(p):
    """Root multiset (sorted, nonnegative) if the monic polynomial splits
    over Z with nonnegative roots; None otherwise."""
    p = poly_trim(p)
    if p[-1] != 1:
        return None
    roots = []
    # strip zero roots
    while len(p) > 1 and p[0] == 0:
        roots.append(0)
        p = p[1:]
    while len(p) > 1:
        const = abs(p[0])
        hit = None
        for r in sorted(_divisors(const)):
            if poly_eval(p, r) == 0:
                hit = r
                break
        if hit is None:
            return None
        q, rem = poly_divmod(p, (-hit, 1))
        if q is None or rem != (0,):
            return None
        roots.append(hit)
        p = q
    return tuple(sorted(roots))


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out
