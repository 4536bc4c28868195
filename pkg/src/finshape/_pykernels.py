"""Pure-Python kernels for the hot combinatorial loops.

Relations on n points are passed as row bitmasks: ``rows[x]`` has bit y set
when x relates to y.  For specialization preorders the convention is the
up-set one, ``up[x]`` = {y : x <= y}.

This module is the reference implementation; ``finshape._ckernels`` must
match it bit for bit (enumeration order included).
"""

from __future__ import annotations


def closure_rows(n, rows):
    """Reflexive-transitive closure of a relation given as row bitmasks."""
    out = [rows[x] | (1 << x) for x in range(n)]
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if out[i] & bit:
                out[i] |= out[k]
    return out


def _comparability(n, up_rows):
    comp = [0] * n
    for x in range(n):
        comp[x] |= up_rows[x]
        for y in range(n):
            if (up_rows[y] >> x) & 1:
                comp[x] |= 1 << y
        comp[x] &= ~(1 << x)
    return comp


def continuous_maps_to_discrete(n, k, up_rows):
    """All continuous maps into a k-point discrete space, lexicographic.

    Continuity into a discrete codomain forces equal values on comparable
    points, so candidates are pruned as soon as an assigned comparable
    point pins (or contradicts) the value.
    """
    if n == 0:
        return [()]
    if k <= 0:
        return []
    comp = _comparability(n, up_rows)
    out = []
    f = [0] * n

    def rec(i):
        if i == n:
            out.append(tuple(f))
            return
        seen = comp[i] & ((1 << i) - 1)
        forced = -1
        m = seen
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if forced == -1:
                forced = f[j]
            elif forced != f[j]:
                return
        if forced >= 0:
            f[i] = forced
            rec(i + 1)
        else:
            for v in range(k):
                f[i] = v
                rec(i + 1)

    rec(0)
    return out


def r3_oracle_rows(n, up_rows):
    """Intersection of kernels of all continuous maps into discrete spaces
    with at most n points, as symmetric reflexive row bitmasks."""
    if n == 0:
        return []
    full = (1 << n) - 1
    rel = [full] * n
    for k in range(1, n + 1):
        for f in continuous_maps_to_discrete(n, k, up_rows):
            for x in range(n):
                m = rel[x]
                while m:
                    y = (m & -m).bit_length() - 1
                    m &= m - 1
                    if f[x] != f[y]:
                        rel[x] &= ~(1 << y)
                        rel[y] &= ~(1 << x)
    return rel


def count_matching_factorizations(m, k, class_of, f):
    """Count maps g on m class indices into k values with g[class_of[x]] ==
    f[x] for every point x.  Literal odometer enumeration; no shortcuts."""
    if m == 0:
        return 1 if len(f) == 0 else 0
    if k <= 0:
        return 0
    n = len(f)
    g = [0] * m
    count = 0
    while True:
        ok = True
        for x in range(n):
            if g[class_of[x]] != f[x]:
                ok = False
                break
        if ok:
            count += 1
        i = m - 1
        while i >= 0 and g[i] == k - 1:
            g[i] = 0
            i -= 1
        if i < 0:
            return count
        g[i] += 1
