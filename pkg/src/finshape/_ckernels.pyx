# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for relation closure and continuous-map enumeration.

Semantics match finshape._pykernels exactly, enumeration order included;
the pure module is the reference.  Inputs with more than 64 points take
the pure path (the enumeration kernels never get that large in practice,
the closure kernel can).
"""

from finshape import _pykernels as _py

cdef unsigned long long ONE = 1


def closure_rows(n, rows):
    """Reflexive-transitive closure of a relation given as row bitmasks."""
    if n == 0:
        return []
    if n > 64:
        return _py.closure_rows(n, rows)
    cdef unsigned long long r[64]
    cdef unsigned long long bit
    cdef int i, k, nn = n
    for i in range(nn):
        r[i] = <unsigned long long> rows[i] | (ONE << i)
    for k in range(nn):
        bit = ONE << k
        for i in range(nn):
            if r[i] & bit:
                r[i] |= r[k]
    return [int(r[i]) for i in range(nn)]


cdef int _fill_comparability(int n, object up_rows, unsigned long long *comp) except -1:
    cdef int x, y
    cdef unsigned long long up_x
    for x in range(n):
        comp[x] = <unsigned long long> up_rows[x]
    for x in range(n):
        up_x = <unsigned long long> up_rows[x]
        for y in range(n):
            if (up_x >> y) & ONE:
                comp[y] |= ONE << x
    for x in range(n):
        comp[x] &= ~(ONE << x)
    return 0


cdef _enumerate_maps(int n, int k, unsigned long long *comp, object sink, list rel):
    # Depth-first lexicographic enumeration of maps constant on comparable
    # pairs.  sink is a list collecting tuples, or None when rel is given,
    # in which case each map is intersected into the relation rows instead.
    cdef int f[64]
    cdef int free[64]
    cdef int i = 0, j, forced, x, y
    cdef unsigned long long seen, m, mrow
    while True:
        if i == n:
            if sink is not None:
                sink.append(tuple([f[j] for j in range(n)]))
            else:
                for x in range(n):
                    mrow = <unsigned long long> rel[x]
                    m = mrow
                    while m:
                        y = _lowest_bit(m)
                        m &= m - 1
                        if f[x] != f[y]:
                            rel[x] = int(mrow & ~(ONE << y))
                            mrow = <unsigned long long> rel[x]
                            rel[y] = int(<unsigned long long> rel[y] & ~(ONE << x))
            i -= 1
            while i >= 0:
                if free[i] and f[i] + 1 < k:
                    f[i] += 1
                    i += 1
                    break
                i -= 1
            if i < 0:
                return
            continue
        seen = comp[i] & ((ONE << i) - 1)
        forced = -1
        m = seen
        while m:
            j = _lowest_bit(m)
            m &= m - 1
            if forced == -1:
                forced = f[j]
            elif forced != f[j]:
                forced = -2
                break
        if forced == -2:
            # contradiction: backtrack
            i -= 1
            while i >= 0:
                if free[i] and f[i] + 1 < k:
                    f[i] += 1
                    i += 1
                    break
                i -= 1
            if i < 0:
                return
            continue
        if forced >= 0:
            f[i] = forced
            free[i] = 0
        else:
            f[i] = 0
            free[i] = 1
        i += 1


cdef inline int _lowest_bit(unsigned long long m):
    cdef int b = 0
    while not (m & ONE):
        m >>= 1
        b += 1
    return b


def continuous_maps_to_discrete(n, k, up_rows):
    """All continuous maps into a k-point discrete space, lexicographic."""
    if n == 0:
        return [()]
    if k <= 0:
        return []
    if n > 64:
        return _py.continuous_maps_to_discrete(n, k, up_rows)
    cdef unsigned long long comp[64]
    _fill_comparability(n, up_rows, comp)
    out = []
    _enumerate_maps(n, k, comp, out, None)
    return out


def r3_oracle_rows(n, up_rows):
    """Intersection of kernels of all continuous maps into discrete spaces
    with at most n points, as symmetric reflexive row bitmasks."""
    if n == 0:
        return []
    if n > 64:
        return _py.r3_oracle_rows(n, up_rows)
    cdef unsigned long long comp[64]
    cdef int k
    _fill_comparability(n, up_rows, comp)
    rel = [(1 << n) - 1] * n
    for k in range(1, n + 1):
        _enumerate_maps(n, k, comp, None, rel)
    return rel


def count_matching_factorizations(m, k, class_of, f):
    """Count maps g on m class indices into k values with g[class_of[x]] ==
    f[x] for every point x.  Literal odometer enumeration; no shortcuts."""
    if m == 0:
        return 1 if len(f) == 0 else 0
    if k <= 0:
        return 0
    if m > 64 or len(f) > 64:
        return _py.count_matching_factorizations(m, k, class_of, f)
    cdef int g[64]
    cdef int cls[64]
    cdef int fv[64]
    cdef int mm = m, kk = k, nn = len(f)
    cdef int i, x, ok
    cdef long long count = 0
    for i in range(mm):
        g[i] = 0
    for x in range(nn):
        cls[x] = class_of[x]
        fv[x] = f[x]
    while True:
        ok = 1
        for x in range(nn):
            if g[cls[x]] != fv[x]:
                ok = 0
                break
        if ok:
            count += 1
        i = mm - 1
        while i >= 0 and g[i] == kk - 1:
            g[i] = 0
            i -= 1
        if i < 0:
            return count
        g[i] += 1
