"""Exact linear algebra: rational and prime fields, and integer Smith
normal form.

Matrices are lists of row lists.  Everything is exact: Fraction for the
rationals, Python ints elsewhere, so adversarial boundary matrices cannot
overflow.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedPrime


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """Field of rationals, elements are Fraction."""

    name = "q"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(i):
        return Fraction(i)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def neg(a):
        return -a


class PrimeField:
    """Field Z/p for prime p, elements are ints in 0..p-1."""

    def __init__(self, p):
        if not is_prime(p):
            raise UnsupportedPrime(f"{p} is not prime")
        self.p = p
        self.name = f"z{p}"
        self.zero = 0
        self.one = 1 % p

    def of(self, i):
        return i % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p


QQ = RationalField()


def mat_from_int(field, m):
    return [[field.of(v) for v in row] for row in m]


def mat_mul(field, a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        orow = []
        for j in range(cols):
            s = field.zero
            for t in range(inner):
                s = field.add(s, field.mul(row[t], b[t][j]))
            orow.append(s)
        out.append(orow)
    return out


def identity_matrix(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def row_reduce(field, m):
    """Reduced row echelon form; returns (rref copy, pivot column list)."""
    a = [row[:] for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if a[i][c] != field.zero:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = field.div(field.one, a[r][c])
        a[r] = [field.mul(v, inv) for v in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != field.zero:
                factor = a[i][c]
                a[i] = [field.sub(a[i][j], field.mul(factor, a[r][j])) for j in range(nc)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return a, pivots


def rank(field, m):
    if not m or not m[0]:
        return 0
    return len(row_reduce(field, m)[1])


def nullspace(field, m):
    """Basis of the right null space, vectors of length ncols."""
    nc = len(m[0]) if m else 0
    if nc == 0:
        return []
    rref, pivots = row_reduce(field, m)
    pivot_set = set(pivots)
    free = [c for c in range(nc) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * nc
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rref[r][fc])
        basis.append(v)
    return basis


def solve(field, m, b):
    """One solution of m x = b, or None when inconsistent."""
    nr = len(m)
    nc = len(m[0]) if m else 0
    aug = [m[i][:] + [b[i]] for i in range(nr)]
    rref, pivots = row_reduce(field, aug) if aug else ([], [])
    if nc in pivots:
        return None
    x = [field.zero] * nc
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][nc]
    return x


class ColumnSpace:
    """Incremental column space over a field; add() reports rank growth."""

    def __init__(self, field):
        self.field = field
        self._rows = []  # echelon vectors
        self._pivots = []

    def add(self, vec):
        f = self.field
        v = vec[:]
        for rvec, p in zip(self._rows, self._pivots):
            if v[p] != f.zero:
                factor = v[p]
                v = [f.sub(v[j], f.mul(factor, rvec[j])) for j in range(len(v))]
        for j, val in enumerate(v):
            if val != f.zero:
                inv = f.div(f.one, val)
                v = [f.mul(w, inv) for w in v]
                self._rows.append(v)
                self._pivots.append(j)
                return True
        return False

    @property
    def dim(self):
        return len(self._rows)


def smith_normal_form(m):
    """Invariant factors of an integer matrix, positive, each dividing the
    next.  Zero factors are dropped, so the length is the rank."""
    a = [row[:] for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    divisors = []
    t = 0
    while True:
        # locate a nonzero entry of least magnitude in the trailing block
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [a[i][j] - q * a[t][j] for j in range(nc)]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [a[t][j] + a[offender][j] for j in range(nc)]
        divisors.append(abs(a[t][t]))
        t += 1
        if t == min(nr, nc):
            break
    return divisors
