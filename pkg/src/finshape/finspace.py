"""Finite topological spaces as specialization preorders.

A finite space is stored as the preorder x <= y meaning "x lies in every
open set containing y", equivalently U_x is contained in U_y where U_z is
the minimal open set of z.  Open sets are exactly the down-sets of the
preorder, so the encoding is lossless and nothing else is materialized
(open-set families appear only in diagnostics and test oracles).

Points are dense integer indices; labels are display metadata only.  All
values are immutable after construction and every operation is a pure
function of its inputs.  Ties (block representatives, quotient ordering)
always resolve to the smallest index so outputs are reproducible.
"""

from __future__ import annotations

import random
from itertools import combinations

from . import _kernels
from .errors import (
    DuplicateLabel,
    IndexOutOfRange,
    InvalidPartition,
    NotATopology,
    NotContinuous,
    PropertyCheckError,
    QuotientMismatch,
)

_QUOTIENT_ORACLE_EXHAUSTIVE_BLOCKS = 12
_QUOTIENT_ORACLE_SAMPLES = 2000


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask):
    return bin(mask).count("1")


class FiniteSpace:
    """Immutable finite space; ``up[x]`` / ``down[x]`` are bitmask rows of
    {y : x <= y} and {y : y <= x}.  ``down[x]`` is the minimal open set of
    x.  Reflexivity and transitivity are checked on construction."""

    __slots__ = ("n", "up", "down", "labels")

    def __init__(self, n, up_rows, labels=None):
        if n < 0:
            raise ValueError("negative point count")
        up = tuple(int(r) for r in up_rows)
        if len(up) != n:
            raise ValueError(f"expected {n} relation rows, got {len(up)}")
        full = (1 << n) - 1
        for x, row in enumerate(up):
            if row & ~full:
                raise IndexOutOfRange(f"row {x} mentions points beyond {n - 1}")
            if not (row >> x) & 1:
                raise ValueError(f"relation not reflexive at point {x}")
        if list(up) != _kernels.closure_rows(n, list(up)):
            raise ValueError("relation not transitive")
        down = [0] * n
        for x in range(n):
            for y in _bits(up[x]):
                down[y] |= 1 << x
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("label count does not match point count")
            if len(set(labels)) != n:
                raise DuplicateLabel("duplicate point labels")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteSpace is immutable")

    def __repr__(self):
        return f"FiniteSpace(n={self.n})"

    def leq(self, x, y):
        """Whether x <= y, i.e. x lies in every open set containing y."""
        return bool((self.up[x] >> y) & 1)

    def label(self, x):
        return self.labels[x] if self.labels is not None else str(x)

    def check_index(self, x):
        if not 0 <= x < self.n:
            raise IndexOutOfRange(f"point {x} outside 0..{self.n - 1}")

    def is_discrete(self):
        return all(self.up[x] == 1 << x for x in range(self.n))

    def same_topology(self, other):
        """Structural identity of point set and preorder (labels ignored)."""
        return self.n == other.n and self.up == other.up


class Partition:
    """Partition of 0..n-1; blocks are canonically ordered by their
    smallest member, which is also the block representative."""

    __slots__ = ("n", "blocks", "block_of")

    def __init__(self, n, blocks):
        seen = 0
        canon = []
        for b in blocks:
            bt = tuple(sorted(set(b)))
            if not bt:
                raise InvalidPartition("empty block")
            mask = 0
            for x in bt:
                if not 0 <= x < n:
                    raise InvalidPartition(f"point {x} outside 0..{n - 1}")
                mask |= 1 << x
            if seen & mask:
                raise InvalidPartition("overlapping blocks")
            seen |= mask
            canon.append(bt)
        if seen != (1 << n) - 1:
            raise InvalidPartition("blocks do not cover all points")
        canon.sort(key=lambda b: b[0])
        block_of = [0] * n
        for i, b in enumerate(canon):
            for x in b:
                block_of[x] = i
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", tuple(canon))
        object.__setattr__(self, "block_of", tuple(block_of))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, Partition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return f"Partition(n={self.n}, blocks={self.blocks})"

    @property
    def reps(self):
        return tuple(b[0] for b in self.blocks)

    def block_masks(self):
        out = []
        for b in self.blocks:
            m = 0
            for x in b:
                m |= 1 << x
            out.append(m)
        return out

    @classmethod
    def singletons(cls, n):
        return cls(n, [(x,) for x in range(n)])

    @classmethod
    def one_block(cls, n):
        return cls(n, [tuple(range(n))] if n else [])

    @classmethod
    def from_relation_rows(cls, n, rows):
        """Partition from an equivalence relation given as row bitmasks."""
        seen = {}
        blocks = []
        for x in range(n):
            m = rows[x]
            if m not in seen:
                seen[m] = True
                blocks.append(tuple(_bits(m)))
        return cls(n, blocks)


class ContinuousMap:
    """Point function between finite spaces; continuity is equivalent to
    order preservation and is checked on construction by default."""

    __slots__ = ("dom", "cod", "mapping")

    def __init__(self, dom, cod, mapping, check=True):
        mapping = tuple(int(v) for v in mapping)
        if len(mapping) != dom.n:
            raise ValueError("mapping length does not match domain size")
        for v in mapping:
            if not 0 <= v < cod.n:
                raise IndexOutOfRange(f"image point {v} outside codomain")
        if check:
            for x in range(dom.n):
                for y in _bits(dom.up[x]):
                    if not cod.leq(mapping[x], mapping[y]):
                        raise NotContinuous(
                            f"{dom.label(x)} <= {dom.label(y)} but images are incomparable"
                        )
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("ContinuousMap is immutable")

    def __call__(self, x):
        return self.mapping[x]

    def __repr__(self):
        return f"ContinuousMap({self.dom.n} -> {self.cod.n})"

    def is_continuous(self):
        for x in range(self.dom.n):
            for y in _bits(self.dom.up[x]):
                if not self.cod.leq(self.mapping[x], self.mapping[y]):
                    return False
        return True

    def is_surjective(self):
        return len(set(self.mapping)) == self.cod.n

    def is_injective(self):
        return len(set(self.mapping)) == self.dom.n

    def is_bijective(self):
        return self.is_surjective() and self.is_injective()

    @classmethod
    def identity(cls, space):
        return cls(space, space, tuple(range(space.n)), check=False)


def compose(f, g):
    """Composite f after g (apply g, then f)."""
    if not g.cod.same_topology(f.dom):
        raise ValueError("codomain of inner map does not match domain of outer map")
    return ContinuousMap(g.dom, f.cod, tuple(f.mapping[v] for v in g.mapping), check=False)


# ---------------------------------------------------------------------------
# constructors


def from_preorder(n, pairs, labels=None):
    """Space generated by x <= y for each pair (x, y); the stored relation
    is the reflexive-transitive closure of the generators."""
    rows = [1 << x for x in range(n)]
    for x, y in pairs:
        if not 0 <= x < n or not 0 <= y < n:
            raise IndexOutOfRange(f"pair ({x}, {y}) outside 0..{n - 1}")
        rows[x] |= 1 << y
    return FiniteSpace(n, _kernels.closure_rows(n, rows), labels)


def from_opens(points, opens):
    """Space from a topology presented by its open sets (as label subsets).

    The family must contain the empty and total sets and be closed under
    pairwise union and intersection (enough, for a finite family, for
    closure under arbitrary unions)."""
    labels = tuple(points)
    if len(set(labels)) != len(labels):
        raise DuplicateLabel("duplicate point labels")
    n = len(labels)
    index = {p: i for i, p in enumerate(labels)}
    family = set()
    for subset in opens:
        s = frozenset()
        for p in subset:
            if p not in index:
                raise ValueError(f"open set mentions unknown point {p!r}")
            s |= {index[p]}
        family.add(s)
    if frozenset() not in family:
        raise NotATopology("empty set missing")
    if frozenset(range(n)) not in family:
        raise NotATopology("total set missing")
    for a, b in combinations(family, 2):
        if a | b not in family:
            raise NotATopology("family not closed under union")
        if a & b not in family:
            raise NotATopology("family not closed under intersection")
    rows = []
    for x in range(n):
        row = 0
        for y in range(n):
            if all(x in o for o in family if y in o):
                row |= 1 << y
        rows.append(row)
    return FiniteSpace(n, rows, labels)


def discrete(n, labels=None):
    return FiniteSpace(n, [1 << x for x in range(n)], labels)


def indiscrete(n, labels=None):
    full = (1 << n) - 1
    return FiniteSpace(n, [full] * n, labels)


def sierpinski():
    """Two points a, b with opens {}, {a}, {a, b}."""
    return from_opens(("a", "b"), [(), ("a",), ("a", "b")])


def pseudocircle():
    """Four points: a, b minimal, c, d maximal; weak homotopy circle."""
    return from_preorder(4, [(0, 2), (0, 3), (1, 2), (1, 3)], ("a", "b", "c", "d"))


def disjoint_union(x, y):
    """Sum space; points of x keep their indices, points of y are shifted."""
    n = x.n + y.n
    rows = list(x.up) + [row << x.n for row in y.up]
    labels = None
    if x.labels is not None or y.labels is not None:
        labels = tuple(f"L.{x.label(i)}" for i in range(x.n)) + tuple(
            f"R.{y.label(j)}" for j in range(y.n)
        )
    return FiniteSpace(n, rows, labels)


# ---------------------------------------------------------------------------
# basic operations


def minimal_open(space, x):
    """The minimal open set U_x = {y : y <= x}, the intersection of all
    open sets containing x."""
    space.check_index(x)
    return frozenset(_bits(space.down[x]))


def all_open_sets(space):
    """Every open set (down-set), as frozensets.  Exponential; intended for
    diagnostics and oracles only."""
    if space.n > 16:
        raise ValueError("open-set enumeration limited to n <= 16")
    opens = []
    for mask in range(1 << space.n):
        closed_down = True
        for y in _bits(mask):
            if space.down[y] & ~mask:
                closed_down = False
                break
        if closed_down:
            opens.append(frozenset(_bits(mask)))
    return opens


def is_t0(space):
    """T0 holds exactly when the preorder is antisymmetric."""
    for x in range(space.n):
        if space.up[x] & space.down[x] != 1 << x:
            return False
    return True


def is_t1(space):
    """T1 via neighborhoods: for distinct points each has an open set
    avoiding the other.  Minimal opens are the strongest witnesses, so this
    reduces to the absence of strict comparabilities."""
    for x in range(space.n):
        for y in _bits(space.down[x]):
            if y != x:
                return False
    return True


def kolmogorov_quotient(space):
    """Identify topologically indistinguishable points (x <= y <= x).

    Returns the T0 quotient and the projection, which is continuous and
    surjective."""
    rows = [space.up[x] & space.down[x] for x in range(space.n)]
    part = Partition.from_relation_rows(space.n, rows)
    quot, proj = quotient(space, part)
    if not is_t0(quot):
        raise PropertyCheckError("T0 identification did not produce a T0 space")
    return quot, proj


def quotient(space, part):
    """Quotient space on the blocks of ``part`` with the quotient topology:
    a set of blocks is open exactly when its union is open downstairs.

    The block preorder is computed as the reflexive-transitive closure of
    "some member of [x] is <= some member of [y]" and then verified against
    the openness definition: exhaustively when there are at most 12 blocks,
    on a deterministic sample of block sets above that.  A disagreement is
    a library bug and raises QuotientMismatch."""
    if part.n != space.n:
        raise InvalidPartition("partition size does not match space")
    m = len(part.blocks)
    masks = part.block_masks()
    gen = [0] * m
    for i in range(m):
        up_union = 0
        for x in part.blocks[i]:
            up_union |= space.up[x]
        for j in range(m):
            if up_union & masks[j]:
                gen[i] |= 1 << j
    rows = _kernels.closure_rows(m, gen)
    labels = None
    if space.labels is not None:
        labels = tuple("|".join(space.label(x) for x in b) for b in part.blocks)
    quot = FiniteSpace(m, rows, labels)
    _verify_quotient_openness(space, part, quot, masks)
    proj = ContinuousMap(space, quot, part.block_of)
    return quot, proj


def _verify_quotient_openness(space, part, quot, masks):
    m = len(part.blocks)

    def union_is_open(block_set):
        u = 0
        for j in _bits(block_set):
            u |= masks[j]
        for y in _bits(u):
            if space.down[y] & ~u:
                return False
        return True

    def quotient_open(block_set):
        for j in _bits(block_set):
            if quot.down[j] & ~block_set:
                return False
        return True

    if m <= _QUOTIENT_ORACLE_EXHAUSTIVE_BLOCKS:
        candidates = range(1 << m)
    else:
        rng = random.Random(0x51AB)
        candidates = [rng.getrandbits(m) for _ in range(_QUOTIENT_ORACLE_SAMPLES)]
    for s in candidates:
        if quotient_open(s) != union_is_open(s):
            raise QuotientMismatch(
                f"block set {sorted(_bits(s))} open per closure formula: "
                f"{quotient_open(s)}, per openness definition: {union_is_open(s)}"
            )


def product(x, y):
    """Product space on pairs; (a, b) <= (c, d) iff a <= c and b <= d.
    Pair (a, b) gets index a * y.n + b."""
    n = x.n * y.n
    rows = [0] * n
    for a in range(x.n):
        for b in range(y.n):
            row = 0
            for c in _bits(x.up[a]):
                for d in _bits(y.up[b]):
                    row |= 1 << (c * y.n + d)
            rows[a * y.n + b] = row
    labels = None
    if x.labels is not None or y.labels is not None:
        labels = tuple(
            f"({x.label(a)},{y.label(b)})" for a in range(x.n) for b in range(y.n)
        )
    return FiniteSpace(n, rows, labels)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root for deterministic classes
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def connected_components(space):
    """Components of the comparability graph (x -- y when x <= y or
    y <= x), as a Partition."""
    uf = _UnionFind(space.n)
    for x in range(space.n):
        for y in _bits(space.up[x]):
            uf.union(x, y)
    groups = {}
    for x in range(space.n):
        groups.setdefault(uf.find(x), []).append(x)
    return Partition(space.n, list(groups.values()))


# ---------------------------------------------------------------------------
# homeomorphism search


def _joint_signatures(x, y):
    """Stable order-refinement signatures computed jointly so the ids are
    comparable across both spaces."""
    spaces = (x, y)
    sig = [
        [(_popcount(s.down[p]), _popcount(s.up[p])) for p in range(s.n)]
        for s in spaces
    ]
    for _ in range(max(x.n, y.n)):
        keys = [[None] * s.n for s in spaces]
        for si, s in enumerate(spaces):
            for p in range(s.n):
                below = sorted(sig[si][q] for q in _bits(s.down[p]) if q != p)
                above = sorted(sig[si][q] for q in _bits(s.up[p]) if q != p)
                keys[si][p] = (sig[si][p], tuple(below), tuple(above))
        table = {k: i for i, k in enumerate(sorted({k for ks in keys for k in ks}))}
        new = [[table[k] for k in ks] for ks in keys]
        if new == sig:
            break
        sig = new
    return sig[0], sig[1]


def is_homeomorphic(x, y):
    """Order isomorphism between two spaces, as a mapping tuple from x
    indices to y indices, or None.  Exact backtracking search with
    signature pruning."""
    if x.n != y.n:
        return None
    n = x.n
    if n == 0:
        return ()
    sig_x, sig_y = _joint_signatures(x, y)
    if sorted(sig_x) != sorted(sig_y):
        return None
    candidates = [
        [q for q in range(n) if sig_y[q] == sig_x[p]] for p in range(n)
    ]
    order = sorted(range(n), key=lambda p: (len(candidates[p]), p))
    mapping = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        p = order[i]
        for q in candidates[p]:
            if used[q]:
                continue
            ok = True
            for j in range(i):
                p2 = order[j]
                q2 = mapping[p2]
                if x.leq(p, p2) != y.leq(q, q2) or x.leq(p2, p) != y.leq(q2, q):
                    ok = False
                    break
            if ok:
                mapping[p] = q
                used[q] = True
                if rec(i + 1):
                    return True
                mapping[p] = -1
                used[q] = False
        return False

    if rec(0):
        return tuple(mapping)
    return None
