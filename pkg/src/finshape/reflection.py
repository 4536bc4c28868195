"""Separation relation tower and the Hausdorff-style reflection of finite
spaces.

The tower:

* ``r1`` relates x and y when every pair of their neighborhoods meets.  On
  a finite space every neighborhood of a point contains its minimal open
  set, so it is enough that the two minimal open sets share a point, that
  is, that x and y have a common lower bound in the specialization order.
* ``r2`` is the chain closure of r1 and is an equivalence; its classes
  coincide with the connected components (a comparability x <= y already
  forces x r1 y, and an r1 pair shares a component through the common
  lower bound), which is enforced as a post-check.
* ``r3`` relates x and y when every continuous map into any Hausdorff
  space sends them to the same point.

Fast-path derivation note (shipped with this module).  The quotient by r2
is discrete: no comparability survives between distinct classes, and a
finite T1 space is discrete.  Discrete spaces are Hausdorff, so the
quotient projection already separates everything that any map into a
Hausdorff target could separate; conversely such a map is constant along
r1 chains, because points with overlapping neighborhood filters cannot be
separated in a Hausdorff codomain.  Hence r3 = r2 on finite spaces, and
``r3(mode="fast")`` returns exactly that.

The oracle mode recomputes r3 from the definition, made finite: any
continuous map into a Hausdorff space factors through its image, which is
a finite Hausdorff, hence discrete, space with at most n points.  So it
enumerates every continuous map into the discrete spaces with 1..n points
and intersects their kernels.  Both modes must agree; the test suite
checks this across a corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .errors import (
    NotConstantOnClasses,
    OracleTooLarge,
    PropertyCheckError,
    SearchSpaceTooLarge,
)
from .finspace import (
    ContinuousMap,
    Partition,
    connected_components,
    is_homeomorphic,
    product,
    quotient,
    _bits,
)

_ORACLE_MAX_POINTS = 6
_UNIVERSAL_SEARCH_LIMIT = 10**6


class RelationMatrix:
    """Reflexive symmetric relation on the points of a space."""

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError("row count mismatch")
        for x in range(n):
            if not (rows[x] >> x) & 1:
                raise ValueError(f"relation not reflexive at {x}")
            for y in _bits(rows[x]):
                if not (rows[y] >> x) & 1:
                    raise ValueError(f"relation not symmetric at ({x}, {y})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RelationMatrix is immutable")

    def holds(self, x, y):
        return bool((self.rows[x] >> y) & 1)

    def pairs(self):
        """All related pairs (x, y) with x < y."""
        out = []
        for x in range(self.n):
            for y in _bits(self.rows[x] >> (x + 1)):
                out.append((x, x + 1 + y))
        return out


def r1(space):
    """Neighborhood-overlap relation: x related to y when the minimal open
    sets of x and y intersect (common lower bound)."""
    rows = [0] * space.n
    for x in range(space.n):
        for y in range(x, space.n):
            if space.down[x] & space.down[y]:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return RelationMatrix(space.n, rows)


def r2(space):
    """Chain closure of r1, as a Partition.  Post-checked to equal the
    connected components."""
    closed = _kernels.closure_rows(space.n, list(r1(space).rows))
    part = Partition.from_relation_rows(space.n, closed)
    if part != connected_components(space):
        raise PropertyCheckError(
            "chain closure of the neighborhood-overlap relation does not "
            "match connected components"
        )
    return part


def r3(space, mode="fast"):
    """Identification forced by all continuous maps into Hausdorff spaces.

    mode="fast" uses the finite-space identity r3 = r2 (see module
    docstring).  mode="oracle" recomputes from the definition restricted
    to discrete codomains with at most n points; it refuses n > 6."""
    if mode == "fast":
        return r2(space)
    if mode == "oracle":
        if space.n > _ORACLE_MAX_POINTS:
            raise OracleTooLarge(
                f"oracle mode enumerates all maps into discrete targets and "
                f"is limited to n <= {_ORACLE_MAX_POINTS}, got n = {space.n}"
            )
        rows = _kernels.r3_oracle_rows(space.n, list(space.up))
        return Partition.from_relation_rows(space.n, rows)
    raise ValueError(f"unknown mode {mode!r}")


def hausdorff_reflection(space, mode="fast"):
    """Quotient by r3 with its projection.

    The result is discrete (finite Hausdorff spaces are discrete) and the
    projection is continuous and surjective; both are post-checked."""
    refl, proj = quotient(space, r3(space, mode))
    if not refl.is_discrete():
        raise PropertyCheckError("reflection quotient is not discrete")
    if not proj.is_surjective():
        raise PropertyCheckError("reflection projection is not surjective")
    return refl, proj


def factor_through(f, reflection_pair):
    """Map g with g after projection = f, for f into a discrete space.

    ``reflection_pair`` is the (space, projection) output of
    ``hausdorff_reflection`` on f's domain.  g is unique with this
    property because the projection is surjective; it is read off the
    class representatives and then verified pointwise."""
    refl, proj = reflection_pair
    if not proj.dom.same_topology(f.dom):
        raise ValueError("reflection was not computed from the map's domain")
    if not f.cod.is_discrete():
        raise ValueError("codomain is not discrete")
    g = [0] * refl.n
    seen = [False] * refl.n
    for x in range(f.dom.n):
        c = proj(x)
        if not seen[c]:
            seen[c] = True
            g[c] = f(x)
    for x in range(f.dom.n):
        if g[proj(x)] != f(x):
            raise NotConstantOnClasses(
                f"map value at {f.dom.label(x)} differs from its class representative"
            )
    return ContinuousMap(refl, f.cod, g)


@dataclass(frozen=True)
class UniversalPropertyReport:
    """Outcome of exhaustively checking the factorization property."""

    n: int
    classes: int
    max_target: int
    maps_checked: int
    verified_maps: int
    failures: tuple = field(default_factory=tuple)

    @property
    def passed(self):
        return not self.failures


def verify_universal_property(space, max_target):
    """Enumerate every continuous map from ``space`` into every discrete
    space with at most ``max_target`` points; check each factors through
    the reflection by exactly one map.  Uniqueness is established by
    literal enumeration of all candidate factorizations."""
    if max_target ** max(space.n, 1) > _UNIVERSAL_SEARCH_LIMIT:
        raise SearchSpaceTooLarge(
            f"{max_target}^{space.n} candidate maps exceed the "
            f"{_UNIVERSAL_SEARCH_LIMIT} enumeration guard"
        )
    refl, proj = hausdorff_reflection(space)
    class_of = list(proj.mapping)
    checked = 0
    verified = 0
    failures = []
    for k in range(1, max_target + 1):
        for f in _kernels.continuous_maps_to_discrete(space.n, k, list(space.up)):
            checked += 1
            count = _kernels.count_matching_factorizations(refl.n, k, class_of, list(f))
            if count == 1:
                verified += 1
            else:
                failures.append(f"target size {k}, map {f}: {count} factorizations")
    return UniversalPropertyReport(
        n=space.n,
        classes=refl.n,
        max_target=max_target,
        maps_checked=checked,
        verified_maps=verified,
        failures=tuple(failures),
    )


def reflection_commutes_with_product(x, y):
    """Whether the reflection of the product is homeomorphic to the product
    of the reflections.  True for all finite spaces (components of a
    product are products of components); the search returns an explicit
    witness, so a False here is evidence of a bug."""
    lhs, _ = hausdorff_reflection(product(x, y))
    rx, _ = hausdorff_reflection(x)
    ry, _ = hausdorff_reflection(y)
    return is_homeomorphic(lhs, product(rx, ry)) is not None
