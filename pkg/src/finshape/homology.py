"""Order complexes of finite T0 spaces and exact simplicial homology.

Simplices are strictly ascending vertex tuples, stored sorted
lexicographically within each dimension; boundary matrices orient faces by
ascending vertex order, so matrices and signs are deterministic.  Integer
homology goes through Smith normal form with arbitrary-precision
arithmetic; field homology (rationals or a prime field) goes through exact
rank computations.  Homology is unreduced throughout, so the degree-0 rank
counts connected components.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _linalg
from ._linalg import QQ, ColumnSpace, PrimeField
from .errors import NotContinuous, NotT0, UnsupportedPrime
from .finspace import _bits, is_t0


class SimplicialComplex:
    """Face-closed set of simplices on vertices 0..vertices-1."""

    __slots__ = ("vertices", "_by_dim")

    def __init__(self, vertices, simplices, check=True):
        by_dim = {}
        seen = set()
        for s in simplices:
            st = tuple(s)
            if check:
                if not st:
                    raise ValueError("empty simplex")
                if any(st[i] >= st[i + 1] for i in range(len(st) - 1)):
                    raise ValueError(f"simplex {st} not strictly ascending")
                if st[0] < 0 or st[-1] >= vertices:
                    raise ValueError(f"simplex {st} outside vertex range")
            if st in seen:
                continue
            seen.add(st)
            by_dim.setdefault(len(st) - 1, []).append(st)
        for d in by_dim:
            by_dim[d].sort()
        if check:
            for d, simps in by_dim.items():
                if d == 0:
                    continue
                lower = set(by_dim.get(d - 1, ()))
                for s in simps:
                    for i in range(len(s)):
                        face = s[:i] + s[i + 1 :]
                        if face not in lower:
                            raise ValueError(f"face {face} of {s} missing")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(
            self, "_by_dim", {d: tuple(v) for d, v in sorted(by_dim.items())}
        )

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    @classmethod
    def from_maximal(cls, vertices, faces):
        """Complex generated by the given simplices and all their faces."""
        closure = set()
        stack = [tuple(sorted(set(f))) for f in faces]
        while stack:
            s = stack.pop()
            if not s or s in closure:
                continue
            closure.add(s)
            for i in range(len(s)):
                stack.append(s[:i] + s[i + 1 :])
        return cls(vertices, closure, check=False)

    def dim(self):
        return max(self._by_dim) if self._by_dim else -1

    def simplices(self, d=None):
        if d is not None:
            return self._by_dim.get(d, ())
        out = []
        for d in sorted(self._by_dim):
            out.extend(self._by_dim[d])
        return tuple(out)

    def f_vector(self):
        return tuple(len(self._by_dim.get(d, ())) for d in range(self.dim() + 1))

    def euler_characteristic(self):
        return sum((-1) ** d * len(s) for d, s in self._by_dim.items())

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self._by_dim == other._by_dim
        )

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self._by_dim.items()))))

    def __repr__(self):
        return f"SimplicialComplex(vertices={self.vertices}, f={self.f_vector()})"


def cycle_complex(k):
    """Polygon circle: k vertices, k edges."""
    if k < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    edges = [tuple(sorted((i, (i + 1) % k))) for i in range(k)]
    return SimplicialComplex.from_maximal(k, edges)


def path_complex(edges):
    """Path segment with the given number of edges."""
    if edges < 1:
        raise ValueError("a path needs at least 1 edge")
    return SimplicialComplex.from_maximal(
        edges + 1, [(i, i + 1) for i in range(edges)]
    )


def full_simplex(k):
    return SimplicialComplex.from_maximal(k, [tuple(range(k))])


def order_complex(space):
    """Simplices are the nonempty chains of the partial order; requires a
    T0 space (apply the T0 identification first otherwise)."""
    if not is_t0(space):
        raise NotT0("order complex requires a T0 space")
    simplices = []
    n = space.n

    def grow(chain, last):
        simplices.append(tuple(chain))
        for nxt in range(last + 1, n):
            if all(space.leq(nxt, c) or space.leq(c, nxt) for c in chain):
                chain.append(nxt)
                grow(chain, nxt)
                chain.pop()

    for v in range(n):
        grow([v], v)
    return SimplicialComplex(n, simplices, check=False)


def boundary_matrix(complex_, d):
    """Integer matrix of the boundary map from d-chains to (d-1)-chains;
    rows follow the (d-1)-simplices, columns the d-simplices."""
    rows = complex_.simplices(d - 1)
    cols = complex_.simplices(d)
    index = {s: i for i, s in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            m[index[face]][j] = 1 if i % 2 == 0 else -1
    return m


@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers per degree, plus torsion elementary divisors (> 1,
    each dividing the next) when computed over the integers."""

    coeff: str
    betti: tuple
    torsion: tuple

    def __post_init__(self):
        if any(b < 0 for b in self.betti):
            raise ValueError("negative betti number")
        for tors in self.torsion:
            for a, b in zip(tors, tors[1:]):
                if b % a:
                    raise ValueError("torsion divisors do not form a chain")
            if any(t < 2 for t in tors):
                raise ValueError("torsion divisor below 2")

    def betti_at(self, k):
        return self.betti[k] if 0 <= k < len(self.betti) else 0

    def torsion_at(self, k):
        return self.torsion[k] if 0 <= k < len(self.torsion) else ()


def coefficient_field(coeff):
    """Field object for a coefficient name: "q" rationals, "z<p>" mod-p.
    Returns None for "z" (integers, which are not a field)."""
    c = coeff.lower()
    if c == "z":
        return None
    if c == "q":
        return QQ
    if c.startswith("z") and c[1:].isdigit():
        p = int(c[1:])
        return PrimeField(p)
    raise ValueError(f"unknown coefficient spec {coeff!r}")


def homology(complex_, coeff="z"):
    """Unreduced simplicial homology in all degrees 0..dim.

    Integer coefficients use Smith normal form (exact); "q" or "z<p>" use
    exact field ranks.  Raises UnsupportedPrime for composite moduli."""
    field = coefficient_field(coeff)
    top = complex_.dim()
    if top < 0:
        return HomologyResult(coeff=coeff, betti=(), torsion=())
    counts = [len(complex_.simplices(d)) for d in range(top + 1)]
    betti = []
    torsion = []
    if field is None:
        factors = [
            _linalg.smith_normal_form(boundary_matrix(complex_, d))
            for d in range(1, top + 1)
        ]
        ranks = [0] + [len(f) for f in factors] + [0]
        for d in range(top + 1):
            betti.append(counts[d] - ranks[d] - ranks[d + 1])
            # torsion of H_d: invariant factors of the (d+1)-boundary
            if d < top:
                torsion.append(tuple(v for v in factors[d] if v > 1))
            else:
                torsion.append(())
    else:
        ranks = [0]
        for d in range(1, top + 1):
            m = _linalg.mat_from_int(field, boundary_matrix(complex_, d))
            ranks.append(_linalg.rank(field, m))
        ranks.append(0)
        for d in range(top + 1):
            betti.append(counts[d] - ranks[d] - ranks[d + 1])
            torsion.append(())
    return HomologyResult(coeff=coeff, betti=tuple(betti), torsion=tuple(torsion))


class FieldHomology:
    """Homology of a complex over a field with explicit cycle
    representatives, so chains can be expressed in homology coordinates."""

    def __init__(self, complex_, field):
        self.complex = complex_
        self.field = field
        self._deg = {}
        top = complex_.dim()
        for d in range(top + 1):
            nd = len(complex_.simplices(d))
            bnd_in = (
                _linalg.mat_from_int(field, boundary_matrix(complex_, d + 1))
                if d + 1 <= top
                else [[field.zero] * 0 for _ in range(nd)]
            )
            space = ColumnSpace(field)
            boundary_cols = []
            ncols_in = len(bnd_in[0]) if bnd_in and bnd_in[0] is not None else 0
            for j in range(ncols_in):
                col = [bnd_in[i][j] for i in range(nd)]
                if space.add(col):
                    boundary_cols.append(col)
            if d == 0:
                cycle_candidates = [
                    [field.one if i == j else field.zero for i in range(nd)]
                    for j in range(nd)
                ]
            else:
                m = _linalg.mat_from_int(field, boundary_matrix(complex_, d))
                cycle_candidates = _linalg.nullspace(field, m)
            chosen = []
            for v in cycle_candidates:
                if space.add(v):
                    chosen.append(v)
            basis_matrix = [
                [col[i] for col in boundary_cols + chosen] for i in range(nd)
            ]
            self._deg[d] = (len(boundary_cols), chosen, basis_matrix)

    def betti(self, k):
        entry = self._deg.get(k)
        return len(entry[1]) if entry else 0

    def betti_vector(self):
        top = self.complex.dim()
        return tuple(self.betti(k) for k in range(top + 1))

    def basis_cycles(self, k):
        entry = self._deg.get(k)
        return [v[:] for v in entry[1]] if entry else []

    def coords(self, k, chain):
        """Homology coordinates of a cycle given as a chain vector."""
        entry = self._deg.get(k)
        if not entry:
            if any(v != self.field.zero for v in chain):
                raise ValueError("nonzero chain in an empty degree")
            return []
        nb, chosen, basis_matrix = entry
        if not chosen and nb == 0:
            return []
        sol = _linalg.solve(self.field, basis_matrix, list(chain))
        if sol is None:
            raise ValueError("chain is not a cycle of this complex")
        return sol[nb:]


@dataclass(frozen=True)
class LinearMapOnHomology:
    """Per-degree matrices of an induced map on field homology, shaped
    betti(cod) x betti(dom); entries are field elements."""

    coeff: str
    dims: tuple
    matrices: tuple

    def matrix(self, k):
        if 0 <= k < len(self.matrices):
            return self.matrices[k]
        return ()

    def dim(self, k):
        if 0 <= k < len(self.dims):
            return self.dims[k]
        return (0, 0)


def chain_map_image(vertex_map, simplex):
    """Image of an oriented simplex under a vertex map: (sign, simplex) or
    None when the image is degenerate."""
    image = [vertex_map[v] for v in simplex]
    if len(set(image)) != len(image):
        return None
    inversions = 0
    for i in range(len(image)):
        for j in range(i + 1, len(image)):
            if image[i] > image[j]:
                inversions += 1
    return (1 if inversions % 2 == 0 else -1, tuple(sorted(image)))


def induced_matrix(vertex_map, dom_complex, cod_complex, dom_h, cod_h, k):
    """Matrix of the induced map on degree-k homology (cod coords of the
    images of dom basis cycles, as columns)."""
    field = dom_h.field
    dom_simps = dom_complex.simplices(k)
    cod_simps = cod_complex.simplices(k)
    cod_index = {s: i for i, s in enumerate(cod_simps)}
    cols = []
    for cycle in dom_h.basis_cycles(k):
        out = [field.zero] * len(cod_simps)
        for j, s in enumerate(dom_simps):
            if cycle[j] == field.zero:
                continue
            image = chain_map_image(vertex_map, s)
            if image is None:
                continue
            sign, target = image
            if target not in cod_index:
                raise ValueError(f"image simplex {target} missing from codomain complex")
            coef = cycle[j] if sign == 1 else field.neg(cycle[j])
            out[cod_index[target]] = field.add(out[cod_index[target]], coef)
        cols.append(cod_h.coords(k, out))
    rows = cod_h.betti(k)
    return tuple(
        tuple(cols[c][r] for c in range(len(cols))) for r in range(rows)
    )


def induced_map(f, coeff):
    """Induced linear maps on homology over a field, for a continuous map
    between T0 spaces.  The vertex map sends chains to chains, so it is a
    simplicial map between the order complexes."""
    field = coefficient_field(coeff)
    if field is None:
        raise ValueError("induced maps need field coefficients (q or z<p>)")
    if not is_t0(f.dom) or not is_t0(f.cod):
        raise NotT0("induced maps need T0 spaces on both sides")
    if not f.is_continuous():
        raise NotContinuous("map is not order preserving")
    dom_c = order_complex(f.dom)
    cod_c = order_complex(f.cod)
    dom_h = FieldHomology(dom_c, field)
    cod_h = FieldHomology(cod_c, field)
    top = max(dom_c.dim(), cod_c.dim(), 0)
    dims = []
    mats = []
    for k in range(top + 1):
        dims.append((cod_h.betti(k), dom_h.betti(k)))
        mats.append(induced_matrix(f.mapping, dom_c, cod_c, dom_h, cod_h, k))
    return LinearMapOnHomology(coeff=coeff, dims=tuple(dims), matrices=tuple(mats))
