"""Exact rational linear algebra and polyhedral primitives.

Everything here is computed over ``fractions.Fraction``; no floating point
enters anywhere.  Polytopes are small (a few dozen vertices, ambient rank
up to about six), so hulls, face lattices and nearest-point projections are
done by exhaustive enumeration rather than by industrial-strength geometry
codes.  All values are immutable and all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Union

RatLike = Union[int, str, Fraction]


class InputError(ValueError):
    """Malformed input: dimension mismatch, zero vector, bad matrix."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold for the given arguments."""


class ResourceLimitError(RuntimeError):
    """An enumeration bound was exceeded; the input is too large by contract."""


def rat(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class QVector:
    """A vector with exact rational coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(rat(c) for c in self.coords))

    @staticmethod
    def of(*coords: RatLike) -> "QVector":
        return QVector(tuple(rat(c) for c in coords))

    @staticmethod
    def zero(dim: int) -> "QVector":
        return QVector((Fraction(0),) * dim)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __add__(self, other: "QVector") -> "QVector":
        _same_dim(self, other)
        return QVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QVector") -> "QVector":
        _same_dim(self, other)
        return QVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self.coords))

    def scale(self, c: RatLike) -> "QVector":
        c = rat(c)
        return QVector(tuple(c * a for a in self.coords))

    def dot(self, other: "QVector") -> Fraction:
        _same_dim(self, other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def key(self) -> tuple[Fraction, ...]:
        """Deterministic sort key."""
        return self.coords


def _same_dim(a: QVector, b: QVector) -> None:
    if len(a) != len(b):
        raise InputError(f"dimension mismatch: {len(a)} vs {len(b)}")


def as_qvector(v: Union[QVector, Sequence[RatLike]]) -> QVector:
    if isinstance(v, QVector):
        return v
    return QVector(tuple(rat(c) for c in v))


def primitive(v: QVector) -> QVector:
    """The unique positive multiple of v with coprime integer entries.

    Direction is preserved; there is no sign normalization.
    """
    if v.is_zero:
        raise InputError("primitive() of the zero vector")
    den = math.lcm(*(c.denominator for c in v.coords))
    ints = [int(c * den) for c in v.coords]
    g = math.gcd(*(abs(i) for i in ints))
    return QVector(tuple(Fraction(i, g) for i in ints))


# ---------------------------------------------------------------------------
# dense exact linear algebra on lists of rows

Matrix = list[list[Fraction]]


def _echelon(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (in place on a copy); returns (rref, pivots)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def mat_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    _, pivots = _echelon([list(r) for r in rows])
    return len(pivots)


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
                 ) -> Optional[list[Fraction]]:
    """Solve A x = b when A has full column rank; None if inconsistent.

    Raises InputError if the system is consistent but underdetermined.
    """
    if not rows:
        return []
    aug = [list(r) + [rat(b)] for r, b in zip(rows, rhs)]
    m, pivots = _echelon(aug)
    ncols = len(rows[0])
    for row in m:
        if all(x == 0 for x in row[:ncols]) and row[ncols] != 0:
            return None
    if ncols in pivots:
        return None  # pivot in the rhs column: inconsistent
    if len(pivots) < ncols:
        raise InputError("underdetermined linear system")
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return sol


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = _echelon([list(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -m[i][f]
        basis.append(vec)
    return basis


def mat_invert(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    m, pivots = _echelon(aug)
    if len(pivots) < n or any(p >= n for p in pivots):
        raise InputError("matrix is singular")
    return [row[n:] for row in m]


# ---------------------------------------------------------------------------
# Gram forms


@dataclass(frozen=True)
class GramForm:
    """A symmetric positive-definite rational bilinear form |v|^2 = v^T B v.

    The form lives on one-parameter-subgroup space; distance computations in
    character space use its inverse, which is precomputed exactly.
    """

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        mat = tuple(tuple(rat(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        n = len(mat)
        if any(len(row) != n for row in mat):
            raise InputError("Gram form matrix must be square")
        for i in range(n):
            for j in range(i):
                if mat[i][j] != mat[j][i]:
                    raise InputError("Gram form matrix must be symmetric")
        for k in range(1, n + 1):
            if _det([row[:k] for row in mat[:k]]) <= 0:
                raise InputError(
                    f"Gram form is not positive-definite: leading principal "
                    f"minor of order {k} is not positive")
        inv = mat_invert([list(row) for row in mat])
        object.__setattr__(self, "_inverse",
                           tuple(tuple(row) for row in inv))

    @staticmethod
    def identity(rank: int) -> "GramForm":
        return GramForm(tuple(tuple(Fraction(int(i == j)) for j in range(rank))
                              for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._inverse  # type: ignore[attr-defined]

    def apply(self, v: QVector) -> QVector:
        return QVector(tuple(sum((row[j] * v[j] for j in range(len(v))),
                                 Fraction(0)) for row in self.matrix))

    def apply_inverse(self, v: QVector) -> QVector:
        return QVector(tuple(sum((row[j] * v[j] for j in range(len(v))),
                                 Fraction(0)) for row in self.inverse))

    def norm_sq(self, v: QVector) -> Fraction:
        return v.dot(self.apply(v))

    def dual_norm_sq(self, v: QVector) -> Fraction:
        return v.dot(self.apply_inverse(v))

    def is_invariant_under(self, w: Sequence[Sequence[int]]) -> bool:
        """Check w^T B w == B for an integer matrix w."""
        n = self.rank
        wB = [[sum(Fraction(w[k][i]) * self.matrix[k][j] for k in range(n))
               for j in range(n)] for i in range(n)]
        wBw = [[sum(wB[i][k] * Fraction(w[k][j]) for k in range(n))
                for j in range(n)] for i in range(n)]
        return all(wBw[i][j] == self.matrix[i][j]
                   for i in range(n) for j in range(n))


def _det(rows: Matrix) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# hyperplanes


@dataclass(frozen=True)
class Hyperplane:
    """A rational hyperplane {x : normal . x = offset}.

    The normal is primitive integer with its first nonzero entry positive,
    so equal hyperplanes have equal representations.
    """

    normal: QVector
    offset: Fraction

    @staticmethod
    def through(normal: QVector, offset: RatLike) -> "Hyperplane":
        if normal.is_zero:
            raise InputError("hyperplane normal must be nonzero")
        prim = primitive(normal)
        scale = next(p / n for p, n in zip(prim, normal) if n != 0)
        off = rat(offset) * scale
        lead = next(c for c in prim if c != 0)
        if lead < 0:
            prim, off = -prim, -off
        return Hyperplane(prim, off)

    def eval(self, x: QVector) -> Fraction:
        return self.normal.dot(x) - self.offset

    def key(self) -> tuple:
        return (self.normal.coords, self.offset)


# ---------------------------------------------------------------------------
# polytopes


class Location(Enum):
    INTERIOR = "interior"   # relative interior
    BOUNDARY = "boundary"   # relative boundary
    OUTSIDE = "outside"


@dataclass(frozen=True)
class QPolytope:
    """A rational polytope carrying both V- and H-representations.

    ``facets`` are irredundant inequalities normal . x <= offset valid on the
    affine hull; ``equations`` cut out the affine hull itself.  Both are
    canonically normalized, so equal polytopes have equal fields.
    """

    vertices: tuple[QVector, ...]
    facets: tuple[tuple[QVector, Fraction], ...]
    equations: tuple[Hyperplane, ...]
    affine_dim: int

    @property
    def dim(self) -> int:
        return self.affine_dim

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    def contains(self, x: QVector) -> bool:
        return (all(eq.eval(x) == 0 for eq in self.equations)
                and all(n.dot(x) <= c for n, c in self.facets))

    def locate(self, x: QVector) -> Location:
        if any(eq.eval(x) != 0 for eq in self.equations):
            return Location.OUTSIDE
        worst = None
        for n, c in self.facets:
            g = n.dot(x) - c
            if g > 0:
                return Location.OUTSIDE
            worst = g if worst is None else max(worst, g)
        if worst is not None and worst == 0:
            return Location.BOUNDARY
        return Location.INTERIOR

    def vertex_key(self) -> tuple:
        return tuple(v.coords for v in self.vertices)

    def relative_interior_point(self) -> QVector:
        n = len(self.vertices)
        acc = self.vertices[0]
        for v in self.vertices[1:]:
            acc = acc + v
        return acc.scale(Fraction(1, n))

    def faces(self) -> list[frozenset[int]]:
        """All nonempty faces as frozensets of vertex indices (top included).

        Every proper face of a polytope is an intersection of facets, so the
        lattice is generated downward from the facet vertex sets.
        """
        top = frozenset(range(len(self.vertices)))
        tight = [frozenset(i for i, v in enumerate(self.vertices)
                           if n.dot(v) == c) for n, c in self.facets]
        seen = {top}
        frontier = [top]
        while frontier:
            f = frontier.pop()
            for t in tight:
                g = f & t
                if g and g != f and g not in seen:
                    seen.add(g)
                    frontier.append(g)
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def face_polytope(self, face: frozenset[int]) -> "QPolytope":
        return conv_hull([self.vertices[i] for i in sorted(face)])


def _affine_basis(points: Sequence[QVector]) -> tuple[QVector, list[QVector]]:
    """Base point plus a maximal independent set of difference vectors."""
    base = points[0]
    basis: list[QVector] = []
    rows: Matrix = []
    for p in points[1:]:
        d = p - base
        cand = rows + [list(d.coords)]
        if mat_rank(cand) > len(rows):
            rows = cand
            basis.append(d)
    return base, basis


def _local_coords(base: QVector, basis: list[QVector],
                  points: Iterable[QVector]) -> list[list[Fraction]]:
    """Coordinates of points in the affine frame (base; basis). Exact."""
    cols = [list(b.coords) for b in basis]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(base))]
    out = []
    for p in points:
        rhs = list((p - base).coords)
        sol = solve_unique(rows, rhs)
        if sol is None:
            raise InputError("point outside the affine hull")
        out.append(sol)
    return out


def conv_hull(points: Sequence[Union[QVector, Sequence[RatLike]]]) -> QPolytope:
    """Convex hull with canonical V- and H-representations.

    Facets are found by testing every hyperplane spanned by d of the points
    inside the affine hull; fine for the desk-scale inputs this library is
    contracted for.
    """
    pts = sorted({as_qvector(p) for p in points}, key=QVector.key)
    if not pts:
        raise InputError("conv_hull of an empty point set")
    r = len(pts[0])
    if any(len(p) != r for p in pts):
        raise InputError("points of mixed dimensions")

    base, basis = _affine_basis(pts)
    d = len(basis)

    # affine hull equations: basis of the orthogonal complement
    eq_rows = nullspace([list(b.coords) for b in basis], r)
    equations = tuple(sorted(
        (Hyperplane.through(QVector(tuple(row)), QVector(tuple(row)).dot(base))
         for row in eq_rows), key=Hyperplane.key))

    if d == 0:
        return QPolytope((pts[0],), (), equations, 0)

    local = _local_coords(base, basis, pts)

    # facets in local coordinates: hyperplanes spanned by d points
    raw_facets: dict[tuple, tuple[list[Fraction], Fraction]] = {}
    for idx in combinations(range(len(pts)), d):
        sub = [local[i] for i in idx]
        diffs = [[sub[i][j] - sub[0][j] for j in range(d)]
                 for i in range(1, len(sub))]
        ns = nullspace(diffs, d) if diffs else nullspace([], d)
        if len(ns) != 1:
            continue
        nvec = ns[0]
        c = sum(a * b for a, b in zip(nvec, sub[0]))
        sides = [sum(a * b for a, b in zip(nvec, q)) - c for q in local]
        if all(s <= 0 for s in sides):
            pass
        elif all(s >= 0 for s in sides):
            nvec = [-a for a in nvec]
            c = -c
        else:
            continue
        key_v = QVector(tuple(nvec))
        prim = primitive(key_v)
        scale = next(p / n for p, n in zip(prim, key_v) if n != 0)
        raw_facets[(prim.coords, c * scale)] = (list(prim.coords), c * scale)

    # lift local facet functionals to ambient space: y_i(x) solves the frame
    # system, so an ambient representative is n . G (x - base) with
    # G = (B^T B)^{-1} B^T for the basis matrix B.
    bt = [list(b.coords) for b in basis]
    btb = [[sum(bt[i][k] * bt[j][k] for k in range(r)) for j in range(d)]
           for i in range(d)]
    btb_inv = mat_invert(btb)
    g_rows = [[sum(btb_inv[i][j] * bt[j][k] for j in range(d)) for k in range(r)]
              for i in range(d)]

    facets = []
    for nvec, c in raw_facets.values():
        amb = [sum(nvec[i] * g_rows[i][k] for i in range(d)) for k in range(r)]
        av = QVector(tuple(amb))
        offset = c + av.dot(base)
        prim = primitive(av)
        scale = next(p / n for p, n in zip(prim, av) if n != 0)
        facets.append((prim, offset * scale))
    facets.sort(key=lambda f: (f[0].coords, f[1]))

    # vertices: points on a set of facets whose normals span d directions
    verts = []
    for i, p in enumerate(pts):
        tight = [list(f[0].coords) for f in facets if f[0].dot(p) == f[1]]
        tight += [list(eq.normal.coords) for eq in equations]
        if mat_rank(tight) == r:
            verts.append(p)

    return QPolytope(tuple(verts), tuple(facets), equations, d)


def poly_equal(a: QPolytope, b: QPolytope) -> bool:
    return a.vertex_key() == b.vertex_key()


# ---------------------------------------------------------------------------
# hull location / metric projection


def hull_locate(theta: Union[QVector, Sequence[RatLike]],
                points: Sequence[Union[QVector, Sequence[RatLike]]]) -> Location:
    """Exact position of theta relative to conv(points).

    INTERIOR means relative interior.  Decided by exact facet tests on the
    hull; no tolerances.
    """
    theta = as_qvector(theta)
    if not points:
        raise InputError("hull_locate needs a nonempty point set")
    hull = conv_hull(points)
    if hull.ambient_dim != len(theta):
        raise InputError("dimension mismatch between theta and points")
    return hull.locate(theta)


def project_metric(theta: Union[QVector, Sequence[RatLike]],
                   poly: QPolytope, form: GramForm
                   ) -> tuple[QVector, Fraction]:
    """Nearest point of the polytope to theta in the B^{-1} metric.

    Reference algorithm: enumerate all faces, project theta onto each face's
    affine hull, keep feasible projections, take the exact minimizer.  The
    minimizer is unique by strict convexity, so the result is deterministic.
    """
    theta = as_qvector(theta)
    if poly.ambient_dim != len(theta):
        raise InputError("dimension mismatch between theta and polytope")
    if poly.contains(theta):
        return theta, Fraction(0)

    q = form.inverse
    best: Optional[tuple[Fraction, QVector]] = None
    for face in poly.faces():
        fpts = [poly.vertices[i] for i in sorted(face)]
        base, basis = _affine_basis(fpts)
        if not basis:
            cand = base
        else:
            k = len(basis)
            r = len(base)
            bmat = [list(b.coords) for b in basis]  # k rows of length r
            qmat = [[q[i][j] for j in range(r)] for i in range(r)]
            bq = [[sum(bmat[i][t] * qmat[t][j] for t in range(r))
                   for j in range(r)] for i in range(k)]
            lhs = [[sum(bq[i][t] * bmat[j][t] for t in range(r))
                    for j in range(k)] for i in range(k)]
            dvec = list((theta - base).coords)
            rhs = [sum(bq[i][t] * dvec[t] for t in range(r)) for i in range(k)]
            y = solve_unique(lhs, rhs)
            assert y is not None
            cand = base
            for coef, b in zip(y, basis):
                cand = cand + b.scale(coef)
        if not poly.contains(cand):
            continue
        diff = cand - theta
        dist = form.dual_norm_sq(diff)
        if best is None or dist < best[0]:
            best = (dist, cand)
    assert best is not None
    return best[1], best[0]


def boundary_projection(theta: Union[QVector, Sequence[RatLike]],
                        poly: QPolytope, form: GramForm
                        ) -> tuple[QVector, Fraction]:
    """Nearest point of the relative boundary and its squared distance.

    Requires theta inside the polytope.  A zero-dimensional polytope is its
    own boundary here, giving distance zero.
    """
    theta = as_qvector(theta)
    if not poly.contains(theta):
        raise PreconditionError("theta must lie in the polytope")
    if poly.affine_dim == 0:
        return poly.vertices[0], Fraction(0)
    best: Optional[tuple[Fraction, QVector]] = None
    for normal, offset in poly.facets:
        tight = [v for v in poly.vertices if normal.dot(v) == offset]
        sub = conv_hull(tight)
        point, dist = project_metric(theta, sub, form)
        if best is None or dist < best[0] or \
                (dist == best[0] and point.key() < best[1].key()):
            best = (dist, point)
    assert best is not None
    return best[1], best[0]


def boundary_distance_sq(theta: Union[QVector, Sequence[RatLike]],
                         poly: QPolytope, form: GramForm) -> Fraction:
    """Exact squared B^{-1}-distance from theta to the relative boundary."""
    return boundary_projection(theta, poly, form)[1]


# ---------------------------------------------------------------------------
# hyperplane arrangements


@dataclass(frozen=True)
class Cell:
    """A relatively open cell of an arrangement: its closure and a sample."""

    closure: QPolytope
    sample: QVector

    @property
    def dim(self) -> int:
        return self.closure.affine_dim


class _WorkPoly:
    """Mutable V/H pair used while splitting cells; not part of the API."""

    __slots__ = ("verts", "ineqs", "eqs")

    def __init__(self, verts: list[QVector],
                 ineqs: list[tuple[QVector, Fraction]],
                 eqs: list[tuple[QVector, Fraction]]):
        self.verts = verts
        self.ineqs = ineqs
        self.eqs = eqs

    def edges(self) -> list[tuple[int, int]]:
        r = len(self.verts[0])
        tight_sets = []
        for v in self.verts:
            t = [list(n.coords) for n, c in self.ineqs if n.dot(v) == c]
            t += [list(n.coords) for n, c in self.eqs]
            tight_sets.append(t)
        out = []
        for i, j in combinations(range(len(self.verts)), 2):
            vi_t = tight_sets[i]
            common = [row for row in vi_t if any(
                row == other for other in tight_sets[j])]
            if mat_rank(common) == r - 1:
                out.append((i, j))
        return out

    def split(self, normal: QVector, offset: Fraction
              ) -> tuple[Optional["_WorkPoly"], Optional["_WorkPoly"],
                         Optional["_WorkPoly"]]:
        """Pieces on the -, 0, + side of the hyperplane normal.x = offset."""
        vals = [normal.dot(v) - offset for v in self.verts]
        if all(v < 0 for v in vals):
            return self, None, None
        if all(v > 0 for v in vals):
            return None, None, self
        crossings: list[QVector] = []
        for i, j in self.edges():
            a, b = vals[i], vals[j]
            if (a < 0 < b) or (b < 0 < a):
                t = a / (a - b)
                p = self.verts[i] + (self.verts[j] - self.verts[i]).scale(t)
                crossings.append(p)

        def build(side: int) -> Optional[_WorkPoly]:
            if side == 0:
                vs = [v for v, g in zip(self.verts, vals) if g == 0] + crossings
                vs = sorted({v for v in vs}, key=QVector.key)
                if not vs:
                    return None
                return _WorkPoly(vs, list(self.ineqs),
                                 self.eqs + [(normal, offset)])
            keep = [v for v, g in zip(self.verts, vals)
                    if (g <= 0 if side < 0 else g >= 0)]
            vs = sorted({v for v in keep + crossings}, key=QVector.key)
            if not vs:
                return None
            ineq = (normal, offset) if side < 0 else (-normal, -offset)
            return _WorkPoly(vs, self.ineqs + [ineq], list(self.eqs))

        return build(-1), build(0), build(+1)


def arrangement_cells(hyperplanes: Sequence[Hyperplane], region: QPolytope
                      ) -> list[Cell]:
    """All relatively open cells of the arrangement inside relint(region).

    The region must be full-dimensional.  Duplicate hyperplanes and
    hyperplanes missing the region are dropped.  Cells of every dimension
    are returned with an exact sample in each cell's relative interior,
    sorted by (dimension, sample).
    """
    if region.affine_dim != region.ambient_dim:
        raise PreconditionError("arrangement region must be full-dimensional")

    planes: list[Hyperplane] = []
    seen = set()
    for h in hyperplanes:
        hc = Hyperplane.through(h.normal, h.offset)
        if hc.key() in seen:
            continue
        seen.add(hc.key())
        vals = [hc.eval(v) for v in region.vertices]
        if any(v < 0 for v in vals) and any(v > 0 for v in vals):
            planes.append(hc)
    planes.sort(key=Hyperplane.key)

    root = _WorkPoly(list(region.vertices),
                     [(n, c) for n, c in region.facets], [])
    leaves: list[tuple[_WorkPoly, tuple[int, ...]]] = [(root, ())]
    for h in planes:
        nxt: list[tuple[_WorkPoly, tuple[int, ...]]] = []
        for wp, sig in leaves:
            neg, zer, pos = wp.split(h.normal, h.offset)
            for piece, s in ((neg, -1), (zer, 0), (pos, +1)):
                if piece is not None:
                    nxt.append((piece, sig + (s,)))
        leaves = nxt

    cells = []
    for wp, sig in leaves:
        n = len(wp.verts)
        acc = wp.verts[0]
        for v in wp.verts[1:]:
            acc = acc + v
        sample = acc.scale(Fraction(1, n))
        # the open cell is nonempty iff the centroid realizes every strict sign
        ok = all((h.eval(sample) < 0 if s < 0 else
                  h.eval(sample) > 0 if s > 0 else
                  h.eval(sample) == 0)
                 for h, s in zip(planes, sig))
        ok = ok and all(nrm.dot(sample) < c for nrm, c in region.facets)
        if not ok:
            continue
        cells.append(Cell(conv_hull(wp.verts), sample))
    cells.sort(key=lambda c: (c.dim, c.sample.key()))
    return cells


def poly_from_constraints(equalities: Sequence[tuple[QVector, Fraction]],
                          inequalities: Sequence[tuple[QVector, Fraction]],
                          dim: int) -> Optional[QPolytope]:
    """Vertex enumeration for {x : eq, normal.x <= offset}; None if empty.

    Only valid for bounded solution sets; candidate vertices are the basic
    solutions of dim-subsets of tight constraints.
    """
    cons = [(as_qvector(n), rat(c)) for n, c in equalities]
    cons += [(as_qvector(n), rat(c)) for n, c in inequalities]
    neq = len(equalities)
    verts = set()
    # every vertex solves some dim-subset of its tight constraints with full
    # rank, so enumerating all dim-subsets and feasibility-checking is complete
    for idx in combinations(range(len(cons)), dim):
        rows = [list(cons[i][0].coords) for i in idx]
        rhs = [cons[i][1] for i in idx]
        if mat_rank(rows) != dim:
            continue
        sol = solve_unique(rows, rhs)
        if sol is None:
            continue
        x = QVector(tuple(sol))
        if all(eqn.dot(x) == c for eqn, c in cons[:neq]) and \
                all(n.dot(x) <= c for n, c in cons[neq:]):
            verts.add(x)
    if not verts:
        return None
    return conv_hull(sorted(verts, key=QVector.key))


def intersect_polytopes(a: QPolytope, b: QPolytope) -> Optional[QPolytope]:
    """Exact intersection of two bounded polytopes; None if empty."""
    r = a.ambient_dim
    eqs = [(e.normal, e.offset) for e in a.equations]
    eqs += [(e.normal, e.offset) for e in b.equations]
    ineqs = list(a.facets) + list(b.facets)
    return poly_from_constraints(eqs, ineqs, r)


def bounding_box(points: Sequence[QVector], margin: RatLike = 1) -> QPolytope:
    """Axis box strictly containing the points (full-dimensional).

    Built directly rather than through conv_hull: the box's vertices and
    facets are known in closed form.
    """
    m = rat(margin)
    r = len(points[0])
    lo = [min(p[i] for p in points) - m for i in range(r)]
    hi = [max(p[i] for p in points) + m for i in range(r)]
    corners = sorted((QVector(tuple(hi[i] if mask >> i & 1 else lo[i]
                                    for i in range(r)))
                      for mask in range(1 << r)), key=QVector.key)
    facets = []
    for i in range(r):
        e = QVector.of(*(int(j == i) for j in range(r)))
        facets.append((e, hi[i]))
        facets.append((-e, -lo[i]))
    facets.sort(key=lambda f: (f[0].coords, f[1]))
    return QPolytope(tuple(corners), tuple(facets), (), r)
