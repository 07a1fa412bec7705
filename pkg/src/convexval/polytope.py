"""Exact rational convex polytopes in vertex representation.

A `Polytope` stores the extreme points of its convex hull, sorted
lexicographically, with every coordinate an exact `Fraction`. All operations
(dilation, translation, Minkowski sum, volume, membership, lattice counting)
are exact; there is no floating point anywhere in this module.

General-position bodies are supported up to ambient dimension 3. Simplices
and axis-aligned boxes get closed forms in any dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, factorial

from . import _geometry as geom
from . import _linalg
from .errors import (
    DependentBasis,
    DimensionMismatch,
    EmptyInput,
    GuardExceeded,
    MixedDimensions,
    NegativeFactor,
    NonpositiveScale,
    ParseError,
    UnsupportedDimension,
)
from .rationals import rat, rat_str

Point = tuple

LATTICE_GUARD = 500_000


def point(coords) -> Point:
    """Build an exact point from ints, strings, or Fractions."""
    return tuple(rat(c) for c in coords)


@dataclass(frozen=True)
class Polytope:
    """Convex polytope given by its extreme points, canonically ordered.

    Instances are produced by `hull` (or by the trusted constructors below,
    which are used when the input is known to consist of extreme points).
    Two polytopes are equal iff they are the same set of points.
    """

    ambient_dim: int
    vertices: tuple

    def __post_init__(self):
        if not self.vertices:
            raise EmptyInput("a polytope needs at least one vertex")
        if any(len(v) != self.ambient_dim for v in self.vertices):
            raise MixedDimensions("vertex length differs from ambient dimension")

    def __repr__(self):
        pts = "; ".join("(" + ",".join(rat_str(c) for c in v) + ")" for v in self.vertices)
        return f"Polytope[{pts}]"


def _trusted(ambient_dim, vertices) -> Polytope:
    """Canonicalize a set of points already known to be extreme."""
    return Polytope(ambient_dim, tuple(sorted(set(vertices))))


def hull(points) -> Polytope:
    """Convex hull: keeps exactly the extreme points, in canonical order.

    Idempotent: hull(hull(P).vertices) == hull(P). Raises EmptyInput /
    MixedDimensions on malformed input and UnsupportedDimension when the
    points affinely span more than 3 dimensions without being a simplex.
    """
    pts = [point(p) for p in points]
    if not pts:
        raise EmptyInput("hull of no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise MixedDimensions("points of differing ambient dimension")
    uniq = sorted(set(pts))
    if len(uniq) == 1:
        return Polytope(n, (uniq[0],))

    origin = uniq[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in uniq[1:]]
    basis_idx = _linalg.independent_rows(diffs)
    r = len(basis_idx)
    if len(uniq) == r + 1:
        # affinely independent: a simplex, every point is extreme
        return Polytope(n, tuple(uniq))
    if r > 3:
        corners = _bounding_corners(uniq)
        if corners is not None and corners <= set(uniq):
            # an axis-aligned box: its corners are the extreme points
            return Polytope(n, tuple(sorted(corners)))
        raise UnsupportedDimension(
            f"general hull in affine dimension {r} (> 3) is not supported"
        )

    if r == n:
        coords = uniq
    else:
        basis = [diffs[i] for i in basis_idx]
        coords = [_linalg.solve(basis, tuple(a - b for a, b in zip(p, origin))) for p in uniq]

    ints, scale = geom.integerize(coords)
    if r == 1:
        keep = [min(range(len(ints)), key=lambda i: ints[i]),
                max(range(len(ints)), key=lambda i: ints[i])]
    elif r == 2:
        keep = geom.hull_2d(ints)
    else:
        facets, keep = geom.hull_3d(ints)

    result = Polytope(n, tuple(sorted(uniq[i] for i in keep)))
    if r == n == 3:
        _seed_facets(result, scale, facets, uniq)
    return result


def _bounding_corners(pts):
    """Corners of the bounding box, or None when there would be too many."""
    n = len(pts[0])
    if 2 ** n > 4096:
        return None
    axes = []
    for i in range(n):
        lo = min(p[i] for p in pts)
        hi = max(p[i] for p in pts)
        axes.append((lo,) if lo == hi else (lo, hi))
    return {tuple(c) for c in itertools.product(*axes)}


# ---------------------------------------------------------------------------
# cached derived data

_FACET_CACHE: dict = {}


def _seed_facets(P, scale, facets, originals):
    if P in _FACET_CACHE:
        return
    planes = tuple((n, Fraction(c, scale)) for (n, c) in facets)
    cycles = tuple(tuple(originals[i] for i in cyc) for cyc in facets.values())
    _FACET_CACHE[P] = (planes, cycles)


def _facets3(P):
    """Outward halfspaces and facet cycles of a full-dimensional 3D polytope."""
    cached = _FACET_CACHE.get(P)
    if cached is not None:
        return cached
    ints, scale = geom.integerize(P.vertices)
    facets, _ = geom.hull_3d(ints)
    planes = tuple((n, Fraction(c, scale)) for (n, c) in facets)
    cycles = tuple(tuple(P.vertices[i] for i in cyc) for cyc in facets.values())
    _FACET_CACHE[P] = (planes, cycles)
    return planes, cycles


@lru_cache(maxsize=None)
def _halfspaces(P):
    """Inequalities n.x <= rhs (integer normal, Fraction rhs), full-dim P."""
    n = P.ambient_dim
    if n == 1:
        lo = min(v[0] for v in P.vertices)
        hi = max(v[0] for v in P.vertices)
        return (((-1,), -lo), ((1,), hi))
    if n == 2:
        ints, scale = geom.integerize(P.vertices)
        cycle = geom.hull_2d(ints)
        out = []
        for i in range(len(cycle)):
            p = ints[cycle[i]]
            q = ints[cycle[(i + 1) % len(cycle)]]
            d = geom.sub(q, p)
            normal = geom.primitive((d[1], -d[0]))  # outward for a CCW cycle
            out.append((normal, Fraction(geom.dot(normal, p), scale)))
        return tuple(out)
    if n == 3:
        return _facets3(P)[0]
    raise UnsupportedDimension(f"halfspaces in dimension {n}")


@lru_cache(maxsize=None)
def _affine_frame(P):
    """(origin, basis, reduced polytope) for a lower-dimensional P."""
    origin = P.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, origin)) for v in P.vertices[1:]]
    idx = _linalg.independent_rows(diffs)
    basis = tuple(diffs[i] for i in idx)
    reduced_pts = [
        _linalg.solve(list(basis), tuple(a - b for a, b in zip(v, origin)))
        for v in P.vertices
    ]
    reduced = _trusted(len(basis), reduced_pts)
    return origin, basis, reduced


@lru_cache(maxsize=None)
def dim(P: Polytope) -> int:
    """Affine dimension of the polytope (0 for a point)."""
    origin = P.vertices[0]
    diffs = [tuple(a - b for a, b in zip(v, origin)) for v in P.vertices[1:]]
    return _linalg.rank(diffs)


# ---------------------------------------------------------------------------
# constructions


def origin_polytope(n: int) -> Polytope:
    return Polytope(n, ((Fraction(0),) * n,))


def dilate(P: Polytope, factor) -> Polytope:
    """Scale about the origin; factor 0 collapses to the origin point."""
    lam = rat(factor)
    if lam < 0:
        raise NegativeFactor(f"dilation factor {lam} < 0")
    if lam == 0:
        return origin_polytope(P.ambient_dim)
    if lam == 1:
        return P
    return _trusted(P.ambient_dim, (tuple(lam * c for c in v) for v in P.vertices))


def translate(P: Polytope, t) -> Polytope:
    tv = point(t)
    if len(tv) != P.ambient_dim:
        raise DimensionMismatch("translation vector has wrong length")
    return _trusted(
        P.ambient_dim, (tuple(a + b for a, b in zip(v, tv)) for v in P.vertices)
    )


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("Minkowski sum of different ambient dimensions")
    sums = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return hull(sums)


@dataclass(frozen=True)
class SimplexBasis:
    """Linearly independent vectors generating a staircase simplex."""

    vectors: tuple

    def __post_init__(self):
        if not self.vectors:
            raise DependentBasis("empty basis")
        n = len(self.vectors[0])
        if any(len(v) != n for v in self.vectors):
            raise MixedDimensions("basis vectors of differing dimension")
        if _linalg.rank(list(self.vectors)) != len(self.vectors):
            raise DependentBasis("basis vectors are linearly dependent")

    @property
    def ambient_dim(self):
        return len(self.vectors[0])

    @property
    def count(self):
        return len(self.vectors)


def simplex_basis(vectors) -> SimplexBasis:
    return SimplexBasis(tuple(point(v) for v in vectors))


def simplex_from_basis(basis: SimplexBasis) -> Polytope:
    """Simplex with vertices at the partial sums 0, v1, v1+v2, ..."""
    n = basis.ambient_dim
    acc = (Fraction(0),) * n
    verts = [acc]
    for v in basis.vectors:
        acc = tuple(a + b for a, b in zip(acc, v))
        verts.append(acc)
    return _trusted(n, verts)


def _partial_simplex(basis: SimplexBasis, lo: int, hi: int) -> Polytope:
    """Simplex of the basis slice vectors[lo:hi]; a point when empty."""
    if lo >= hi:
        return origin_polytope(basis.ambient_dim)
    return simplex_from_basis(SimplexBasis(basis.vectors[lo:hi]))


@dataclass(frozen=True)
class DecompositionPieces:
    """Pieces tiling the (a+b)-dilated staircase simplex.

    ``cells`` are the d+1 full-dimensional pieces covering the dilate;
    ``seams`` are the d lower-dimensional pieces along which consecutive
    unions of cells meet.
    """

    a: Fraction
    b: Fraction
    cells: tuple
    seams: tuple


def decomposition_pieces(basis: SimplexBasis, a, b) -> DecompositionPieces:
    av, bv = rat(a), rat(b)
    if av <= 0 or bv <= 0:
        raise NonpositiveScale("decomposition needs a > 0 and b > 0")
    d = basis.count
    n = basis.ambient_dim
    shift = (Fraction(0),) * n
    cells = []
    seams = []
    for i in range(d + 1):
        head = dilate(_partial_simplex(basis, 0, i), av)
        tail = dilate(_partial_simplex(basis, i, d), bv)
        if i >= 1:
            shift = tuple(s + bv * c for s, c in zip(shift, basis.vectors[i - 1]))
            head_prev = dilate(_partial_simplex(basis, 0, i - 1), av)
            seam = translate(minkowski_sum(head_prev, tail), shift)
            if dim(seam) > d - 1:
                raise ValueError("seam piece has unexpected dimension")
            seams.append(seam)
        cell = translate(minkowski_sum(head, tail), shift)
        if dim(cell) != d:
            raise ValueError("cell piece has unexpected dimension")
        cells.append(cell)
    return DecompositionPieces(av, bv, tuple(cells), tuple(seams))


def simplex_coordinates(basis: SimplexBasis, x: Point):
    """Coefficients of x in the basis, or None when x is off the span."""
    return _linalg.solve(list(basis.vectors), x)


@dataclass(frozen=True)
class DecompositionReport:
    """Exact checks that the cells tile the dilated simplex.

    * volume_additive: cell volumes sum to the volume of the dilate
      (informative when the basis spans the ambient space; trivially 0=0
      otherwise).
    * cover: every rational grid point of the dilate lies in some cell.
    * cells_inside: vertex/midpoint/centroid samples of each cell lie in
      the dilate.
    * seams_match: seam i sits on the coordinate slice x_i = b, inside
      cell i and inside the union of the earlier cells; conversely grid
      points of that double overlap lie in the seam.
    * seams_lower_dim: every seam has affine dimension < d.
    """

    volume_additive: bool
    cover: bool
    cells_inside: bool
    seams_match: bool
    seams_lower_dim: bool
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return (
            self.volume_additive
            and self.cover
            and self.cells_inside
            and self.seams_match
            and self.seams_lower_dim
        )


def _sample_points(P: Polytope):
    verts = list(P.vertices)
    n = P.ambient_dim
    samples = list(verts)
    k = len(verts)
    total = [Fraction(0)] * n
    for v in verts:
        total = [a + b for a, b in zip(total, v)]
    samples.append(tuple(c / k for c in total))
    for i in range(k):
        for j in range(i + 1, k):
            samples.append(
                tuple((a + b) / 2 for a, b in zip(verts[i], verts[j]))
            )
    return samples


def verify_decomposition(basis: SimplexBasis, a, b, grid_steps: int = 3) -> DecompositionReport:
    """Exactly check that the decomposition pieces tile the dilated simplex."""
    av, bv = rat(a), rat(b)
    pieces = decomposition_pieces(basis, av, bv)
    d = basis.count
    outer = dilate(simplex_from_basis(basis), av + bv)
    failures = []

    vol_ok = volume(outer) == sum((volume(c) for c in pieces.cells), Fraction(0))
    if not vol_ok:
        failures.append("cell volumes do not sum to the dilate volume")

    # rational grid in staircase coordinates: (a+b) >= t_1 >= ... >= t_d >= 0
    steps = [Fraction(k, grid_steps) * (av + bv) for k in range(grid_steps + 1)]
    grid = []
    for combo in itertools.combinations_with_replacement(reversed(steps), d):
        coords = tuple(combo)  # non-increasing
        x = tuple(
            sum((coords[i] * basis.vectors[i][j] for i in range(d)), Fraction(0))
            for j in range(basis.ambient_dim)
        )
        grid.append((coords, x))

    cover_ok = True
    for coords, x in grid:
        if not any(contains(c, x) for c in pieces.cells):
            cover_ok = False
            failures.append(f"grid point {x} covered by no cell")
            break

    inside_ok = True
    for idx, cell in enumerate(pieces.cells):
        for x in _sample_points(cell):
            if not contains(outer, x):
                inside_ok = False
                failures.append(f"cell {idx} sample {x} leaves the dilate")
                break

    seams_ok = True
    for i in range(1, d + 1):
        seam = pieces.seams[i - 1]
        for x in _sample_points(seam):
            coords = simplex_coordinates(basis, x)
            if coords is None or coords[i - 1] != bv:
                seams_ok = False
                failures.append(f"seam {i} sample off the slice x_{i} = b")
                break
            if not contains(pieces.cells[i], x) or not any(
                contains(pieces.cells[j], x) for j in range(i)
            ):
                seams_ok = False
                failures.append(f"seam {i} sample outside the adjacent cells")
                break
        for coords, x in grid:
            in_prefix = any(contains(pieces.cells[j], x) for j in range(i))
            if in_prefix and contains(pieces.cells[i], x):
                if coords[i - 1] != bv or not contains(seam, x):
                    seams_ok = False
                    failures.append(
                        f"overlap point {x} of cells 0..{i} missing from seam {i}"
                    )
                    break

    lower_ok = all(dim(s) < d for s in pieces.seams)
    if not lower_ok:
        failures.append("a seam is full-dimensional")

    return DecompositionReport(
        volume_additive=vol_ok,
        cover=cover_ok,
        cells_inside=inside_ok,
        seams_match=seams_ok,
        seams_lower_dim=lower_ok,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# evaluations


def contains(P: Polytope, x) -> bool:
    """Exact membership test."""
    xv = point(x)
    if len(xv) != P.ambient_dim:
        raise DimensionMismatch("point has wrong dimension")
    if len(P.vertices) == 1:
        return xv == P.vertices[0]
    d = dim(P)
    n = P.ambient_dim
    if d == n:
        if n > 3:
            if len(P.vertices) == n + 1:
                return _simplex_contains(P, xv)
            box = _box_extents(P)
            if box is not None:
                return all(lo <= c <= hi for c, (lo, hi) in zip(xv, box))
            raise UnsupportedDimension(f"membership in dimension {n}")
        return all(
            sum(c * t for c, t in zip(normal, xv)) <= rhs
            for normal, rhs in _halfspaces(P)
        )
    origin, basis, reduced = _affine_frame(P)
    coords = _linalg.solve(list(basis), tuple(a - b for a, b in zip(xv, origin)))
    if coords is None:
        return False
    return contains(reduced, coords)


def _simplex_contains(P, xv):
    verts = P.vertices
    base = verts[0]
    columns = [tuple(a - b for a, b in zip(v, base)) for v in verts[1:]]
    sol = _linalg.solve(columns, tuple(a - b for a, b in zip(xv, base)))
    if sol is None:
        return False
    return all(c >= 0 for c in sol) and sum(sol) <= 1


def _box_extents(P):
    """(lo, hi) per axis when P is an axis-aligned box, else None."""
    n = P.ambient_dim
    lo = [min(v[i] for v in P.vertices) for i in range(n)]
    hi = [max(v[i] for v in P.vertices) for i in range(n)]
    if any(l == h for l, h in zip(lo, hi)):
        return None
    corners = {tuple(c) for c in itertools.product(*zip(lo, hi))}
    if set(P.vertices) == corners:
        return list(zip(lo, hi))
    return None


def volume(P: Polytope) -> Fraction:
    """Exact ambient-dimensional volume; 0 for lower-dimensional bodies."""
    n = P.ambient_dim
    if dim(P) < n:
        return Fraction(0)
    if n == 1:
        return max(v[0] for v in P.vertices) - min(v[0] for v in P.vertices)
    if len(P.vertices) == n + 1:
        base = P.vertices[0]
        rows = [tuple(a - b for a, b in zip(v, base)) for v in P.vertices[1:]]
        return abs(_det(rows)) / factorial(n)
    box = _box_extents(P)
    if box is not None:
        prod = Fraction(1)
        for lo, hi in box:
            prod *= hi - lo
        return prod
    if n == 2:
        ints, scale = geom.integerize(P.vertices)
        cycle = geom.hull_2d(ints)
        return Fraction(geom.area2_2d(ints, cycle), 2) / (scale * scale)
    if n == 3:
        _, cycles = _facets3(P)
        points = sorted({p for cycle in cycles for p in cycle})
        ints, scale = geom.integerize(points)
        coord = dict(zip(points, ints))
        ox, oy, oz = coord[cycles[0][0]]
        total = 0
        for cycle in cycles:
            ax, ay, az = coord[cycle[0]]
            ax -= ox
            ay -= oy
            az -= oz
            for i in range(1, len(cycle) - 1):
                bx, by, bz = coord[cycle[i]]
                cx, cy, cz = coord[cycle[i + 1]]
                bx -= ox
                by -= oy
                bz -= oz
                cx -= ox
                cy -= oy
                cz -= oz
                total += (
                    ax * (by * cz - bz * cy)
                    - ay * (bx * cz - bz * cx)
                    + az * (bx * cy - by * cx)
                )
        assert total >= 0
        return Fraction(total, 6) / scale ** 3
    raise UnsupportedDimension(f"volume of a general body in dimension {n}")


def _det(rows):
    m = [list(r) for r in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        pivot = next((i for i in range(col, size) if m[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for i in range(col + 1, size):
            if m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def lattice_count(P: Polytope, guard: int = LATTICE_GUARD) -> int:
    """Number of integer points in P, by guarded bounding-box enumeration."""
    n = P.ambient_dim
    if n > 3:
        raise UnsupportedDimension("lattice counting beyond dimension 3")
    lo = [ceil(min(v[i] for v in P.vertices)) for i in range(n)]
    hi = [floor(max(v[i] for v in P.vertices)) for i in range(n)]
    total = 1
    for l, h in zip(lo, hi):
        total *= max(h - l + 1, 0)
    if total > guard:
        raise GuardExceeded(f"bounding box holds {total} > {guard} candidates")
    if total == 0:
        return 0
    full = dim(P) == n
    planes = _halfspaces(P) if full and len(P.vertices) > 1 else None
    count = 0
    for cand in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if planes is not None:
            if all(
                sum(c * t for c, t in zip(normal, cand)) <= rhs
                for normal, rhs in planes
            ):
                count += 1
        elif contains(P, cand):
            count += 1
    return count


# ---------------------------------------------------------------------------
# named bodies used as probes and test fixtures


def unit_cube(n: int) -> Polytope:
    return _trusted(n, (tuple(Fraction(b) for b in bits)
                        for bits in itertools.product((0, 1), repeat=n)))


def standard_simplex(n: int) -> Polytope:
    verts = [(Fraction(0),) * n]
    for i in range(n):
        verts.append(tuple(Fraction(1 if j == i else 0) for j in range(n)))
    return _trusted(n, verts)


def asymmetric_simplex(n: int) -> Polytope:
    """Staircase simplex over the basis (e1, 2 e2, 3 e3, ...)."""
    vectors = [
        tuple(Fraction(i + 1 if j == i else 0) for j in range(n)) for i in range(n)
    ]
    return simplex_from_basis(SimplexBasis(tuple(vectors)))


# ---------------------------------------------------------------------------
# serialization (the shared polytope text format)


def polytope_to_obj(P: Polytope) -> dict:
    return {
        "dim": P.ambient_dim,
        "vertices": [[rat_str(c) for c in v] for v in P.vertices],
    }


def polytope_from_obj(obj) -> Polytope:
    """Parse the JSON object form; prunes to the canonical hull."""
    if not isinstance(obj, dict):
        raise ParseError("polytope object must be a JSON object")
    try:
        n = obj["dim"]
        raw = obj["vertices"]
    except KeyError as exc:
        raise ParseError(f"polytope object missing field {exc}") from exc
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"field 'dim' must be a positive integer, got {n!r}")
    if not isinstance(raw, list) or not raw:
        raise ParseError("field 'vertices' must be a non-empty list")
    pts = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"vertex {i} does not have {n} coordinates")
        try:
            pts.append(point(row))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"vertex {i}: bad rational ({exc})") from exc
    return hull(pts)
