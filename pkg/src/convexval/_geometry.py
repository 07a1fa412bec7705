"""Exact convex-hull engines on integer coordinates.

Internal module. Callers clear denominators once (``integerize``) so that
every predicate below is plain big-integer arithmetic: no floats, no
tolerances. The 3D hull is a gift-wrapping walk that merges coplanar points
into a single facet polygon, which keeps degenerate inputs (Minkowski sums,
boxes, grid-like vertex sets) exact and cheap at desk scale.
"""

from fractions import Fraction
from math import gcd


def sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def dot(p, q):
    if len(p) == 3:
        return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
    if len(p) == 2:
        return p[0] * q[0] + p[1] * q[1]
    return sum(a * b for a, b in zip(p, q))


def neg(p):
    return tuple(-a for a in p)


def cross2(p, q):
    return p[0] * q[1] - p[1] * q[0]


def cross3(p, q):
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def det3(a, b, c):
    return dot(a, cross3(b, c))


def primitive(v):
    g = 0
    for c in v:
        g = gcd(g, abs(c))
    if g > 1:
        return tuple(c // g for c in v)
    return tuple(v)


def integerize(points):
    """Scale Fraction tuples to integer tuples; returns (ints, scale)."""
    scale = 1
    for p in points:
        for c in p:
            d = c.denominator
            scale = scale // gcd(scale, d) * d
    ints = [tuple(int(c * scale) for c in p) for p in points]
    return ints, scale


# ---------------------------------------------------------------------------
# 2D: monotone chain


def hull_2d(pts):
    """Indices of hull vertices of distinct integer pairs, CCW order.

    Strictly extreme points only; collinear sets reduce to their endpoints.
    """
    order = sorted(range(len(pts)), key=lambda i: pts[i])

    def chain(idxs):
        out = []
        for i in idxs:
            while len(out) >= 2 and cross2(
                sub(pts[out[-1]], pts[out[-2]]), sub(pts[i], pts[out[-1]])
            ) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    if len(lower) == 1:
        return lower
    return lower[:-1] + upper[:-1]


def area2_2d(pts, cycle):
    """Twice the area of a CCW integer polygon given by point indices."""
    total = 0
    o = pts[cycle[0]]
    for i in range(1, len(cycle) - 1):
        total += cross2(sub(pts[cycle[i]], o), sub(pts[cycle[i + 1]], o))
    assert total >= 0
    return total


# ---------------------------------------------------------------------------
# 3D: gift wrapping with coplanar merging


def _perp_vector(n):
    if n[0] == 0 and n[1] == 0:
        return (1, 0, 0)
    return (-n[1], n[0], 0)


def _plane_through(pts, u, w, q):
    """Supporting plane through three points, outward primitive normal."""
    n = primitive(cross3(sub(w, u), sub(q, u)))
    c = dot(n, u)
    vals = [dot(n, p) for p in pts]
    if max(vals) > c:
        n, c = neg(n), -c
        vals = [-v for v in vals]
    assert max(vals) <= c, "plane is not supporting"
    return n, c


def _pivot(pts, u, t, n):
    """Rotate a supporting halfplane around the edge through ``u``.

    Frame: ``n`` is the outward normal of the current supporting plane,
    ``t`` the in-plane direction to rotate from. Returns the index of the
    point reached first, i.e. minimizing the rotation angle; candidates are
    the points strictly inside the current plane.
    """
    best = balpha = bbeta = None
    ux, uy, uz = u
    nx, ny, nz = n
    tx, ty, tz = t
    for j, p in enumerate(pts):
        dx = p[0] - ux
        dy = p[1] - uy
        dz = p[2] - uz
        beta = -(nx * dx + ny * dy + nz * dz)
        if beta <= 0:
            continue
        alpha = tx * dx + ty * dy + tz * dz
        if best is None or alpha * bbeta - beta * balpha > 0:
            best, balpha, bbeta = j, alpha, beta
    assert best is not None, "pivot found no candidate (rank < 3?)"
    return best


def _facet_cycle(pts, n, c):
    """Vertex cycle of the facet on plane n.x == c, CCW seen from outside."""
    on = [i for i, p in enumerate(pts) if dot(n, p) == c]
    b1 = _perp_vector(n)
    b2 = cross3(n, b1)
    proj = [(dot(b1, pts[i]), dot(b2, pts[i])) for i in on]
    local = hull_2d(proj)
    # (b1, b2, n) is right-handed, so CCW in the projection is CCW from outside
    return [on[i] for i in local]


def _first_plane(pts):
    order = range(len(pts))
    v0 = min(order, key=lambda i: pts[i])
    p0 = pts[v0]
    on_min = [i for i in order if pts[i][0] == p0[0]]

    if len(on_min) >= 2:
        # wrap one step inside the supporting plane x = min to get a hull edge
        best = bd = None
        for i in on_min:
            if i == v0:
                continue
            d = (pts[i][1] - p0[1], pts[i][2] - p0[2])
            if best is None:
                best, bd = i, d
            else:
                cr = cross2(bd, d)
                if cr < 0 or (cr == 0 and dot(d, d) > dot(bd, bd)):
                    best, bd = i, d
        v1 = best
        n_start = (-1, 0, 0)
        c_start = -p0[0]
        t_start = (0, bd[1], -bd[0])
    else:
        # v0 is the unique minimum: central projection yields a hull edge
        rays = {}
        for i in order:
            if i == v0:
                continue
            d = sub(pts[i], p0)
            xi = (Fraction(d[1], d[0]), Fraction(d[2], d[0]))
            cur = rays.get(xi)
            if cur is None or d[0] > cur[1]:
                rays[xi] = (i, d[0])
        v1 = rays[min(rays)][0]
        # a supporting plane through the line (v0, v1), found in the quotient
        a = sub(pts[v1], p0)
        b1 = _perp_vector(a)
        b2 = cross3(a, b1)
        offline = []
        for i in order:
            d = sub(pts[i], p0)
            xi = (dot(b1, d), dot(b2, d))
            if xi != (0, 0):
                offline.append(xi)
        best = offline[0]
        for xi in offline[1:]:
            if cross2(best, xi) < 0:
                best = xi
        m = (-best[1], best[0])
        if any(dot(m, xi) > 0 for xi in offline):
            m = (best[1], -best[0])
        assert all(dot(m, xi) <= 0 for xi in offline)
        n_start = tuple(m[0] * b1[k] + m[1] * b2[k] for k in range(3))
        c_start = dot(n_start, p0)
        t_start = cross3(a, n_start)

    # if the supporting plane already holds a point off the edge line it is a
    # facet plane itself; otherwise rotate around the edge to reach one
    a = sub(pts[v1], p0)
    for i, p in enumerate(pts):
        if dot(n_start, p) == c_start and cross3(sub(p, p0), a) != (0, 0, 0):
            return _plane_through(pts, p0, pts[v1], p)
    q = _pivot(pts, p0, t_start, n_start)
    return _plane_through(pts, p0, pts[v1], pts[q])


def hull_3d(pts):
    """Facets of the hull of distinct integer 3-tuples with affine rank 3.

    Returns (facets, vertices): ``facets`` maps an outward plane key
    (primitive normal, offset) to the facet's vertex cycle (point indices,
    CCW from outside); ``vertices`` is the sorted list of hull vertex indices.
    """
    facets = {}
    queue = [_first_plane(pts)]
    edges_done = set()
    while queue:
        key = queue.pop()
        if key in facets:
            continue
        n, c = key
        cycle = _facet_cycle(pts, n, c)
        facets[key] = cycle
        k = len(cycle)
        for idx in range(k):
            ui, wi = cycle[idx], cycle[(idx + 1) % k]
            ekey = (ui, wi) if ui < wi else (wi, ui)
            if ekey in edges_done:
                continue
            edges_done.add(ekey)
            u = pts[ui]
            t = cross3(sub(pts[wi], u), n)
            ref = next(
                pts[r] for r in cycle if dot(t, sub(pts[r], u)) != 0
            )
            if dot(t, sub(ref, u)) > 0:
                t = neg(t)
            q = _pivot(pts, u, t, n)
            nb = _plane_through(pts, u, pts[wi], pts[q])
            if nb not in facets:
                queue.append(nb)
    vertices = sorted({i for cyc in facets.values() for i in cyc})
    nedges = sum(len(cyc) for cyc in facets.values())
    assert nedges % 2 == 0
    assert len(vertices) - nedges // 2 + len(facets) == 2, "hull surface not closed"
    return facets, vertices


def volume6_3d(pts, facets):
    """Six times the volume enclosed by outward-oriented facet cycles."""
    first = next(iter(facets.values()))
    o = pts[first[0]]
    total = 0
    for cycle in facets.values():
        q0 = sub(pts[cycle[0]], o)
        for i in range(1, len(cycle) - 1):
            total += det3(q0, sub(pts[cycle[i]], o), sub(pts[cycle[i + 1]], o))
    assert total >= 0
    return total
