# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bit-identical twin of ``_pure``.

Same algorithms, same operation order, same libm calls; the build disables
FMA contraction so arithmetic matches the interpreter exactly.  Keep any
change here in lockstep with ``_pure.py``.
"""

from libc.math cimport atan2, fabs, fmod, log, sqrt

from ._lobtable import LOB_COEFFS

cdef double PI = 3.141592653589793
cdef double HALF_PI = 1.5707963267948966
cdef double SNAP_TOL = 1e-14
cdef double GEOM_TOL = 1e-12

cdef int _N_COEFFS = len(LOB_COEFFS)
cdef double[64] _COEFFS
for _i in range(_N_COEFFS):
    _COEFFS[_i] = LOB_COEFFS[_i]


cdef double _lob(double theta) noexcept nogil:
    cdef double x = fmod(theta, PI)
    cdef double sign = 1.0
    cdef double r2, acc, p, t
    cdef int k
    if x < 0.0:
        x += PI
    if x > HALF_PI:
        x = PI - x
        sign = -1.0
    if x < SNAP_TOL:
        return 0.0
    r2 = (x / PI) * (x / PI)
    acc = 0.0
    p = 1.0
    for k in range(_N_COEFFS):
        p *= r2
        t = _COEFFS[k] * p
        acc += t
        if t < 1e-17:
            break
    return sign * (x * (1.0 - log(x + x)) + x * acc)


def lobachevsky(double theta):
    """Lobachevsky function: odd, pi-periodic, zero at multiples of pi."""
    return _lob(theta)


def lobachevsky_sum(values):
    """Sum of lobachevsky() over a flat sequence, accumulated left to right."""
    cdef double total = 0.0
    cdef double v
    for v in values:
        total += _lob(v)
    return total


cdef inline double _orient(double ax, double ay, double bx, double by,
                           double cx, double cy) noexcept nogil:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


cdef double _incircle(double ax, double ay, double bx, double by,
                      double cx, double cy, double dx, double dy) noexcept nogil:
    cdef double adx = ax - dx
    cdef double ady = ay - dy
    cdef double bdx = bx - dx
    cdef double bdy = by - dy
    cdef double cdx = cx - dx
    cdef double cdy = cy - dy
    cdef double ad2 = adx * adx + ady * ady
    cdef double bd2 = bdx * bdx + bdy * bdy
    cdef double cd2 = cdx * cdx + cdy * cdy
    return (adx * (bdy * cd2 - cdy * bd2)
            - ady * (bdx * cd2 - cdx * bd2)
            + ad2 * (bdx * cdy - cdx * bdy))


def orient2d(double ax, double ay, double bx, double by, double cx, double cy):
    """Twice the signed area of triangle abc (positive = counterclockwise)."""
    return _orient(ax, ay, bx, by, cx, cy)


def incircle_det(double ax, double ay, double bx, double by,
                 double cx, double cy, double dx, double dy):
    """Incircle determinant: positive iff d lies inside the circumcircle of
    counterclockwise triangle abc."""
    return _incircle(ax, ay, bx, by, cx, cy, dx, dy)


def _edge_map(list tris):
    cdef dict emap = {}
    cdef int t, a, b, c
    for t in range(len(tris)):
        a, b, c = tris[t]
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            emap.setdefault(key, []).append(t)
    return emap


def delaunay_triangles(xs_in, ys_in):
    """Delaunay triangulation; see the pure twin for the full contract."""
    cdef int m = len(xs_in)
    cdef int i, j, first, p, k, t
    cdef double dx, dy, px, py, o1, o2, o3
    if m < 3:
        raise ValueError("need at least 3 points")
    cdef double[128] xs
    cdef double[128] ys
    if m > 128:
        raise ValueError("too many points for the compiled kernel")
    for i in range(m):
        xs[i] = xs_in[i]
        ys[i] = ys_in[i]
    for i in range(m):
        for j in range(i + 1, m):
            dx = xs[i] - xs[j]
            dy = ys[i] - ys[j]
            if dx * dx + dy * dy < 1e-18:
                raise ValueError("duplicate points")

    first = -1
    for j in range(2, m):
        if fabs(_orient(xs[0], ys[0], xs[1], ys[1], xs[j], ys[j])) > GEOM_TOL:
            first = j
            break
    if first < 0:
        raise ValueError("collinear points")

    cdef list tris
    if _orient(xs[0], ys[0], xs[1], ys[1], xs[first], ys[first]) > 0.0:
        tris = [(0, 1, first)]
    else:
        tris = [(1, 0, first)]

    cdef int max_flips = 8 * m * m + 64
    cdef int flips = 0

    def legalize(list stack):
        nonlocal flips
        cdef int a, b, c, d, u, v
        while stack:
            u, v = stack.pop()
            key = (u, v) if u < v else (v, u)
            emap = _edge_map(tris)
            owners = emap.get(key)
            if owners is None or len(owners) != 2:
                continue
            t1, t2 = owners
            a, b, c = tris[t1]
            for _ in range(3):
                if {a, b} == set(key):
                    break
                a, b, c = b, c, a
            d = [w for w in tris[t2] if w not in key][0]
            if _incircle(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d]) > GEOM_TOL:
                flips += 1
                if flips > max_flips:
                    raise ValueError("flip limit exceeded")
                for t in sorted(owners, reverse=True):
                    del tris[t]
                tris.append((a, d, c))
                tris.append((d, b, c))
                stack.extend([(a, d), (d, b), (b, c), (c, a)])

    def hull_cycle():
        emap = _edge_map(tris)
        succ = {}
        for a, b, c in tris:
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                if len(emap[key]) == 1:
                    succ[u] = v
        start = min(succ)
        cyc = [start]
        w = succ[start]
        while w != start:
            cyc.append(w)
            w = succ[w]
        return cyc

    cdef list order = [j for j in range(2, m) if j != first]
    cdef bint placed
    for p in order:
        px = xs[p]
        py = ys[p]
        placed = False
        on_edge = None
        for t in range(len(tris)):
            a, b, c = tris[t]
            o1 = _orient(xs[a], ys[a], xs[b], ys[b], px, py)
            o2 = _orient(xs[b], ys[b], xs[c], ys[c], px, py)
            o3 = _orient(xs[c], ys[c], xs[a], ys[a], px, py)
            if o1 > GEOM_TOL and o2 > GEOM_TOL and o3 > GEOM_TOL:
                del tris[t]
                tris.append((a, b, p))
                tris.append((b, c, p))
                tris.append((c, a, p))
                legalize([(a, b), (b, c), (c, a)])
                placed = True
                break
            if o1 >= -GEOM_TOL and o2 >= -GEOM_TOL and o3 >= -GEOM_TOL:
                if fabs(o1) <= GEOM_TOL:
                    on_edge = (a, b, c)
                elif fabs(o2) <= GEOM_TOL:
                    on_edge = (b, c, a)
                else:
                    on_edge = (c, a, b)
                break
        if placed:
            continue
        if on_edge is not None:
            a, b, c = on_edge
            key = (a, b) if a < b else (b, a)
            emap = _edge_map(tris)
            owners = emap[key]
            stack = []
            for t in sorted(owners, reverse=True):
                ta, tb, tc = tris[t]
                for _ in range(3):
                    if {ta, tb} == set(key):
                        break
                    ta, tb, tc = tb, tc, ta
                del tris[t]
                tris.append((ta, p, tc))
                tris.append((p, tb, tc))
                stack.extend([(ta, tc), (tb, tc)])
            legalize(stack)
            continue
        cyc = hull_cycle()
        k = len(cyc)
        stack = []
        added = False
        for i in range(k):
            u = cyc[i]
            v = cyc[(i + 1) % k]
            if _orient(xs[u], ys[u], xs[v], ys[v], px, py) < -GEOM_TOL:
                tris.append((v, u, p))
                stack.append((u, v))
                added = True
        if not added:
            raise ValueError("point insertion failed (degenerate geometry)")
        legalize(stack)

    canon = []
    for a, b, c in tris:
        if a < b and a < c:
            canon.append((a, b, c))
        elif b < c and b < a:
            canon.append((b, c, a))
        else:
            canon.append((c, a, b))
    canon.sort()
    return canon, hull_cycle()


cdef int _angles_into(double* xs, double* ys, list tris, double* out) except -1:
    cdef int t, a, b, c, s, p, q, r
    cdef double ux, uy, vx, vy
    for t in range(len(tris)):
        a, b, c = tris[t]
        if fabs(_orient(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])) < 1e-14:
            raise ValueError("degenerate triangle")
        for s in range(3):
            if s == 0:
                p, q, r = a, b, c
            elif s == 1:
                p, q, r = b, c, a
            else:
                p, q, r = c, a, b
            ux = xs[q] - xs[p]
            uy = ys[q] - ys[p]
            vx = xs[r] - xs[p]
            vy = ys[r] - ys[p]
            out[3 * t + s] = atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    return 0


def triangle_angles(xs_in, ys_in, tris):
    """Euclidean corner angles per triangle, in triangle/corner order."""
    cdef int m = len(xs_in)
    cdef int i
    if m > 128 or len(tris) > 256:
        raise ValueError("too many points for the compiled kernel")
    cdef double[128] xs
    cdef double[128] ys
    cdef double[768] buf
    for i in range(m):
        xs[i] = xs_in[i]
        ys[i] = ys_in[i]
    _angles_into(xs, ys, list(tris), buf)
    return [(buf[3 * i], buf[3 * i + 1], buf[3 * i + 2]) for i in range(len(tris))]


def config_volume(xs_in, ys_in):
    """Delaunay + Lobachevsky corner sum for one point configuration."""
    cdef int m = len(xs_in)
    cdef int i
    if m > 128:
        raise ValueError("too many points for the compiled kernel")
    tris, _ = delaunay_triangles(xs_in, ys_in)
    cdef double[128] xs
    cdef double[128] ys
    cdef double[768] buf
    for i in range(m):
        xs[i] = xs_in[i]
        ys[i] = ys_in[i]
    _angles_into(xs, ys, list(tris), buf)
    cdef double total = 0.0
    for i in range(3 * len(tris)):
        total += _lob(buf[i])
    return total
