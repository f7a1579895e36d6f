"""Small catalogs of sphere triangulations for tests and acceptance runs.

``all_types(n)`` enumerates every combinatorial type with n vertices by
exhausting the diagonal-flip graph, which is connected for fixed n (Wagner).
This is meant for small n only (the counts grow as 1, 1, 2, 5, 14, 50, ...);
bulk generation of triangulations is out of scope.
"""

from . import triang


def all_types(n):
    """All combinatorial types with n vertices, as canonical-form exemplars.

    Returns a list of SphereTriangulation, sorted by canonical form.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    seed = triang.tetrahedron()
    for _ in range(n - 4):
        seed = triang.stack_on_face(seed, 0)

    found = {triang.canonical_form_full(seed): seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for t in frontier:
            for e in t.edges():
                flipped = triang.flip_edge(t, e)
                if flipped is None:
                    continue
                key = triang.canonical_form_full(flipped)
                if key not in found:
                    found[key] = flipped
                    nxt.append(flipped)
        frontier = nxt
    return [found[k] for k in sorted(found)]
