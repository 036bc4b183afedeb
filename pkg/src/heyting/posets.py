"""Finite posets up to isomorphism and their down-set lattices.

A poset on n points is a tuple of reflexive down-set bitmasks.  Posets of
size n are grown from those of size n-1 by adding a new maximal point
above an arbitrary down-set; every poset arises this way because removing
a maximal point leaves a poset.  Duplicates are removed by a canonical form
computed with colour refinement plus individualisation.
"""

from functools import lru_cache

from .kernel import bits, from_up_masks, popcount


def _ups(down):
    n = len(down)
    up = [0] * n
    for x in range(n):
        for z in bits(down[x]):
            up[z] |= 1 << x
    return up


def _refine(colors, sdown, sup):
    n = len(colors)
    k = len(set(colors))
    while True:
        sig = [
            (
                colors[x],
                tuple(sorted(colors[z] for z in bits(sdown[x]))),
                tuple(sorted(colors[z] for z in bits(sup[x]))),
            )
            for x in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [rank[s] for s in sig]
        if len(rank) == k:
            return new
        colors, k = new, len(rank)


def _encode(colors, down):
    # colours are a permutation of range(n) here
    n = len(down)
    out = [0] * n
    for x in range(n):
        m = 0
        for z in bits(down[x]):
            m |= 1 << colors[z]
        out[colors[x]] = m
    return tuple(out)


def canonical_form(down):
    """Canonical relabelling of a poset given by reflexive down masks."""
    n = len(down)
    if n == 0:
        return ()
    up = _ups(down)
    sdown = [down[x] & ~(1 << x) for x in range(n)]
    sup = [up[x] & ~(1 << x) for x in range(n)]

    def search(colors):
        colors = _refine(colors, sdown, sup)
        cells = {}
        for x, c in enumerate(colors):
            cells.setdefault(c, []).append(x)
        multi = [c for c in sorted(cells) if len(cells[c]) > 1]
        if not multi:
            return _encode(colors, down)
        cell = cells[multi[0]]
        reps, seen = [], set()
        for v in cell:
            twin_key = (sdown[v], sup[v])
            if twin_key not in seen:
                seen.add(twin_key)
                reps.append(v)
        best = None
        for v in reps:
            split = [2 * c + (1 if (c == multi[0] and x != v) else 0) for x, c in enumerate(colors)]
            cert = search(split)
            if best is None or cert < best:
                best = cert
        return best

    return search([popcount(down[x]) * (n + 1) + popcount(up[x]) for x in range(n)])


def _down_sets(down):
    n = len(down)
    out = []
    for s in range(1 << n):
        if all(down[x] & ~s == 0 for x in bits(s)):
            out.append(s)
    return out


@lru_cache(maxsize=None)
def posets(n):
    """All posets with exactly n points up to isomorphism, in canonical order."""
    if n == 0:
        return ((),)
    found = set()
    for q in posets(n - 1):
        for d in _down_sets(q):
            found.add(canonical_form(q + (d | 1 << (n - 1),)))
    return tuple(sorted(found))


def down_set_lattice(down, name=None):
    """The lattice of down-sets of a poset, which is a Heyting algebra."""
    sets = _down_sets(down)
    up = []
    for s in sets:
        m = 0
        for j, t in enumerate(sets):
            if s & ~t == 0:
                m |= 1 << j
        up.append(m)
    return from_up_masks(up, name=name, check=False)
