"""Backtracking search for embeddings between finite Heyting algebras.

Only the generators of the source are branched on.  Every assignment is
closed under meet, join and implication against everything already
assigned, so once the generators are placed the whole map is determined
(or a conflict has been found).
"""

from .kernel import bits


def _candidates(a, b, iso):
    full = (1 << b.size) - 1
    bd, br = b.dense_mask, b.regular_mask
    by_inv = {}
    if iso:
        for y, inv in enumerate(b.invariants):
            by_inv[inv] = by_inv.get(inv, 0) | (1 << y)
    # an embedding maps chains to chains, so heights and depths cannot shrink
    hb, db = b.heights, b.depths
    out = []
    for x in range(a.size):
        m = bd if (a.dense_mask >> x) & 1 else full & ~bd
        m &= br if (a.regular_mask >> x) & 1 else full & ~br
        if iso:
            m &= by_inv.get(a.invariants[x], 0)
        else:
            hx, dx = a.heights[x], a.depths[x]
            for y in bits(m):
                if hb[y] < hx or db[y] < dx:
                    m &= ~(1 << y)
        out.append(m)
    return out


def find_embedding(a, b, iso=False):
    """Return an injective homomorphism a -> b as a list, or None.

    With ``iso=True`` the map must also be onto and preserve the per-element
    invariants, which prunes the search for isomorphism tests.
    """
    na, nb = a.size, b.size
    if na == 1:
        return [0] if nb == 1 else None
    if nb == 1 or na > nb or (iso and na != nb):
        return None
    if (
        bin(a.dense_mask).count("1") > bin(b.dense_mask).count("1")
        or bin(a.regular_mask).count("1") > bin(b.regular_mask).count("1")
        or a.heights[a.top] > b.heights[b.top]
    ):
        return None
    allowed = _candidates(a, b, iso)
    ma, ja, ia = a.meet, a.join, a.imp
    mb, jb, ib = b.meet, b.join, b.imp
    f = [-1] * na
    assigned = []
    used = 0

    def propagate(x0, y0):
        nonlocal used
        stack = [(x0, y0)]
        while stack:
            x, y = stack.pop()
            fx = f[x]
            if fx != -1:
                if fx != y:
                    return False
                continue
            if (used >> y) & 1 or not (allowed[x] >> y) & 1:
                return False
            f[x] = y
            used |= 1 << y
            assigned.append(x)
            mx, jx, ix = ma[x], ja[x], ia[x]
            my, jy, iy = mb[y], jb[y], ib[y]
            for z in assigned:
                w = f[z]
                for r, s in (
                    (mx[z], my[w]),
                    (jx[z], jy[w]),
                    (ix[z], iy[w]),
                    (ia[z][x], ib[w][y]),
                ):
                    fr = f[r]
                    if fr == -1:
                        stack.append((r, s))
                    elif fr != s:
                        return False
        return True

    def undo(mark):
        nonlocal used
        while len(assigned) > mark:
            x = assigned.pop()
            used &= ~(1 << f[x])
            f[x] = -1

    if not (propagate(a.bottom, b.bottom) and propagate(a.top, b.top)):
        return None
    gens = a.generators

    def rec(k):
        if k == len(gens):
            return True
        x = gens[k]
        if f[x] != -1:
            return rec(k + 1)
        for y in bits(allowed[x] & ~used):
            mark = len(assigned)
            if propagate(x, y) and rec(k + 1):
                return True
            undo(mark)
        return False

    if not rec(0):
        return None
    return list(f)
