"""Finite Heyting algebras with full operation tables.

An algebra is built from its order relation.  Elements are renumbered into a
canonical linear extension so that equal inputs always produce identical
tables; the original index of every element is kept in ``origin``.

The order is held as integer bitmasks (``up[a]`` has bit ``b`` set iff
a <= b), which makes comparability tests and set intersections cheap.
Operation tables are tuples of tuples so that scalar lookups in the search
loops stay fast.
"""

from dataclasses import dataclass
from functools import cached_property
from graphlib import CycleError, TopologicalSorter

import numpy as np

from .errors import (
    CyclicCovers,
    InvalidInput,
    NoBoundedBottom,
    NoBoundedTop,
    NotALattice,
    NotDistributive,
    SizeLimitExceeded,
)

PRODUCT_SIZE_CAP = 512


def bits(mask):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


class HeytingAlgebra:
    """A finite Heyting algebra.

    Do not call the constructor directly; use :func:`from_covers` or one of
    the derived constructions (:func:`ordinal_sum`, :func:`product`, ...).
    Instances are immutable after construction.
    """

    def __init__(self, up, down, meet, join, imp, covers, labels, origin, name):
        self.size = len(up)
        self.up = up
        self.down = down
        self.meet = meet
        self.join = join
        self.imp = imp
        self.neg = tuple(row[0] for row in imp)
        self.covers = covers
        self.labels = labels
        self.origin = origin
        self.name = name
        self.bottom = 0
        self.top = self.size - 1

    # order -------------------------------------------------------------

    def le(self, a, b):
        return (self.up[a] >> b) & 1 == 1

    def lt(self, a, b):
        return a != b and (self.up[a] >> b) & 1 == 1

    def comparable(self, a, b):
        return (self.up[a] >> b) & 1 == 1 or (self.up[b] >> a) & 1 == 1

    @property
    def leq(self):
        """The order as a size x size boolean matrix."""
        return [[self.le(a, b) for b in range(self.size)] for a in range(self.size)]

    @property
    def elements(self):
        return range(self.size)

    def iff(self, a, b):
        return self.meet[self.imp[a][b]][self.imp[b][a]]

    # derived data ---------------------------------------------------------

    @cached_property
    def heights(self):
        h = [0] * self.size
        for x in range(self.size):  # indices form a linear extension
            for z in self.lower_covers(x):
                h[x] = max(h[x], h[z] + 1)
        return tuple(h)

    @cached_property
    def depths(self):
        """Length of the longest chain from each element up to the top."""
        d = [0] * self.size
        for x in range(self.size - 1, -1, -1):
            for z in self.upper_covers(x):
                d[x] = max(d[x], d[z] + 1)
        return tuple(d)

    def lower_covers(self, x):
        return self._lower[x]

    def upper_covers(self, x):
        return self._upper[x]

    @cached_property
    def _lower(self):
        low = [[] for _ in range(self.size)]
        for lo, hi in self.covers:
            low[hi].append(lo)
        return tuple(tuple(v) for v in low)

    @cached_property
    def _upper(self):
        upp = [[] for _ in range(self.size)]
        for lo, hi in self.covers:
            upp[lo].append(hi)
        return tuple(tuple(v) for v in upp)

    @cached_property
    def dense_mask(self):
        return sum(1 << x for x in range(self.size) if self.neg[x] == self.bottom)

    @cached_property
    def regular_mask(self):
        neg = self.neg
        return sum(1 << x for x in range(self.size) if neg[neg[x]] == x)

    @cached_property
    def join_irreducibles(self):
        return tuple(x for x in range(self.size) if len(self._lower[x]) == 1)

    @cached_property
    def generators(self):
        """A small generating set found greedily among join-irreducibles."""
        full = (1 << self.size) - 1
        gens = []
        cur = closure_mask(self, gens)
        while cur != full:
            best, best_mask = None, -1
            for x in self.join_irreducibles:
                if (cur >> x) & 1:
                    continue
                m = closure_mask(self, gens + [x])
                if popcount(m) > popcount(best_mask):
                    best, best_mask = x, m
            gens.append(best)
            cur = best_mask
        return tuple(gens)

    @cached_property
    def invariants(self):
        """Per-element isomorphism invariants used to seed searches."""
        dm, rm = self.dense_mask, self.regular_mask
        return tuple(
            (
                self.heights[x],
                popcount(self.down[x]),
                popcount(self.up[x]),
                len(self._lower[x]),
                len(self._upper[x]),
                (dm >> x) & 1,
                (rm >> x) & 1,
            )
            for x in range(self.size)
        )

    # presentation ---------------------------------------------------------

    def label(self, x):
        return self.labels[x]

    def index(self, label):
        """Element whose label is ``label`` (labels are strings)."""
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidInput(f"no element labelled {label!r}") from None

    def __len__(self):
        return self.size

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<HeytingAlgebra{nm} size={self.size}>"


def _reject(msg):
    raise InvalidInput(msg)


def from_up_masks(up, labels=None, name=None, check=True):
    """Build an algebra from reflexive up-set masks of a partial order.

    ``check=False`` skips the cubic distributivity test and may be used when
    the order is known to come from a Heyting algebra.  Implication is always
    computed and verified, so a non-Heyting order still fails.
    """
    n = len(up)
    if n == 0:
        _reject("an algebra needs at least one element")
    if labels is None:
        labels = [str(i) for i in range(n)]
    down = [0] * n
    for a in range(n):
        for b in bits(up[a]):
            down[b] |= 1 << a
    minimal = [x for x in range(n) if down[x] == 1 << x]
    maximal = [x for x in range(n) if up[x] == 1 << x]
    if len(minimal) != 1:
        raise NoBoundedBottom(f"{len(minimal)} minimal elements")
    if len(maximal) != 1:
        raise NoBoundedTop(f"{len(maximal)} maximal elements")

    # heights along a linear extension (|down| increases strictly with <)
    order = sorted(range(n), key=lambda x: popcount(down[x]))
    height = [0] * n
    nlow = [0] * n
    nupp = [0] * n
    for x in order:
        strict = down[x] ^ (1 << x)
        for z in bits(strict):
            if (up[z] & strict) == 1 << z:
                height[x] = max(height[x], height[z] + 1)
                nlow[x] += 1
                nupp[z] += 1
    key = lambda x: (height[x], popcount(down[x]), popcount(up[x]), nlow[x], nupp[x], x)
    perm = sorted(range(n), key=key)
    pos = [0] * n
    for new, old in enumerate(perm):
        pos[old] = new

    def remap(mask):
        out = 0
        for b in bits(mask):
            out |= 1 << pos[b]
        return out

    nup = tuple(remap(up[old]) for old in perm)
    ndown = tuple(remap(down[old]) for old in perm)

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        da, ua = ndown[a], nup[a]
        for b in range(a, n):
            lower = da & ndown[b]
            m = lower.bit_length() - 1
            if ndown[m] != lower:
                raise NotALattice(f"elements {perm[a]} and {perm[b]} have no meet")
            upper = ua & nup[b]
            j = (upper & -upper).bit_length() - 1
            if nup[j] != upper:
                raise NotALattice(f"elements {perm[a]} and {perm[b]} have no join")
            meet[a][b] = meet[b][a] = m
            join[a][b] = join[b][a] = j

    le = np.zeros((n, n), dtype=bool)
    for a in range(n):
        le[a, list(bits(nup[a]))] = True
    M = np.array(meet, dtype=np.int32)
    J = np.array(join, dtype=np.int32)
    if check:
        for a in range(n):
            lhs = M[a][J]
            rhs = J[M[a][:, None], M[a][None, :]]
            if not np.array_equal(lhs, rhs):
                raise NotDistributive("distributive law fails")
    imp = np.empty((n, n), dtype=np.int32)
    rev = np.arange(n - 1, -1, -1)
    for a in range(n):
        S = le[M[a]]  # S[c, b]: a & c <= b
        best = (n - 1) - np.argmax(S[rev], axis=0)
        if not np.array_equal(le[:, best], S):
            raise NotDistributive("relative pseudocomplement does not exist")
        imp[a] = best

    covers = []
    for x in range(n):
        strict = nup[x] ^ (1 << x)
        for z in bits(strict):
            if (ndown[z] & strict) == 1 << z:
                covers.append((x, z))
    covers.sort()
    return HeytingAlgebra(
        up=nup,
        down=ndown,
        meet=tuple(map(tuple, meet)),
        join=tuple(map(tuple, join)),
        imp=tuple(map(tuple, imp.tolist())),
        covers=tuple(covers),
        labels=tuple(str(labels[old]) for old in perm),
        origin=tuple(perm),
        name=name,
    )


def from_covers(size, covers, name=None, labels=None):
    """Build an algebra from a Hasse diagram given as (lower, upper) pairs.

    Redundant (transitive) edges are tolerated.  Labels default to the input
    indices, so the caller can still recognise elements after the canonical
    renumbering.
    """
    if not isinstance(size, int) or size < 1:
        _reject(f"size must be a positive integer, got {size!r}")
    succ = {i: set() for i in range(size)}
    for pair in covers:
        if len(pair) != 2:
            _reject(f"cover {pair!r} is not a pair")
        lo, hi = pair
        for v in (lo, hi):
            if not isinstance(v, int) or not 0 <= v < size:
                _reject(f"index {v!r} out of range for size {size}")
        if lo == hi:
            raise CyclicCovers(f"self-loop at {lo}")
        succ[lo].add(hi)
    ts = TopologicalSorter({v: succ[v] for v in succ})
    try:
        topo = list(ts.static_order())  # successors come first
    except CycleError as exc:
        raise CyclicCovers(f"cover relation has a cycle: {exc.args[1]}") from None
    up = [1 << i for i in range(size)]
    for v in topo:
        for w in succ[v]:
            up[v] |= up[w]
    return from_up_masks(up, labels=labels, name=name)


def restrict(alg, elements, name=None, check=False):
    """Algebra on a subset of ``alg`` with the induced order.

    Labels are inherited.  ``origin`` of the result maps each new element to
    the corresponding element of ``alg``.
    """
    elements = sorted(set(elements))
    idx = {e: i for i, e in enumerate(elements)}
    sel = 0
    for e in elements:
        sel |= 1 << e
    up = []
    for e in elements:
        m = 0
        for b in bits(alg.up[e] & sel):
            m |= 1 << idx[b]
        up.append(m)
    res = from_up_masks(up, labels=[alg.labels[e] for e in elements], name=name, check=check)
    res.origin = tuple(elements[o] for o in res.origin)
    return res


def closure_mask(alg, seed):
    """Bitmask of the subalgebra generated by ``seed``."""
    members = []
    mask = 0
    for x in [alg.bottom, alg.top, *seed]:
        if not (mask >> x) & 1:
            mask |= 1 << x
            members.append(x)
    meet, join, imp = alg.meet, alg.join, alg.imp
    i = 0
    while i < len(members):
        x = members[i]
        mx, jx, ix = meet[x], join[x], imp[x]
        for j in range(i + 1):
            y = members[j]
            for r in (mx[y], jx[y], ix[y], imp[y][x]):
                if not (mask >> r) & 1:
                    mask |= 1 << r
                    members.append(r)
        i += 1
    return mask


def closure(alg, seed):
    """Sorted list of the elements of the subalgebra generated by ``seed``."""
    return list(bits(closure_mask(alg, seed)))


def _unique_labels(parts):
    flat = [lab for p in parts for lab in p]
    return flat if len(set(flat)) == len(flat) else None


def ordinal_sum(*algs, name=None):
    """Coalesced sum: stack the algebras, identifying each top with the next bottom."""
    if not algs:
        _reject("ordinal_sum needs at least one algebra")
    if len(algs) == 1:
        return algs[0]
    result = algs[0]
    for b in algs[1:]:
        result = _sum2(result, b)
    if name is None and all(a.name for a in algs):
        name = "+".join(a.name for a in algs)
    result.name = name
    return result


def _sum2(a, b):
    na, nb = a.size, b.size
    shift = na - 1
    upper_part = ((1 << nb) - 1) << shift
    up = [a.up[x] | upper_part for x in range(na)]
    up += [b.up[y] << shift for y in range(1, nb)]
    labels = _unique_labels([a.labels, b.labels[1:]])
    return from_up_masks(up, labels=labels, check=False)


def product(a, b, name=None, cap=PRODUCT_SIZE_CAP):
    """Direct product with componentwise order; labels are "(x,y)" pairs."""
    na, nb = a.size, b.size
    if na * nb > cap:
        raise SizeLimitExceeded(f"product would have {na * nb} elements (cap {cap})")
    up = []
    for i in range(na):
        for j in range(nb):
            m = 0
            for k in bits(a.up[i]):
                m |= b.up[j] << (k * nb)
            up.append(m)
    labels = [f"({a.labels[i]},{b.labels[j]})" for i in range(na) for j in range(nb)]
    if name is None and a.name and b.name:
        name = f"{a.name}x{b.name}"
    return from_up_masks(up, labels=labels, name=name, check=False)


KINDS = ("embedding", "surjection", "isomorphism")


@dataclass(frozen=True)
class AlgebraMap:
    """A homomorphism between algebras; preservation is checked on creation."""

    source: HeytingAlgebra
    target: HeytingAlgebra
    assign: tuple
    kind: str

    def __post_init__(self):
        s, t, f = self.source, self.target, self.assign
        if self.kind not in KINDS:
            _reject(f"unknown map kind {self.kind!r}")
        if len(f) != s.size or any(not 0 <= y < t.size for y in f):
            _reject("assignment is not a total map into the target")
        if f[s.bottom] != t.bottom or f[s.top] != t.top:
            _reject("map does not preserve the bounds")
        for x in range(s.size):
            for y in range(s.size):
                fx, fy = f[x], f[y]
                if (
                    f[s.meet[x][y]] != t.meet[fx][fy]
                    or f[s.join[x][y]] != t.join[fx][fy]
                    or f[s.imp[x][y]] != t.imp[fx][fy]
                ):
                    _reject(f"map does not preserve operations at ({x},{y})")
        injective = len(set(f)) == len(f)
        onto = len(set(f)) == t.size
        if self.kind in ("embedding", "isomorphism") and not injective:
            _reject("embedding is not injective")
        if self.kind in ("surjection", "isomorphism") and not onto:
            _reject("surjection is not onto")

    def __call__(self, x):
        return self.assign[x]


def is_isomorphic(a, b):
    """Return an isomorphism ``a -> b`` or None."""
    from ._search import find_embedding

    if a.size != b.size or len(a.covers) != len(b.covers):
        return None
    if sorted(a.invariants) != sorted(b.invariants):
        return None
    f = find_embedding(a, b, iso=True)
    if f is None:
        return None
    return AlgebraMap(a, b, tuple(f), "isomorphism")
