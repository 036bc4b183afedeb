"""Structural queries on a single algebra."""

from dataclasses import dataclass

from .errors import NotComparable, OutOfRange, TrivialAlgebra
from .kernel import bits, closure, ordinal_sum, restrict


def _check(alg, *xs):
    for x in xs:
        if not isinstance(x, int) or not 0 <= x < alg.size:
            raise OutOfRange(f"element {x!r} not in algebra of size {alg.size}")


def _nontrivial(alg):
    if alg.size == 1:
        raise TrivialAlgebra("the trivial algebra is not allowed here")


@dataclass(frozen=True)
class ElementClass:
    """Per-element flags, each a tuple of booleans indexed by element."""

    dense: tuple
    regular: tuple
    ordinary: tuple
    coatom: tuple
    node: tuple

    def members(self, flag):
        return [x for x, v in enumerate(getattr(self, flag)) if v]


def classify(alg):
    n = alg.size
    dense = tuple(bool((alg.dense_mask >> x) & 1) for x in range(n))
    regular = tuple(bool((alg.regular_mask >> x) & 1) for x in range(n))
    ordinary = tuple(not (d or r) for d, r in zip(dense, regular))
    co = set(coatoms(alg))
    coatom = tuple(x in co for x in range(n))
    full = (1 << n) - 1
    node = tuple((alg.up[x] | alg.down[x]) == full for x in range(n))
    return ElementClass(dense, regular, ordinary, coatom, node)


def coatoms(alg):
    """Elements covered by the top (empty for the trivial algebra)."""
    return list(alg.lower_covers(alg.top))


def atoms(alg):
    return list(alg.upper_covers(alg.bottom))


def nodes(alg):
    """Nodes in ascending order.  That they form a chain is checked."""
    full = (1 << alg.size) - 1
    out = [x for x in alg.elements if (alg.up[x] | alg.down[x]) == full]
    for lo, hi in zip(out, out[1:]):
        assert alg.le(lo, hi), "nodes must form a chain"
    return out


def strongly_below(alg, a, b):
    """a << b, i.e. a <= b and b -> a = a."""
    _check(alg, a, b)
    return alg.le(a, b) and alg.imp[b][a] == a


def smallest_dense(alg):
    _nontrivial(alg)
    d = alg.top
    for x in bits(alg.dense_mask):
        d = alg.meet[d][x]
    assert (alg.dense_mask >> d) & 1
    return d


def interval_algebra(alg, lo, hi):
    """The interval [lo, hi] with its own Heyting implication."""
    _check(alg, lo, hi)
    if not alg.le(lo, hi):
        raise NotComparable(f"{lo} is not below {hi}")
    members = list(bits(alg.up[lo] & alg.down[hi]))
    return restrict(alg, members)


def filter_algebra(alg, e):
    _check(alg, e)
    return interval_algebra(alg, e, alg.top)


def ideal_algebra(alg, e):
    _check(alg, e)
    return interval_algebra(alg, alg.bottom, e)


def generated_subalgebra(alg, seed):
    _check(alg, *seed)
    return restrict(alg, closure(alg, list(seed)))


def is_si(alg):
    _nontrivial(alg)
    return len(alg.lower_covers(alg.top)) == 1


@dataclass(frozen=True)
class Decomposition:
    """Nodeless components between consecutive nodes, bottom first."""

    components: tuple
    junctions: tuple

    def recompose(self):
        return ordinal_sum(*self.components)


def nodeless_decomposition(alg):
    _nontrivial(alg)
    ns = nodes(alg)
    comps = tuple(interval_algebra(alg, lo, hi) for lo, hi in zip(ns, ns[1:]))
    return Decomposition(comps, tuple(ns))


def dense_cosets(alg):
    """Classes of x ~ y iff (x <-> y) >= d, d the smallest dense element.

    Returned as sorted lists of elements, ordered by their least element.
    """
    d = smallest_dense(alg)
    seen = 0
    out = []
    for x in alg.elements:
        if (seen >> x) & 1:
            continue
        cls = [y for y in alg.elements if alg.le(d, alg.iff(x, y))]
        for y in cls:
            seen |= 1 << y
        out.append(cls)
    return out
