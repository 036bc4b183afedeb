"""Embeddings, principal-filter quotients and variety membership."""

import warnings
from dataclasses import dataclass

from ._search import find_embedding
from .errors import InvalidInput, NotSubdirectlyIrreducible
from .kernel import AlgebraMap, bits, closure_mask, is_isomorphic, restrict
from .structure import ideal_algebra, is_si


def embeds(a, b):
    """An embedding a -> b, or None when the exhaustive search finds none."""
    f = find_embedding(a, b)
    if f is None:
        return None
    return AlgebraMap(a, b, tuple(f), "embedding")


@dataclass(frozen=True)
class FilterQuotient:
    """Quotient of ``base`` by the filter generated by ``generator``.

    The quotient is realised on the ideal below the generator and the
    projection sends x to x & generator.
    """

    base: object
    generator: int
    quotient: object
    projection: AlgebraMap


def quotient_at(b, g):
    q = ideal_algebra(b, g)
    pos = {orig: i for i, orig in enumerate(q.origin)}
    assign = tuple(pos[b.meet[x][g]] for x in b.elements)
    return FilterQuotient(b, g, q, AlgebraMap(b, q, assign, "surjection"))


def homomorphic_images(b):
    """One quotient per element of ``b``, in element order."""
    return [quotient_at(b, g) for g in b.elements]


def _si_generators(b):
    # the quotient at g is s.i. iff g has a single lower cover
    return [g for g in b.elements if len(b.lower_covers(g)) == 1]


def in_hs(a, b):
    """True iff a embeds into some quotient of b."""
    if a.size == 1:
        return True
    if not is_si(a):
        warnings.warn("in_hs expects a subdirectly irreducible first argument", stacklevel=2)
    for g in b.elements:
        if bin(b.down[g]).count("1") < a.size:
            continue
        if find_embedding(a, ideal_algebra(b, g)) is not None:
            return True
    return False


def subalgebras(b):
    """Element lists of all subalgebras of b."""
    full = (1 << b.size) - 1
    start = closure_mask(b, [])
    seen = {start}
    todo = [start]
    while todo:
        s = todo.pop()
        for x in b.elements:
            if not (s >> x) & 1:
                t = closure_mask(b, list(bits(s)) + [x])
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    assert full in seen
    return [list(bits(s)) for s in sorted(seen)]


def in_sh(a, b):
    """True iff some subalgebra of b has a quotient isomorphic to a."""
    for members in subalgebras(b):
        sub = restrict(b, members)
        for g in sub.elements:
            q = ideal_algebra(sub, g)
            if q.size == a.size and is_isomorphic(a, q) is not None:
                return True
    return False


def in_generated_variety(w, p):
    """True iff w lies in the variety generated by p.

    Every s.i. quotient of w must lie in HS(p); w is a subdirect product of
    these quotients.
    """
    checked = []
    for g in _si_generators(w):
        q = ideal_algebra(w, g)
        known = next((r for other, r in checked if is_isomorphic(q, other) is not None), None)
        if known is None:
            known = in_hs(q, p)
            checked.append((q, known))
        if not known:
            return False
    return True


def subdirect_witness(alg, x, y):
    """True iff the filter congruences at x and y intersect trivially."""
    for v in (x, y):
        if not 0 <= v < alg.size or v == alg.top:
            raise InvalidInput(f"witness element {v!r} must be below the top")
    le = alg.le
    for u in alg.elements:
        for v in range(u + 1, alg.size):
            e = alg.iff(u, v)
            if le(x, e) and le(y, e):
                return False
    return True


def totally_nonprojective_certificate(p, w):
    """Check that w certifies p as totally non-projective.

    Requires p to be a quotient of w, p not to embed into w, and w to lie in
    the variety generated by p.
    """
    if p.size == 1 or not is_si(p):
        raise NotSubdirectlyIrreducible("certificate needs an s.i. algebra")
    in_h = any(
        is_isomorphic(p, ideal_algebra(w, g)) is not None
        for g in w.elements
        if bin(w.down[g]).count("1") == p.size
    )
    return in_h and embeds(p, w) is None and in_generated_variety(w, p)
