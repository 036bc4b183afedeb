"""Projective shapes, block signatures and the domination order.

A finite projective Heyting algebra is an s.i. sum of copies of Z2 and Z4.
Writing A(n) for n copies of Z4 followed by one Z2, every such algebra
starting with Z4 splits uniquely as A(n0) + A(n1) + ... + A(nm) with
n0 > 0.  Its signature is (n0; n0 n1 ... nm).
"""

from dataclasses import dataclass

import networkx as nx

from .catalog import zn
from .errors import HeadNotZ4, NotProjectiveShape, TrivialAlgebra
from .kernel import ordinal_sum
from .morphisms import embeds
from .structure import is_si, nodeless_decomposition


@dataclass(frozen=True)
class Signature:
    head: int
    word: tuple

    def __str__(self):
        return f"({self.head}; {' '.join(map(str, self.word))})"


def _tag(comp):
    if comp.size == 2:
        return "Z2"
    if comp.size == 4 and len(comp.upper_covers(comp.bottom)) == 2:
        return "Z4"
    return None


def projective_shape(alg):
    """Component tags ("Z2"/"Z4") if ``alg`` is finite projective, else None."""
    if alg.size == 1:
        raise TrivialAlgebra("projective shape of the trivial algebra")
    if not is_si(alg):
        return None
    tags = [_tag(c) for c in nodeless_decomposition(alg).components]
    if any(t is None for t in tags):
        return None
    return tags


def block_signature(alg):
    tags = projective_shape(alg)
    if tags is None:
        raise NotProjectiveShape(f"{alg!r} is not a sum of Z2 and Z4 ending in Z2")
    if tags[0] != "Z4":
        raise HeadNotZ4(f"{alg!r} starts with {tags[0]}")
    word = []
    run = 0
    for t in tags:
        if t == "Z4":
            run += 1
        else:
            word.append(run)
            run = 0
    assert run == 0  # s.i. algebras end with Z2
    return Signature(word[0], tuple(word))


def dominates(lhs, rhs):
    """lhs <= rhs: heads compared, then lhs.word dominated by rhs.word."""
    if lhs.head > rhs.head:
        return False
    j = 0
    for a in lhs.word:
        while j < len(rhs.word) and a > rhs.word[j]:
            j += 1
        if j == len(rhs.word):
            return False
        j += 1
    return True


def fast_embeds(a, b):
    """True when domination of signatures proves a embeds into b, else None."""
    try:
        sa, sb = block_signature(a), block_signature(b)
    except (NotProjectiveShape, HeadNotZ4, TrivialAlgebra):
        return None
    return True if dominates(sa, sb) else None


def block(n):
    """A(n): n copies of Z4 followed by Z2."""
    return ordinal_sum(*([zn(4)] * n + [zn(2)]), name=f"A({n})")


def from_word(word):
    """A(n0) + A(n1) + ... for a word of block indices."""
    name = "+".join(f"A({n})" for n in word)
    return ordinal_sum(*[block(n) for n in word], name=name)


def word_size(word):
    return 1 + sum(3 * n + 1 for n in word)


def p_prime_words(max_size, max_index):
    """All words (n0 > 0) whose algebra has at most ``max_size`` elements."""
    out = []

    def grow(word):
        out.append(tuple(word))
        for n in range(max_index + 1):
            if word_size(word + [n]) <= max_size:
                grow(word + [n])

    for n0 in range(1, max_index + 1):
        if word_size([n0]) <= max_size:
            grow([n0])
    return sorted(out, key=lambda w: (word_size(w), w))


def embedding_order(algs):
    """Pairs (i, j), i != j, with algs[i] embedding into algs[j]."""
    rel = set()
    for i, a in enumerate(algs):
        for j, b in enumerate(algs):
            if i != j and a.size <= b.size and embeds(a, b) is not None:
                rel.add((i, j))
    return rel


def max_antichain(n, rel):
    """A largest antichain of a strict partial order on range(n).

    ``rel`` holds the pairs (i, j) with i < j in the order.  Returns the
    antichain and a partition into the same number of chains, which together
    certify optimality (Dilworth).  The matching and the vertex cover come
    from networkx.
    """
    left = [("l", i) for i in range(n)]
    g = nx.Graph()
    g.add_nodes_from(left)
    g.add_nodes_from(("r", i) for i in range(n))
    g.add_edges_from((("l", i), ("r", j)) for i, j in rel)
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    cover = nx.bipartite.to_vertex_cover(g, matching, top_nodes=left)
    antichain = sorted(i for i in range(n) if ("l", i) not in cover and ("r", i) not in cover)
    succ = {i: matching[("l", i)][1] for i in range(n) if ("l", i) in matching}
    has_pred = set(succ.values())
    chains = []
    for i in range(n):
        if i in has_pred:
            continue
        chain = [i]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(chain)
    return antichain, chains
