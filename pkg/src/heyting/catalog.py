"""Named algebras and the brute-force corpus.

Every named entry carries a list of checks that are run the first time the
entry is requested; a failing check raises immediately, so a wrong cover
list cannot silently feed the rest of the library.

Cover lists are (lower, upper) pairs over the element numbering of the
source drawing.  Labels mark the elements that other code refers to by
name (atoms a, b of P5, the generator g of Z6, ...).
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidInput, OutOfRange, SizeLimitExceeded
from .kernel import closure_mask, from_covers, is_isomorphic, ordinal_sum, product
from .posets import down_set_lattice, posets

CORPUS_CAP = 8


def _labels(size, named):
    out = [str(i) for i in range(size)]
    for idx, lab in named.items():
        out[idx] = lab
    return out


# --- transcriptions -----------------------------------------------------------

_Z4 = [(0, 1), (0, 2), (1, 3), (2, 3)]
_Z6 = [(0, 1), (0, 2), (1, 3), (2, 3), (2, 5), (3, 4), (5, 4)]
_Z8 = [(0, 1), (0, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 6), (4, 7), (5, 4), (6, 7)]

ZN_COVERS = {
    1: (1, [], {}),
    2: (2, [(0, 1)], {}),
    3: (3, [(0, 1), (1, 2)], {}),
    4: (4, _Z4, {}),
    5: (5, _Z4 + [(3, 4)], {0: "0", 1: "a", 2: "b", 3: "d", 4: "1"}),
    6: (6, _Z6, {2: "g"}),
    7: (7, _Z6 + [(4, 6)], {2: "g"}),
    8: (8, _Z8, {2: "g"}),
    9: (9, _Z8 + [(7, 8)], {2: "g"}),
    10: (
        10,
        [(0, 1), (0, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 6), (4, 7), (4, 9), (5, 4), (6, 7), (7, 8), (9, 8)],
        {2: "g", 9: "a"},
    ),
}

_P1 = [(0, 1), (0, 2), (1, 3), (2, 3), (2, 5), (3, 6), (5, 6), (6, 4)]
_P3 = [(0, 3), (0, 4), (1, 2), (3, 1), (4, 1), (5, 1), (6, 3), (6, 5), (7, 4), (7, 5), (8, 0), (8, 6), (8, 7)]

# P3 and P4 as drawn; the catalog stores closed forms and checks them against these
P3_DRAWN = (9, _P3)
P4_DRAWN = (10, _P3 + [(9, 8)])

P_COVERS = {
    1: (7, _P1, {}),
    2: (8, _P1 + [(7, 0)], {}),
    5: (
        14,
        [
            (0, 3), (0, 4), (1, 11), (1, 12), (2, 13), (3, 1), (3, 10), (4, 1), (4, 9), (5, 1), (6, 3),
            (6, 5), (7, 4), (7, 5), (8, 0), (8, 6), (8, 7), (9, 12), (10, 11), (11, 2), (12, 2),
        ],
        {6: "a", 7: "b"},
    ),
}

P5_PRIME_COVERS = (
    14,
    [
        (0, 2), (0, 3), (1, 8), (1, 9), (2, 1), (3, 1), (3, 13), (4, 1), (4, 10), (5, 2), (5, 4),
        (6, 3), (6, 4), (7, 0), (7, 5), (7, 6), (8, 11), (9, 11), (10, 9), (11, 12), (13, 8),
    ],
    {0: "a'", 5: "b'", 10: "~a'", 13: "~b'"},
)

_S1 = [(0, 1), (0, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 6), (4, 7), (5, 6), (6, 7), (6, 9), (7, 8), (9, 8)]
_S3 = [
    (0, 3), (0, 4), (1, 2), (1, 10), (2, 9), (3, 1), (4, 1), (5, 1), (5, 11), (6, 3), (6, 5),
    (7, 4), (7, 5), (8, 0), (8, 6), (8, 7), (10, 9), (11, 10),
]

STAR_COVERS = {
    1: (10, _S1, {4: "a", 9: "b"}),
    2: (
        11,
        [(0, 1), (0, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 6), (4, 8), (5, 6), (6, 8), (6, 10), (7, 0), (8, 9), (10, 9)],
        {4: "a", 10: "b"},
    ),
    3: (12, _S3, {11: "a", 2: "b"}),
    4: (
        13,
        [
            (0, 3), (0, 4), (1, 2), (1, 11), (2, 10), (3, 1), (4, 1), (5, 1), (5, 12), (6, 3), (6, 5),
            (7, 4), (7, 5), (8, 0), (8, 6), (8, 7), (9, 8), (11, 10), (12, 11),
        ],
        {12: "a", 2: "b"},
    ),
    5: (
        20,
        [
            (0, 2), (0, 3), (1, 8), (1, 9), (1, 16), (2, 1), (2, 15), (3, 1), (3, 14), (4, 1), (4, 10),
            (5, 2), (5, 4), (6, 3), (6, 4), (7, 0), (7, 5), (7, 6), (8, 11), (8, 12), (9, 11), (9, 17),
            (10, 9), (11, 13), (11, 19), (12, 13), (13, 18), (14, 8), (15, 16), (16, 12), (16, 17),
            (17, 13), (19, 18),
        ],
        {15: "a", 19: "b"},
    ),
}


# --- entries --------------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    algebra: object
    provenance: str
    verification: list = field(default_factory=list)

    def verify(self):
        for desc, check in self.verification:
            if not check(self.algebra):
                raise AssertionError(f"catalog entry {self.name}: check failed: {desc}")
        return True


def _one_generated(alg):
    full = (1 << alg.size) - 1
    return any(closure_mask(alg, [x]) == full for x in alg.elements)


def _si(alg):
    return alg.size > 1 and len(alg.lower_covers(alg.top)) == 1


def _iso(other):
    return lambda alg: is_isomorphic(alg, other) is not None


def _build_zn(n):
    size, covers, named = ZN_COVERS[n]
    alg = from_covers(size, covers, name=f"Z{n}", labels=_labels(size, named))
    checks = [
        (f"has {n} elements", lambda a: a.size == n),
        ("is one-generated", _one_generated),
    ]
    if n == 6:
        def g_props(a):
            from .structure import classify

            g = a.index("g")
            cls = classify(a)
            ordinary = [x for x in a.elements if cls.ordinary[x]]
            return ordinary == [g] and a.join[a.neg[g]][a.neg[a.neg[g]]] == a.top
        checks.append(("generator g is the unique ordinary element and ~g | ~~g = 1", g_props))
    if n == 7:
        checks.append(("Z7 = Z6 + 2", lambda a: is_isomorphic(a, ordinal_sum(zn(6), zn(2))) is not None))
    if n == 10:
        def ideal_z7(a):
            from .structure import ideal_algebra

            return is_isomorphic(ideal_algebra(a, a.index("a")), zn(7)) is not None
        checks.append(("ideal below a is Z7", ideal_z7))
    return CatalogEntry(f"Z{n}", alg, f"one-generated algebra with {n} elements, drawn diagram", checks)


def _boolean_cube():
    two = zn(2)
    return product(product(two, two), two, name="B3")


def _build_prohibited(i):
    if i == 3:
        alg = ordinal_sum(_boolean_cube(), zn(2), name="P3")
        drawn = from_covers(*P3_DRAWN)
        checks = [("has 9 elements", lambda a: a.size == 9), ("s.i.", _si), ("matches drawing", _iso(drawn))]
        return CatalogEntry("P3", alg, "B3 + 2", checks)
    if i == 4:
        alg = ordinal_sum(zn(2), _boolean_cube(), zn(2), name="P4")
        drawn = from_covers(*P4_DRAWN)
        checks = [("has 10 elements", lambda a: a.size == 10), ("s.i.", _si), ("matches drawing", _iso(drawn))]
        return CatalogEntry("P4", alg, "2 + B3 + 2", checks)
    size, covers, named = P_COVERS[i]
    alg = from_covers(size, covers, name=f"P{i}", labels=_labels(size, named))
    if i == 1:
        checks = [("P1 = Z7", _iso(zn(7)))]
    elif i == 2:
        checks = [("P2 = 2 + Z7", lambda a: is_isomorphic(a, ordinal_sum(zn(2), zn(7))) is not None)]
    else:
        def generated_by_atoms(a):
            x, y = a.index("a"), a.index("b")
            atoms = set(a.upper_covers(a.bottom))
            return {x, y} <= atoms and closure_mask(a, [x, y]) == (1 << a.size) - 1

        checks = [
            ("has 14 elements", lambda a: a.size == 14),
            ("s.i.", _si),
            ("exactly eight regular elements", lambda a: bin(a.regular_mask).count("1") == 8),
            ("atoms a, b generate everything", generated_by_atoms),
        ]
    return CatalogEntry(f"P{i}", alg, "prohibited algebra, drawn diagram", checks)


def _build_z5_prime():
    covers = ZN_COVERS[5][1] + [(5, 0)]
    alg = from_covers(6, covers, name="Z5'")
    checks = [("Z5' = 2 + Z5", lambda a: is_isomorphic(a, ordinal_sum(zn(2), zn(5))) is not None)]
    return CatalogEntry("Z5'", alg, "2 + Z5, drawn diagram", checks)


def _build_p5_prime():
    size, covers, named = P5_PRIME_COVERS
    alg = from_covers(size, covers, name="P5'", labels=_labels(size, named))
    return CatalogEntry("P5'", alg, "second drawing of P5", [("P5' = P5", _iso(prohibited(5)))])


def star_partner(i):
    """The algebra whose product with P_i contains P_i* subdirectly."""
    return z5_prime() if i in (2, 4) else zn(5)


def _build_star(i):
    from .morphisms import embeds, homomorphic_images, subdirect_witness
    from .structure import ideal_algebra

    size, covers, named = STAR_COVERS[i]
    alg = from_covers(size, covers, name=f"P{i}*", labels=_labels(size, named))
    p = prohibited(i)
    right = p5_prime() if i == 5 else p

    def quotient(a):
        return any(is_isomorphic(q.quotient, p) for q in homomorphic_images(a) if q.quotient.size == p.size)

    def witness(a):
        x, y = a.index("a"), a.index("b")
        return (
            subdirect_witness(a, x, y)
            and is_isomorphic(ideal_algebra(a, x), star_partner(i)) is not None
            and is_isomorphic(ideal_algebra(a, y), right) is not None
        )

    checks = [
        (f"P{i} is a quotient", quotient),
        (f"P{i} does not embed", lambda a: embeds(p, a) is None),
        ("subdirect witness a, b with the expected quotients", witness),
        ("partner embeds into P_i", lambda a: embeds(star_partner(i), p) is not None),
    ]
    return CatalogEntry(f"P{i}*", alg, "preimage of a prohibited algebra, drawn diagram", checks)


@lru_cache(maxsize=None)
def _entry(key):
    kind, i = key
    if kind == "Z":
        e = _build_zn(i)
    elif kind == "P":
        e = _build_prohibited(i)
    elif kind == "S":
        e = _build_star(i)
    elif kind == "Z5'":
        e = _build_z5_prime()
    elif kind == "P5'":
        e = _build_p5_prime()
    else:
        e = CatalogEntry("B3", _boolean_cube(), "Boolean cube", [("has 8 elements", lambda a: a.size == 8)])
    e.verify()
    return e


def _check_range(i, lo, hi):
    if not isinstance(i, int) or not lo <= i <= hi:
        raise OutOfRange(f"index {i!r} not in [{lo}, {hi}]")


def zn(n):
    """The one-generated algebra with n elements, 1 <= n <= 10."""
    _check_range(n, 1, 10)
    return _entry(("Z", n)).algebra


def prohibited(i):
    _check_range(i, 1, 5)
    return _entry(("P", i)).algebra


def star(i):
    _check_range(i, 1, 5)
    return _entry(("S", i)).algebra


def z5_prime():
    return _entry(("Z5'", 0)).algebra


def p5_prime():
    return _entry(("P5'", 0)).algebra


def boolean_cube():
    return _entry(("B3", 0)).algebra


def entry(name):
    """CatalogEntry for a CLI name such as "Z7", "P3*" or "Z5'"."""
    return _entry(_key(name))


def _key(name):
    name = name.strip()
    if name == "2":
        return ("Z", 2)
    if name == "B3":
        return ("B3", 0)
    if name in ("Z5'", "P5'"):
        return (name, 0)
    try:
        if name.startswith("Z"):
            n = int(name[1:])
            _check_range(n, 1, 10)
            return ("Z", n)
        if name.startswith("P") and name.endswith("*"):
            n = int(name[1:-1])
            _check_range(n, 1, 5)
            return ("S", n)
        if name.startswith("P"):
            n = int(name[1:])
            _check_range(n, 1, 5)
            return ("P", n)
    except ValueError:
        pass
    raise InvalidInput(f"unknown catalog name {name!r}")


def lookup(name):
    return entry(name).algebra


def is_catalog_name(name):
    try:
        _key(name)
    except InvalidInput:
        return False
    return True


NAMES = (
    [f"Z{n}" for n in range(1, 11)]
    + ["2", "B3"]
    + [f"P{i}" for i in range(1, 6)]
    + [f"P{i}*" for i in range(1, 6)]
    + ["Z5'", "P5'"]
)


# --- corpus --------------------------------------------------------------------


def corpus(max_poset_size):
    """Yield every Heyting algebra whose join-irreducible poset has at most
    ``max_poset_size`` points, once per isomorphism class.

    Items are ordered by poset size, then by canonical poset code, and are
    named ``J<k>.<i>``.
    """
    if max_poset_size > CORPUS_CAP:
        raise SizeLimitExceeded(f"corpus limited to posets of size {CORPUS_CAP}")
    for k in range(max_poset_size + 1):
        for i, p in enumerate(posets(k)):
            yield down_set_lattice(p, name=f"J{k}.{i}")


@lru_cache(maxsize=None)
def corpus_list(max_poset_size):
    """Cached tuple version of :func:`corpus`."""
    return tuple(corpus(max_poset_size))
