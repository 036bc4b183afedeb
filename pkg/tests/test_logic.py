import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from heyting.catalog import corpus_list, lookup, prohibited, zn
from heyting.errors import FormulaSyntaxError, NotSubdirectlyIrreducible, SearchBudgetExceeded
from heyting.logic import (
    And,
    Bot,
    Imp,
    Neg,
    Or,
    Top,
    Var,
    conjunction,
    decide_primitive,
    evaluate,
    is_valid,
    jankov_formula,
    load_axioms,
    parse,
    rule_derivable,
    to_text,
)
from heyting.morphisms import in_hs
from heyting.structure import is_si

NAMES = ["p", "q", "r", "s"]


def formulas(max_leaves=12):
    leaves = st.one_of(st.sampled_from([Var(n) for n in NAMES]), st.just(Bot()), st.just(Top()))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Neg),
            st.tuples(sub, sub).map(lambda t: And(*t)),
            st.tuples(sub, sub).map(lambda t: Or(*t)),
            st.tuples(sub, sub).map(lambda t: Imp(*t)),
        ),
        max_leaves=max_leaves,
    )


def test_parse_examples():
    p, q, r = Var("p"), Var("q"), Var("r")
    assert parse("~p -> (q | r)") == Imp(Neg(p), Or(q, r))
    assert parse("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse("p & q | r") == Or(And(p, q), r)
    assert parse("~~p & 1 -> 0") == Imp(And(Neg(Neg(p)), Top()), Bot())
    assert parse("(p -> q) -> r") == Imp(Imp(p, q), r)


@pytest.mark.parametrize("text,pos", [("p & | q", 4), ("(p", 2), ("p q", 2), ("", 0), ("p $ q", 2)])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(FormulaSyntaxError) as exc:
        parse(text)
    assert exc.value.position == pos


@given(formulas())
def test_print_parse_round_trip(f):
    assert parse(to_text(f)) == f
    assert parse(str(f)) == f


def test_minimal_parentheses():
    assert to_text(parse("((p) -> (q -> r))")) == "p -> q -> r"
    assert to_text(parse("(p -> q) -> r")) == "(p -> q) -> r"
    assert to_text(parse("~(p & q)")) == "~(p & q)"


def test_load_axioms_skips_comments_and_blanks():
    text = "# header\n\np | ~p\n  (p->q)|(q->p)  # trailing\n"
    assert load_axioms(text) == [parse("p | ~p"), parse("(p->q)|(q->p)")]


@given(formulas(), st.data())
def test_evaluation_follows_tables(f, data):
    alg = data.draw(st.sampled_from(corpus_list(3)))
    v = {n: data.draw(st.integers(0, alg.size - 1)) for n in NAMES}
    assert evaluate(f, alg, v) == oracles.brute_eval(f, alg, v)


def test_classical_tautologies_on_z2():
    rng = random.Random(7)
    z2 = zn(2)
    count = 0
    for f in _random_formulas(rng, 1000, depth=5):
        truth = all(
            oracles.brute_eval(f, z2, dict(zip(NAMES, vals))) == 1 for vals in itertools.product((0, 1), repeat=4)
        )
        assert (is_valid(z2, f) is None) == truth
        count += 1
    assert count == 1000


def _random_formulas(rng, n, depth):
    def gen(d):
        if d == 0 or rng.random() < 0.25:
            return rng.choice([Var(x) for x in NAMES] + [Bot(), Top()])
        k = rng.randrange(4)
        if k == 0:
            return Neg(gen(d - 1))
        return (And, Or, Imp)[k - 1](gen(d - 1), gen(d - 1))

    return [gen(depth) for _ in range(n)]


def test_is_valid_examples():
    assert is_valid(zn(2), parse("p | ~p")) is None
    z3 = zn(3)
    assert is_valid(z3, parse("p | ~p")) == {"p": 1}
    cv = is_valid(prohibited(1), parse("(p->q)|(q->p)"))
    p1 = prohibited(1)
    assert cv is not None and not p1.comparable(cv["p"], cv["q"])


def test_countervaluation_is_lexicographically_least():
    rng = random.Random(11)
    algs = list(corpus_list(3))
    for f in _random_formulas(rng, 150, depth=4):
        alg = rng.choice(algs)
        expected = oracles.brute_countervaluations(f, alg)
        got = is_valid(alg, f)
        assert got == (expected[0] if expected else None)


def test_budget():
    f = parse("p & q & r & s -> p")
    with pytest.raises(SearchBudgetExceeded) as exc:
        is_valid(prohibited(5), f, budget=100)
    assert exc.value.context["algebra"] == "P5"
    assert is_valid(prohibited(5), f) is None


@given(st.data())
def test_substitution_preserves_validity(data):
    alg = data.draw(st.sampled_from([zn(2), zn(3), zn(5), zn(4)]))
    f = data.draw(formulas(max_leaves=6))
    if is_valid(alg, f) is not None:
        return
    sigma = {n: data.draw(formulas(max_leaves=3)) for n in NAMES}
    assert is_valid(alg, f.substitute(sigma)) is None


def test_rule_derivable():
    prucnal = [parse("~p -> q | r")]
    assert rule_derivable(prucnal, parse("(~p -> q) | (~p -> r)"), zn(2))
    assert rule_derivable([], parse("p -> p"), zn(5))
    assert not rule_derivable([], parse("p | ~p"), zn(3))
    for alg in corpus_list(3):
        assert rule_derivable([parse("p"), parse("p -> q")], parse("q"), alg)
    assert not rule_derivable([parse("~~p")], parse("p"), zn(3))


def test_conjunction_of_nothing_is_top():
    assert conjunction([]) == Top()


def test_jankov_requires_si():
    with pytest.raises(NotSubdirectlyIrreducible):
        jankov_formula(zn(4))
    with pytest.raises(NotSubdirectlyIrreducible):
        jankov_formula(zn(1))


def test_jankov_examples():
    e2 = jankov_formula(zn(2))
    for b in corpus_list(3):
        assert (is_valid(b, e2) is None) == (b.size == 1)
    e = jankov_formula(prohibited(1))
    assert is_valid(prohibited(1), e) is not None
    assert is_valid(zn(6), e) is None
    for i in range(1, 6):
        assert is_valid(prohibited(i), jankov_formula(prohibited(i))) is not None


def test_jankov_pruned_search_matches_full_scan():
    # Wrapping in "1 -> ..." hides the diagram shape and forces the full scan.
    for a in (zn(2), zn(3), zn(5)):
        e = jankov_formula(a)
        hidden = Imp(Top(), e)
        for b in corpus_list(3):
            cv = is_valid(b, e)
            assert (cv is None) == (is_valid(b, hidden) is None)
            if cv is not None:
                assert oracles.brute_eval(e, b, cv) != b.top


def test_jankov_contract_on_si_catalog_algebras():
    targets = [lookup(n) for n in ["Z2", "Z3", "Z5", "Z7", "P1", "P2", "P3", "P4", "P5", "Z5'"]]
    assert all(is_si(a) for a in targets)
    for a in targets:
        e = jankov_formula(a)
        for b in corpus_list(4):
            assert (is_valid(b, e) is None) == (not in_hs(a, b)), (a.name, b.name)


def test_decide_primitive_examples():
    assert decide_primitive([parse("(p->q)|(q->p)")]).primitive
    assert decide_primitive([parse("p | ~p")]).primitive
    empty = decide_primitive([])
    assert not empty.primitive and empty.models == ["P1", "P2", "P3", "P4", "P5"]
    wem = decide_primitive([parse("~p | ~~p")])
    assert not wem.primitive and wem.models == ["P2", "P4"]
    ref = wem.refutations["P1"]
    assert ref.axiom_index == 0
    assert oracles.brute_eval(ref.axiom, prohibited(1), ref.valuation) != prohibited(1).top


def test_decide_primitive_parallel_is_deterministic():
    axioms = [parse("~p | ~~p"), parse("(p -> q) | (q -> p)")]
    assert decide_primitive(axioms, jobs=2) == decide_primitive(axioms, jobs=1)


def test_decide_primitive_reports_budget():
    with pytest.raises(SearchBudgetExceeded) as exc:
        decide_primitive([parse("p | q | r | s | ~p")], budget=50)
    assert exc.value.context["algebra"] == "P1"
