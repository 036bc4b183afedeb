"""Propositional formulas over &, |, ->, ~ and their validity in finite algebras.

Grammar accepted by :func:`parse`::

    formula := imp
    imp     := or [ "->" imp ]
    or      := and { "|" and }
    and     := neg { "&" neg }
    neg     := "~" neg | atom
    atom    := IDENT | "0" | "1" | "(" formula ")"
"""

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import FormulaSyntaxError, NotSubdirectlyIrreducible, SearchBudgetExceeded
from .kernel import bits

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 18


# --- syntax ---------------------------------------------------------------------


class Formula:
    """Base class of the formula AST.  Nodes are immutable and hashable."""

    prec = 5

    def variables(self):
        out = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if isinstance(f, Var):
                out.add(f.name)
            else:
                stack.extend(f.children())
        return out

    def children(self):
        return ()

    def substitute(self, mapping):
        """Replace variables by formulas according to ``mapping``."""
        return self

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def substitute(self, mapping):
        return mapping.get(self.name, self)


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula
    prec = 4

    def children(self):
        return (self.arg,)

    def substitute(self, mapping):
        return Neg(self.arg.substitute(mapping))


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def substitute(self, mapping):
        return type(self)(self.left.substitute(mapping), self.right.substitute(mapping))


class And(_Binary):
    prec = 3
    symbol = "&"


class Or(_Binary):
    prec = 2
    symbol = "|"


class Imp(_Binary):
    prec = 1
    symbol = "->"


def to_text(f):
    """Render with the fewest parentheses that parse back to the same tree."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "0"
    if isinstance(f, Top):
        return "1"
    if isinstance(f, Neg):
        inner = to_text(f.arg)
        return "~" + (inner if f.arg.prec >= 4 else f"({inner})")
    left, right = to_text(f.left), to_text(f.right)
    if isinstance(f, Imp):
        lpar, rpar = f.left.prec <= 1, f.right.prec < 1
    else:
        lpar, rpar = f.left.prec < f.prec, f.right.prec <= f.prec
    if lpar:
        left = f"({left})"
    if rpar:
        right = f"({right})"
    return f"{left} {f.symbol} {right}"


_TOKEN = re.compile(r"\s*(?:(->)|([|&~()])|([A-Za-z_][A-Za-z0-9_']*)|([01])(?![A-Za-z0-9_]))")


def _tokenize(text):
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(3):
            toks.append(("id", m.group(3), start))
        elif m.group(4):
            toks.append(("const", m.group(4), start))
        else:
            toks.append((m.group(m.lastindex), None, start))
        pos = m.end()
    toks.append(("eof", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1] or tok[0])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def formula(self):
        left = self.disj()
        if self.peek() == "->":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.neg()
        while self.peek() == "&":
            self.i += 1
            f = And(f, self.neg())
        return f

    def neg(self):
        if self.peek() == "~":
            self.i += 1
            return Neg(self.neg())
        return self.atom()

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "id":
            self.i += 1
            return Var(val)
        if kind == "const":
            self.i += 1
            return Top() if val == "1" else Bot()
        if kind == "(":
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        what = "end of input" if kind == "eof" else repr(val or kind)
        raise FormulaSyntaxError(f"expected a formula, found {what}", pos)


def parse(text):
    p = _Parser(text)
    f = p.formula()
    p.take("eof")
    return f


def load_axioms(text):
    """Formulas from an axiom file: one per line, '#' starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line))
    return out


def conjunction(formulas):
    """Balanced conjunction (keeps tree depth logarithmic); Top if empty."""
    formulas = list(formulas)
    if not formulas:
        return Top()
    while len(formulas) > 1:
        formulas = [
            And(formulas[i], formulas[i + 1]) if i + 1 < len(formulas) else formulas[i]
            for i in range(0, len(formulas), 2)
        ]
    return formulas[0]


def iff(a, b):
    return And(Imp(a, b), Imp(b, a))


# --- evaluation -----------------------------------------------------------------


def evaluate(f, alg, valuation):
    """Value of ``f`` under ``valuation`` (a mapping name -> element)."""
    memo = {}

    def ev(g):
        if g in memo:
            return memo[g]
        if isinstance(g, Var):
            r = valuation[g.name]
        elif isinstance(g, Bot):
            r = alg.bottom
        elif isinstance(g, Top):
            r = alg.top
        elif isinstance(g, Neg):
            r = alg.neg[ev(g.arg)]
        elif isinstance(g, And):
            r = alg.meet[ev(g.left)][ev(g.right)]
        elif isinstance(g, Or):
            r = alg.join[ev(g.left)][ev(g.right)]
        else:
            r = alg.imp[ev(g.left)][ev(g.right)]
        memo[g] = r
        return r

    return ev(f)


def _count_nodes(f):
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g not in seen:
            seen.add(g)
            stack.extend(g.children())
    return len(seen)


def _eval_arrays(f, alg, env, length):
    M = np.asarray(alg.meet, dtype=np.int32)
    J = np.asarray(alg.join, dtype=np.int32)
    I = np.asarray(alg.imp, dtype=np.int32)
    N = np.asarray(alg.neg, dtype=np.int32)
    memo = {}

    def ev(g):
        if g in memo:
            return memo[g]
        if isinstance(g, Var):
            r = env[g.name]
        elif isinstance(g, Bot):
            r = np.full(length, alg.bottom, dtype=np.int32)
        elif isinstance(g, Top):
            r = np.full(length, alg.top, dtype=np.int32)
        elif isinstance(g, Neg):
            r = N[ev(g.arg)]
        else:
            table = M if isinstance(g, And) else J if isinstance(g, Or) else I
            r = table[ev(g.left), ev(g.right)]
        memo[g] = r
        return r

    return ev(f)


def is_valid(alg, f, budget=None):
    """None if ``f`` is valid in ``alg``, otherwise a countervaluation dict.

    Formulas of the Jankov shape (a conjunction of equations between
    variables, implying a variable) are decided by a pruned search; all
    others by scanning every valuation, in which case the returned
    countervaluation is the lexicographically least one (variables sorted by
    name, first variable most significant).
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    diagram = _diagram_shape(f)
    if diagram is not None:
        return _diagram_search(alg, f, diagram, budget)
    names = sorted(f.variables())
    n, k = alg.size, len(names)
    total = n**k
    cost = total * _count_nodes(f)
    if cost > budget:
        raise SearchBudgetExceeded(
            f"{total} valuations x {_count_nodes(f)} nodes exceeds budget {budget}",
            {"algebra": alg.name, "formula": str(f)},
        )
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        env = {}
        for j, name in enumerate(names):
            env[name] = ((idx // n ** (k - 1 - j)) % n).astype(np.int32)
        val = _eval_arrays(f, alg, env, len(idx))
        bad = np.nonzero(val != alg.top)[0]
        if len(bad):
            pos = bad[0]
            return {name: int(env[name][pos]) for name in names}
    return None


def rule_derivable(premises, conclusion, alg, budget=None):
    """True iff (premises joined by &) -> conclusion is valid in ``alg``."""
    return is_valid(alg, Imp(conjunction(premises), conclusion), budget) is None


# --- Jankov formulas --------------------------------------------------------------


def jankov_formula(alg):
    """The diagram formula of an s.i. algebra, one variable p<i> per element.

    It is refuted in B exactly when ``alg`` is a subalgebra of a quotient of B.
    """
    if alg.size < 2 or len(alg.lower_covers(alg.top)) != 1:
        raise NotSubdirectlyIrreducible("Jankov formula needs an s.i. algebra")
    p = [Var(f"p{i}") for i in alg.elements]
    parts = [iff(p[alg.bottom], Bot())]
    for x in alg.elements:
        for y in alg.elements:
            if x <= y:
                parts.append(iff(p[alg.meet[x][y]], And(p[x], p[y])))
                parts.append(iff(p[alg.join[x][y]], Or(p[x], p[y])))
            parts.append(iff(p[alg.imp[x][y]], Imp(p[x], p[y])))
    s = alg.lower_covers(alg.top)[0]
    return Imp(conjunction(parts), p[s])


def _flatten_and(f, out):
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


def _defining(e):
    if isinstance(e, (Var, Bot, Top)):
        return True
    if isinstance(e, Neg):
        return isinstance(e.arg, Var)
    if isinstance(e, _Binary):
        return isinstance(e.left, Var) and isinstance(e.right, Var)
    return False


def _diagram_shape(f):
    """Equations (var, definition) if f = (conjunction of u <-> v) -> var."""
    if not isinstance(f, Imp) or not isinstance(f.right, Var) or not isinstance(f.left, And):
        return None
    imps = _flatten_and(f.left, [])
    pairs = set()
    for g in imps:
        if not isinstance(g, Imp):
            return None
        pairs.add((g.left, g.right))
    eqs = []
    covered = set()
    for lhs, rhs in pairs:
        if (rhs, lhs) not in pairs:
            return None
        if isinstance(lhs, Var) and _defining(rhs):
            eqs.append((lhs.name, rhs))
            covered.add((lhs, rhs))
            covered.add((rhs, lhs))
    if covered != pairs:
        return None
    eqs.sort(key=lambda e: (e[0], str(e[1])))
    return eqs


def _diagram_search(alg, f, eqs, budget):
    """Search for a countervaluation of a diagram-shaped formula.

    The formula is refuted iff for some c there is a valuation into the ideal
    below c satisfying every equation modulo c (u = v & c) and sending the
    conclusion variable somewhere other than c.  Because
    (x & c -> y & c) & c = (x -> y) & c, every variable on the left of an
    equation is forced once its arguments are known, so only a generating
    set of variables is branched on.
    """
    target = f.right.name
    names = sorted(f.variables())
    index = {nm: i for i, nm in enumerate(names)}
    nv = len(names)
    # equation: (target var, op, arg indices); op in var/bot/top/neg/and/or/imp
    compiled = []
    for name, rhs in eqs:
        t = index[name]
        if isinstance(rhs, Var):
            compiled.append((t, "var", (index[rhs.name],)))
        elif isinstance(rhs, Bot):
            compiled.append((t, "bot", ()))
        elif isinstance(rhs, Top):
            compiled.append((t, "top", ()))
        elif isinstance(rhs, Neg):
            compiled.append((t, "neg", (index[rhs.arg.name],)))
        else:
            op = {And: "and", Or: "or", Imp: "imp"}[type(rhs)]
            compiled.append((t, op, (index[rhs.left.name], index[rhs.right.name])))
    by_arg = [[] for _ in range(nv)]
    for e, (_, _, args) in enumerate(compiled):
        for a in set(args):
            by_arg[a].append(e)
    constants = [e for e, (_, _, args) in enumerate(compiled) if not args]
    branch = _branch_order(nv, compiled, by_arg, constants)
    tvar = index[target]
    meet, join, imp, neg = alg.meet, alg.join, alg.imp, alg.neg
    steps = 0

    for c in range(alg.size - 1, -1, -1):
        below = list(bits(alg.down[c]))
        val = [-1] * nv
        trail = []
        mc = meet[c]

        def value(op, args):
            if op == "var":
                return val[args[0]]
            if op == "bot":
                return alg.bottom
            if op == "top":
                return c
            if op == "neg":
                return mc[neg[val[args[0]]]]
            x, y = val[args[0]], val[args[1]]
            if op == "and":
                return meet[x][y]
            if op == "or":
                return join[x][y]
            return mc[imp[x][y]]

        def assign(v0, x0):
            nonlocal steps
            todo = [(v0, x0)]
            while todo:
                v, x = todo.pop()
                if val[v] != -1:
                    if val[v] != x:
                        return False
                    continue
                if v == tvar and x == c:
                    return False
                steps += 1
                if steps > budget:
                    raise SearchBudgetExceeded(
                        f"diagram search exceeded budget {budget}", {"algebra": alg.name}
                    )
                val[v] = x
                trail.append(v)
                for e in by_arg[v]:
                    t, op, args = compiled[e]
                    if all(val[a] != -1 for a in args):
                        todo.append((t, value(op, args)))
            return True

        def undo(mark):
            while len(trail) > mark:
                val[trail.pop()] = -1

        def start():
            for e in constants:
                t, op, args = compiled[e]
                if not assign(t, value(op, args)):
                    return False
            return True

        def rec(k):
            if k == len(branch):
                return True
            v = branch[k]
            if val[v] != -1:
                return rec(k + 1)
            for x in below:
                mark = len(trail)
                if assign(v, x) and rec(k + 1):
                    return True
                undo(mark)
            return False

        if start() and rec(0):
            valuation = {nm: val[i] for nm, i in index.items()}
            if evaluate(f, alg, valuation) == alg.top:
                raise AssertionError("diagram search produced a non-refuting valuation")
            return valuation
    return None


def _branch_order(nv, compiled, by_arg, constants):
    """Greedy order of variables to branch on: each pick forces the most."""

    def forced(known):
        known = set(known)
        todo = [compiled[e][0] for e in constants]
        todo += list(known)
        known = set()
        while todo:
            v = todo.pop()
            if v in known:
                continue
            known.add(v)
            for e in by_arg[v]:
                t, _, args = compiled[e]
                if t not in known and all(a in known for a in args):
                    todo.append(t)
        return known

    order = []
    known = forced([])
    while len(known) < nv:
        best, best_set = None, None
        for v in range(nv):
            if v in known:
                continue
            s = forced(list(known) + [v])
            if best_set is None or len(s) > len(best_set):
                best, best_set = v, s
        order.append(best)
        known = best_set
    return order


# --- decision procedure -------------------------------------------------------------


@dataclass(frozen=True)
class Refutation:
    """An axiom that fails in a prohibited algebra, with the failing valuation."""

    axiom_index: int
    axiom: Formula
    valuation: dict


@dataclass(frozen=True)
class PrimitivityVerdict:
    """Outcome of :func:`decide_primitive`.

    ``refutations`` maps "P1".."P5" to a Refutation, or to None when every
    axiom is valid in that algebra (the algebra is then a model).
    """

    primitive: bool
    refutations: dict

    @property
    def models(self):
        return [name for name, r in self.refutations.items() if r is None]


def _refute(i, axioms, budget):
    from .catalog import prohibited

    p = prohibited(i)
    for k, ax in enumerate(axioms):
        try:
            cv = is_valid(p, ax, budget)
        except SearchBudgetExceeded as exc:
            raise SearchBudgetExceeded(
                f"budget exceeded checking axiom {k} ({ax}) in P{i}", {"algebra": f"P{i}", "axiom": str(ax)}
            ) from exc
        if cv is not None:
            return Refutation(k, ax, cv)
    return None


def decide_primitive(axioms, budget=None, jobs=1):
    """Decide whether the variety axiomatised by ``axioms`` is primitive.

    It is primitive exactly when each of P1..P5 refutes some axiom.
    """
    axioms = list(axioms)
    idx = range(1, 6)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_refute, idx, [axioms] * 5, [budget] * 5))
    else:
        results = [_refute(i, axioms, budget) for i in idx]
    refs = {f"P{i}": r for i, r in zip(idx, results)}
    return PrimitivityVerdict(all(r is not None for r in results), refs)


def disjunction(formulas):
    return reduce(Or, formulas) if formulas else Bot()
