"""Command-line interface.

Exit codes: 0 success (or a positive verdict), 1 negative verdict,
2 input error, 3 search budget exceeded.
"""

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import catalog, documents
from .errors import HeytingError, InvalidInput, SearchBudgetExceeded
from .kernel import is_isomorphic, ordinal_sum
from .logic import DEFAULT_BUDGET, decide_primitive, is_valid, jankov_formula, load_axioms, parse
from .morphisms import embeds, homomorphic_images, in_generated_variety
from .structure import classify, coatoms, is_si, nodeless_decomposition, nodes, smallest_dense
from .wqo import block_signature, projective_shape

OK, FALSE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class Report:
    """Collects output lines (text mode) or a JSON object, plus figures."""

    def __init__(self, args, out):
        self.args = args
        self.out = out
        self.data = {}
        self.lines = []
        self.figures = []
        self.streamed = False

    def line(self, text=""):
        self.lines.append(text)

    def set(self, key, value):
        self.data[key] = value

    def figure(self, name, alg, **kw):
        if not self.args.figures:
            return
        from .plotting import draw_hasse

        d = Path(self.args.figures)
        d.mkdir(parents=True, exist_ok=True)
        path = d / f"{_safe(name)}.png"
        draw_hasse(alg, path, title=name, **kw)
        self.figures.append(str(path))

    def flush(self):
        fmt = self.args.format
        if self.streamed:
            return
        if fmt == "json":
            if self.figures:
                self.data["figures"] = self.figures
            self.out.write(json.dumps(self.data, sort_keys=True) + "\n")
        else:
            for p in self.figures:
                self.lines.append(f"figure\t{p}")
            if self.lines:
                self.out.write("\n".join(self.lines) + "\n")


def _safe(name):
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in name) or "algebra"


def load_algebra(source):
    """A catalog name or the path of a JSON algebra document."""
    if catalog.is_catalog_name(source):
        return catalog.lookup(source)
    path = Path(source)
    if not path.is_file():
        raise InvalidInput(f"{source!r} is neither a catalog name nor a readable file")
    alg = documents.loads(path.read_text(encoding="utf-8"))
    if alg.name is None:
        alg.name = path.stem
    return alg


def identify(alg):
    """Catalog name of an algebra isomorphic to ``alg``, if any."""
    for name in catalog.NAMES:
        if name in ("2", "P5'"):
            continue
        other = catalog.lookup(name)
        if other.size == alg.size and is_isomorphic(alg, other) is not None:
            return name
    return None


def _budget(args):
    env = os.environ.get("HEYT_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInput(f"HEYT_BUDGET must be an integer, got {env!r}") from None
    return args.budget


def _elements(alg, xs):
    return [alg.labels[x] for x in xs]


def _algebra_output(rep, alg):
    fmt = rep.args.format
    if fmt == "dot":
        rep.line(documents.to_dot(alg).rstrip("\n"))
    elif fmt == "json":
        rep.data.update(documents.to_document(alg))
    else:
        rep.line(f"name\t{alg.name or ''}")
        rep.line(f"size\t{alg.size}")
        rep.line("covers\t" + " ".join(f"{lo}<{hi}" for lo, hi in alg.covers))


# --- commands ------------------------------------------------------------------------


def cmd_show(args, rep):
    alg = load_algebra(args.algebra)
    rep.figure(alg.name or "algebra", alg)
    if args.format == "dot":
        _algebra_output(rep, alg)
        return OK
    cls = classify(alg)
    flags = {f: cls.members(f) for f in ("dense", "regular", "ordinary", "coatom", "node")}
    if args.format == "json":
        rep.data.update(documents.to_document(alg))
        rep.set("labels", list(alg.labels))
        for op in ("meet", "join", "imp"):
            rep.set(op, [list(r) for r in getattr(alg, op)])
        rep.set("neg", list(alg.neg))
        rep.set("classes", flags)
        return OK
    _algebra_output(rep, alg)
    rep.line("labels\t" + " ".join(f"{i}={lab}" for i, lab in enumerate(alg.labels)))
    for op in ("meet", "join", "imp"):
        rep.line(f"[{op}]")
        for row in getattr(alg, op):
            rep.line("\t".join(map(str, row)))
    rep.line("[neg]")
    rep.line("\t".join(map(str, alg.neg)))
    for f, xs in flags.items():
        rep.line(f"{f}\t{' '.join(map(str, xs))}")
    return OK


def cmd_analyze(args, rep):
    alg = load_algebra(args.algebra)
    cls = classify(alg)
    info = {
        "name": alg.name or "",
        "size": alg.size,
        "dense": cls.members("dense"),
        "regular": cls.members("regular"),
        "ordinary": cls.members("ordinary"),
        "coatoms": coatoms(alg),
        "nodes": nodes(alg),
    }
    if alg.size > 1:
        info["smallest_dense"] = smallest_dense(alg)
        info["si"] = is_si(alg)
        dec = nodeless_decomposition(alg)
        info["decomposition"] = [identify(c) or f"size{c.size}" for c in dec.components]
        shape = projective_shape(alg)
        info["projective_shape"] = shape
    rep.figure(f"{alg.name or 'algebra'}-analysis", alg, highlight=info["nodes"])
    if args.format == "json":
        rep.data.update(info)
    else:
        for k, v in info.items():
            if isinstance(v, list):
                v = " ".join(map(str, v)) if v else "-"
            elif v is None:
                v = "-"
            rep.line(f"{k}\t{v}")
    return OK


def cmd_sum(args, rep):
    algs = [load_algebra(s) for s in args.algebras]
    res = ordinal_sum(*algs)
    rep.figure(res.name or "sum", res)
    _algebra_output(rep, res)
    return OK


def _map_output(rep, f, verdict_key):
    if f is None:
        rep.set(verdict_key, None)
        rep.line("none")
        return FALSE
    pairs = {str(x): y for x, y in enumerate(f.assign)}
    rep.set(verdict_key, pairs)
    rep.line("\t".join(f"{x}->{y}" for x, y in enumerate(f.assign)))
    return OK


def cmd_embed(args, rep):
    a, b = load_algebra(args.source), load_algebra(args.target)
    f = embeds(a, b)
    if f is not None:
        rep.figure(f"embed-{a.name}-into-{b.name}", b, highlight=f.assign,
                   annotations={y: a.labels[x] for x, y in enumerate(f.assign)})
    return _map_output(rep, f, "embedding")


def cmd_iso(args, rep):
    a, b = load_algebra(args.first), load_algebra(args.second)
    return _map_output(rep, is_isomorphic(a, b), "isomorphism")


def cmd_hom(args, rep):
    alg = load_algebra(args.algebra)
    rows = []
    for q in homomorphic_images(alg):
        rows.append({
            "generator": q.generator,
            "size": q.quotient.size,
            "si": q.quotient.size > 1 and is_si(q.quotient),
            "identified": identify(q.quotient),
            "projection": list(q.projection.assign),
        })
    rep.figure(f"{alg.name or 'algebra'}-quotients", alg)
    rep.set("quotients", rows)
    rep.line("generator\tsize\tsi\tidentified")
    for r in rows:
        rep.line(f"{r['generator']}\t{r['size']}\t{r['si']}\t{r['identified'] or '-'}")
    return OK


def cmd_variety(args, rep):
    w, p = load_algebra(args.member), load_algebra(args.generator)
    ok = in_generated_variety(w, p)
    rep.set("in_variety", ok)
    rep.line("true" if ok else "false")
    return OK if ok else FALSE


def cmd_jankov(args, rep):
    alg = load_algebra(args.algebra)
    f = jankov_formula(alg)
    rep.set("formula", str(f))
    rep.line(str(f))
    return OK


def _valuation_text(alg, v):
    return " ".join(f"{k}={alg.labels[x]}" for k, x in sorted(v.items()))


def cmd_valid(args, rep):
    alg = load_algebra(args.algebra)
    path = Path(args.formula)
    if path.is_file():
        axioms = load_axioms(path.read_text(encoding="utf-8"))
    else:
        axioms = [parse(args.formula)]
    budget = _budget(args)
    results = []
    for ax in axioms:
        cv = is_valid(alg, ax, budget)
        results.append({"formula": str(ax), "valid": cv is None, "countervaluation": cv})
        rep.line(f"{'valid' if cv is None else 'invalid'}\t{ax}" + ("" if cv is None else "\t" + _valuation_text(alg, cv)))
        if cv is not None:
            rep.figure(f"{alg.name or 'algebra'}-countermodel-{len(results)}", alg,
                       annotations=_annotations(cv))
    rep.set("results", results)
    return OK if all(r["valid"] for r in results) else FALSE


def _annotations(valuation):
    ann = {}
    for k, x in sorted(valuation.items()):
        ann[x] = f"{ann[x]},{k}" if x in ann else k
    return ann


def cmd_primitive(args, rep):
    path = Path(args.axioms)
    if not path.is_file():
        raise InvalidInput(f"axiom file {args.axioms!r} not found")
    axioms = load_axioms(path.read_text(encoding="utf-8"))
    verdict = decide_primitive(axioms, budget=_budget(args), jobs=args.jobs)
    rep.line(f"verdict\t{'primitive' if verdict.primitive else 'not primitive'}")
    table = {}
    for name, ref in verdict.refutations.items():
        p = catalog.lookup(name)
        if ref is None:
            table[name] = None
            rep.line(f"{name}\tmodel")
        else:
            table[name] = {"axiom": str(ref.axiom), "axiom_index": ref.axiom_index, "valuation": ref.valuation}
            rep.line(f"{name}\trefutes\t{ref.axiom}\t{_valuation_text(p, ref.valuation)}")
            rep.figure(f"primitive-{name}", p, annotations=_annotations(ref.valuation))
    if verdict.models:
        rep.line(f"models\t{' '.join(verdict.models)}")
        if len(verdict.models) == 5:
            rep.line("P1..P5 are all models")
    rep.set("primitive", verdict.primitive)
    rep.set("refutations", table)
    rep.set("models", verdict.models)
    return OK if verdict.primitive else FALSE


def cmd_signature(args, rep):
    alg = load_algebra(args.algebra)
    shape = projective_shape(alg) if alg.size > 1 else None
    rep.set("projective_shape", shape)
    if shape is None:
        rep.set("signature", None)
        rep.line("not projective-shaped")
        return FALSE
    rep.line("shape\t" + " ".join(shape))
    if shape[0] != "Z4":
        rep.set("signature", None)
        rep.line("signature\t- (head is Z2)")
        return FALSE
    sig = block_signature(alg)
    rep.set("signature", {"head": sig.head, "word": list(sig.word)})
    rep.line(f"signature\t{sig}")
    rep.figure(f"{alg.name or 'algebra'}-signature", alg, highlight=nodes(alg))
    return OK


def cmd_corpus(args, rep):
    algs = list(catalog.corpus(args.k))
    if args.sample is not None:
        rng = random.Random(args.seed)
        algs = sorted(rng.sample(algs, min(args.sample, len(algs))), key=lambda a: algs.index(a))
    if args.format == "json":
        # JSON lines: one document per algebra
        for a in algs:
            rep.out.write(documents.dumps(a) + "\n")
        rep.streamed = True
        return OK
    for a in algs:
        if args.format == "dot":
            rep.line(documents.to_dot(a).rstrip("\n"))
        else:
            rep.line(f"{a.name}\t{a.size}\t" + " ".join(f"{lo}<{hi}" for lo, hi in a.covers))
        rep.figure(a.name, a)
    return OK


def cmd_export_dot(args, rep):
    alg = load_algebra(args.algebra)
    rep.out.write(documents.to_dot(alg))
    rep.figure(alg.name or "algebra", alg)
    rep.streamed = True
    return OK


# --- argument parsing ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="valuation cap for validity checks")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--figures", metavar="DIR", help="also write Hasse diagram PNGs into DIR")

    parser = argparse.ArgumentParser(prog="heyting", description="Finite Heyting algebra workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg, kw in positional:
            p.add_argument(arg, **kw)
        p.set_defaults(func=func)
        return p

    add("show", cmd_show, ("algebra", {}), help="operation tables and classification")
    add("analyze", cmd_analyze, ("algebra", {}), help="structural summary")
    add("sum", cmd_sum, ("algebras", {"nargs": "+"}), help="coalesced sum")
    add("embed", cmd_embed, ("source", {}), ("target", {}), help="embedding witness or none")
    add("hom", cmd_hom, ("algebra", {}), help="all principal-filter quotients")
    add("iso", cmd_iso, ("first", {}), ("second", {}), help="isomorphism witness or none")
    add("variety", cmd_variety, ("member", {}), ("generator", {}), help="membership in V(generator)")
    add("jankov", cmd_jankov, ("algebra", {}), help="print the Jankov formula")
    add("valid", cmd_valid, ("algebra", {}), ("formula", {}), help="validity of a formula or axiom file")
    add("primitive", cmd_primitive, ("axioms", {}), help="primitivity verdict for an axiom file")
    add("signature", cmd_signature, ("algebra", {}), help="projective shape and block signature")
    p = add("corpus", cmd_corpus, ("k", {"type": int}), help="stream corpus algebras")
    p.add_argument("--sample", type=int, default=None, help="random sample of this many items (uses --seed)")
    add("export-dot", cmd_export_dot, ("algebra", {}), help="DOT digraph of the cover relation")
    return parser


DOT_COMMANDS = {"show", "sum", "corpus", "export-dot"}


def run(argv, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        old = sys.stderr
        sys.stderr = err
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    if args.format == "dot" and args.command not in DOT_COMMANDS:
        err.write(f"error: --format dot is not available for {args.command}\n")
        return INPUT_ERROR
    rep = Report(args, out)
    try:
        code = args.func(args, rep)
    except SearchBudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return BUDGET
    except (HeytingError, OSError, UnicodeDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return INPUT_ERROR
    rep.flush()
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
