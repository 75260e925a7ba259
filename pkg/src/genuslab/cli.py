"""Command-line front end.

Subcommands mirror the library: minimize, equivalent, gen, girth, bounds,
planar, genus, verify-embedding, verify-emulator, emulate-search, lift,
decide, fixtures, report.  Text formats ride stdin/stdout so the commands
pipe; ``--json`` switches both directions.

Exit codes: 0 success, 1 negative decision (nonplanar, inequivalent, invalid
witness, search exhausted), 2 usage or format error, 3 budget exhausted with
an inexact result.  GENUSLAB_BUDGET_NODES sets the default node budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from genuslab import bounds as bounds_mod
from genuslab import report as report_mod
from genuslab.decide import decide_genus, format_report, report_to_dict
from genuslab.dfa import (
    Dfa,
    dfa_from_json,
    dfa_to_json,
    equivalent,
    format_dfa,
    minimize,
    parse_dfa,
)
from genuslab.embedding import (
    SearchBudget,
    format_witness,
    genus_exact,
    parse_witness,
    planar,
    verify_witness,
    witness_from_json,
    witness_to_json,
)
from genuslab.emulator import (
    emulator_from_json,
    emulator_to_json,
    format_emulator,
    lift_to_automaton,
    parse_emulator,
    search_min_genus_emulator,
    verify_emulator,
)
from genuslab.errors import FormatError, GenusLabError
from genuslab.families import generate
from genuslab.fixtures import build_fixtures
from genuslab.graphs import (
    Multigraph,
    digraph_from_json,
    digraph_multigraph,
    girth,
    multigraph_from_json,
    parse_digraph,
    parse_multigraph,
    simplify,
    underlying_multigraph,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_BUDGET_ENV = "GENUSLAB_BUDGET_NODES"


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path: str | None, content: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(content)
    else:
        Path(path).write_text(content)


def _sniff_kind(text: str, json_mode: bool) -> str:
    """Classify input as 'dfa', 'multigraph' or 'digraph'."""
    if json_mode:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON input: {exc}") from exc
        if isinstance(obj, dict):
            if "alphabet" in obj:
                return "dfa"
            if "edges" in obj:
                return "multigraph"
            if "arcs" in obj:
                return "digraph"
        raise FormatError("JSON input is neither a DFA nor a graph")
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.partition(":")[0].strip()
        if key in ("alphabet", "states", "initial", "final", "trans"):
            return "dfa"
        if key == "vertices":
            return "multigraph"
        break
    raise FormatError("cannot tell whether the input is a DFA or a graph")


def _load_dfa(text: str, json_mode: bool) -> Dfa:
    return dfa_from_json(text) if json_mode else parse_dfa(text)


def _load_multigraph_like(text: str, json_mode: bool) -> Multigraph:
    kind = _sniff_kind(text, json_mode)
    if kind == "dfa":
        return underlying_multigraph(_load_dfa(text, json_mode))
    if kind == "digraph":  # JSON only; arc-only text parses as a multigraph
        return digraph_multigraph(digraph_from_json(text))
    if json_mode:
        return multigraph_from_json(text)
    return parse_multigraph(text)


def _load_digraph_like(text: str, json_mode: bool):
    kind = _sniff_kind(text, json_mode)
    if kind == "dfa":
        return simplify(underlying_multigraph(_load_dfa(text, json_mode)))
    if kind == "multigraph":
        g = multigraph_from_json(text) if json_mode else parse_multigraph(text)
        return simplify(g)
    if json_mode:
        return digraph_from_json(text)
    return parse_digraph(text)


def _budget(args) -> SearchBudget:
    nodes = getattr(args, "budget_nodes", None)
    if nodes is None:
        env = os.environ.get(DEFAULT_BUDGET_ENV)
        nodes = int(env) if env else SearchBudget().max_nodes
    if nodes <= 0:
        raise GenusLabError("budgets must be positive")
    ms = getattr(args, "budget_ms", None)
    if ms is not None and ms <= 0:
        raise GenusLabError("budgets must be positive")
    return SearchBudget(max_nodes=nodes, max_ms=ms)


# -- subcommand handlers -------------------------------------------------------


def _cmd_minimize(args) -> int:
    a = minimize(_load_dfa(_read(args.input), args.json))
    _write(args.output, dfa_to_json(a) if args.json else format_dfa(a))
    return EXIT_OK


def _cmd_equivalent(args) -> int:
    a = _load_dfa(_read(args.a), args.json)
    b = _load_dfa(_read(args.b), args.json)
    same = equivalent(a, b)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_NEGATIVE


def _cmd_gen(args) -> int:
    family = args.family
    p = args.params
    try:
        if family == "zmod":
            sub = [int(x) for x in p[1].split(",")] if len(p) > 1 else None
            a = generate("zmod", (int(p[0]), sub))
        elif family == "zmod-product":
            moduli = [int(x) for x in p[0].split(",")]
            gens = [tuple(int(x) for x in w.split(",")) for w in p[1:]]
            a = generate("zmod-product", (moduli, gens))
        elif family == "shuffle":
            a = generate("shuffle", (int(p[0]), int(p[1])))
        elif family == "two-letter-hierarchy":
            a = generate("two-letter-hierarchy", (int(p[0]),))
        elif family == "cascade":
            a = generate("cascade", (int(p[0]),))
        else:
            raise GenusLabError(f"unknown family {family!r}")
    except (IndexError, ValueError) as exc:
        raise GenusLabError(f"bad parameters for family {family!r}: {exc}") from exc
    _write(args.output, dfa_to_json(a) if args.json else format_dfa(a))
    return EXIT_OK


def _cmd_girth(args) -> int:
    g = girth(_load_multigraph_like(_read(args.input), args.json))
    print("inf" if g == float("inf") else int(g))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    j = args.girth if args.girth is not None else bounds_mod.rho(args.m)
    lower = bounds_mod.genus_lower_bound(args.m, j, args.n)
    upper = bounds_mod.genus_upper_bound(args.m, args.n)
    if args.json:
        print(
            json.dumps(
                {
                    "m": args.m,
                    "n": args.n,
                    "girth_threshold": j,
                    "lower": str(lower),
                    "upper": str(upper),
                },
                indent=2,
            )
        )
    else:
        print(f"m: {args.m}")
        print(f"n: {args.n}")
        print(f"girth_threshold: {j}")
        print(f"lower: {lower}")
        print(f"upper: {upper}")
    return EXIT_OK


def _cmd_planar(args) -> int:
    g = _load_multigraph_like(_read(args.input), args.json)
    ok, witness = planar(g)
    print("planar" if ok else "nonplanar")
    if ok and args.emit_witness:
        _write(args.emit_witness, witness_to_json(witness) if args.json else format_witness(witness))
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_genus(args) -> int:
    g = _load_multigraph_like(_read(args.input), args.json)
    interval = genus_exact(g, _budget(args))
    if args.json:
        print(
            json.dumps(
                {
                    "lower": interval.lower,
                    "upper": interval.upper,
                    "exact": interval.exact,
                    "budget_exhausted": interval.budget_exhausted,
                    "nodes_used": interval.nodes_used,
                },
                indent=2,
            )
        )
    else:
        if interval.exact:
            print(f"genus: {interval.upper} (exact)")
        else:
            print(f"genus: in [{interval.lower}, {interval.upper}] (not exact)")
        print(f"nodes_used: {interval.nodes_used}")
    if args.emit_witness and interval.witness is not None:
        _write(
            args.emit_witness,
            witness_to_json(interval.witness) if args.json else format_witness(interval.witness),
        )
    return EXIT_OK if interval.exact else EXIT_BUDGET


def _cmd_verify_embedding(args) -> int:
    text = _read(args.input)
    w = witness_from_json(text) if args.json else parse_witness(text)
    ok, why = verify_witness(w)
    print("valid embedding witness" if ok else f"invalid: {why}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_verify_emulator(args) -> int:
    text = _read(args.input)
    m = emulator_from_json(text) if args.json else parse_emulator(text)
    ok, why = verify_emulator(m)
    print("valid emulator" if ok else f"invalid: {why}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_emulate_search(args) -> int:
    base = _load_digraph_like(_read(args.input), args.json)
    result = search_min_genus_emulator(
        base,
        max_size=args.max_size,
        target_genus=args.genus,
        budget=_budget(args),
        min_size=args.min_size,
    )
    if result.found is not None:
        em, witness = result.found
        print(f"found: total size {em.total.num_vertices}, genus {witness.genus}")
        print(f"nodes_used: {result.nodes_used}")
        if args.emit_witness:
            outdir = Path(args.emit_witness)
            outdir.mkdir(parents=True, exist_ok=True)
            if args.json:
                (outdir / "emulator.json").write_text(emulator_to_json(em))
                (outdir / "embedding.json").write_text(witness_to_json(witness))
            else:
                (outdir / "emulator.emu").write_text(format_emulator(em))
                (outdir / "embedding.wit").write_text(format_witness(witness))
        return EXIT_OK
    if result.budget_exhausted:
        print(f"budget exhausted after {result.nodes_used} nodes; "
              f"sizes exhausted: {list(result.sizes_exhausted)}")
        return EXIT_BUDGET
    print(f"none: no emulator of genus <= {args.genus} up to size {args.max_size}")
    print(f"nodes_used: {result.nodes_used}")
    return EXIT_NEGATIVE


def _cmd_lift(args) -> int:
    em_text = _read(args.emulator)
    em = emulator_from_json(em_text) if args.json else parse_emulator(em_text)
    a = _load_dfa(_read(args.dfa), args.json)
    lifted = lift_to_automaton(em, a)
    _write(args.output, dfa_to_json(lifted) if args.json else format_dfa(lifted))
    return EXIT_OK


def _cmd_decide(args) -> int:
    a = _load_dfa(_read(args.input), args.json)
    report = decide_genus(a, _budget(args))
    if args.json:
        print(json.dumps(report_to_dict(report), indent=2))
    else:
        sys.stdout.write(format_report(report))
    if args.emit_witness and report.exact and report.witness_dfa is not None:
        outdir = Path(args.emit_witness)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.json:
            (outdir / "witness.json").write_text(dfa_to_json(report.witness_dfa))
            (outdir / "emulator.json").write_text(emulator_to_json(report.witness_emulator))
            (outdir / "embedding.json").write_text(witness_to_json(report.witness_embedding))
        else:
            (outdir / "witness.dfa").write_text(format_dfa(report.witness_dfa))
            (outdir / "emulator.emu").write_text(format_emulator(report.witness_emulator))
            (outdir / "embedding.wit").write_text(format_witness(report.witness_embedding))
    return EXIT_OK if report.exact else EXIT_BUDGET


def _cmd_fixtures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, content in sorted(build_fixtures().items()):
        (outdir / name).write_text(content)
        print(outdir / name)
    return EXIT_OK


def _cmd_report(args) -> int:
    if args.kind == "hierarchy":
        paths = report_mod.hierarchy_report(args.k_min, args.k_max, args.out)
    elif args.kind == "bounds":
        paths = report_mod.bounds_report(args.m, args.n_max, args.out, args.girth)
    else:
        paths = report_mod.census_report(args.k, args.samples, args.seed, args.out)
    for p in paths:
        print(p)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="genuslab",
        description="Genus of regular languages: minimization, exact graph genus, "
        "emulator search, decision procedure.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="read and write JSON formats")

    def add_budget(p):
        p.add_argument("--budget-nodes", type=int, default=None,
                       help=f"search node budget (default from ${DEFAULT_BUDGET_ENV})")
        p.add_argument("--budget-ms", type=int, default=None, help="wall-clock budget")

    p = sub.add_parser("minimize", help="minimal automaton of the input DFA")
    p.add_argument("input", nargs="?", help="DFA file (default stdin)")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    add_json(p)
    p.set_defaults(func=_cmd_minimize)

    p = sub.add_parser("equivalent", help="language equality of two DFAs")
    p.add_argument("a")
    p.add_argument("b")
    add_json(p)
    p.set_defaults(func=_cmd_equivalent)

    p = sub.add_parser("gen", help="generate a family automaton")
    p.add_argument("family",
                   choices=["zmod", "zmod-product", "shuffle", "two-letter-hierarchy", "cascade"])
    p.add_argument("params", nargs="*", help="family parameters, e.g. `zmod 5 0,1,2`")
    p.add_argument("-o", "--output")
    add_json(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("girth", help="shortest simple cycle of a graph or automaton")
    p.add_argument("input", nargs="?")
    add_json(p)
    p.set_defaults(func=_cmd_girth)

    p = sub.add_parser("bounds", help="closed-form genus bounds")
    p.add_argument("--m", type=int, required=True, help="alphabet size")
    p.add_argument("--n", type=int, required=True, help="state count")
    p.add_argument("--girth", type=int, default=None,
                   help="certified girth threshold j (default rho(m))")
    add_json(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("planar", help="planarity of a graph or automaton")
    p.add_argument("input", nargs="?")
    p.add_argument("--emit-witness", metavar="PATH", help="write the genus-0 rotation witness")
    add_json(p)
    p.set_defaults(func=_cmd_planar)

    p = sub.add_parser("genus", help="exact genus of a graph or automaton")
    p.add_argument("input", nargs="?")
    p.add_argument("--emit-witness", metavar="PATH")
    add_budget(p)
    add_json(p)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("verify-embedding", help="re-check an embedding witness file")
    p.add_argument("input")
    add_json(p)
    p.set_defaults(func=_cmd_verify_embedding)

    p = sub.add_parser("verify-emulator", help="check an emulator file's covering condition")
    p.add_argument("input")
    add_json(p)
    p.set_defaults(func=_cmd_verify_emulator)

    p = sub.add_parser("emulate-search", help="search tight emulators up to a size and genus")
    p.add_argument("input", nargs="?", help="digraph or DFA (default stdin)")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--min-size", type=int, default=None)
    p.add_argument("--genus", type=int, default=0, help="target genus (default 0)")
    p.add_argument("--emit-witness", metavar="DIR")
    add_budget(p)
    add_json(p)
    p.set_defaults(func=_cmd_emulate_search)

    p = sub.add_parser("lift", help="label an emulator into a DFA over a minimal automaton")
    p.add_argument("emulator", help="emulator file")
    p.add_argument("dfa", help="minimal DFA file")
    p.add_argument("-o", "--output")
    add_json(p)
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("decide", help="genus and topological size of a language")
    p.add_argument("input", nargs="?")
    p.add_argument("--emit-witness", metavar="DIR")
    add_budget(p)
    add_json(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("fixtures", help="emit the bundled example files")
    p.add_argument("outdir")
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser("report", help="CSV tables with matplotlib figures")
    rsub = p.add_subparsers(dest="kind", required=True)
    rp = rsub.add_parser("hierarchy", help="genus growth of the modular-sum hierarchy")
    rp.add_argument("--k-min", type=int, default=4)
    rp.add_argument("--k-max", type=int, default=20)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=_cmd_report)
    rp = rsub.add_parser("bounds", help="lower/upper estimates as states grow")
    rp.add_argument("--m", type=int, required=True)
    rp.add_argument("--n-max", type=int, default=60)
    rp.add_argument("--girth", type=int, default=None)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=_cmd_report)
    rp = rsub.add_parser("census", help="face censuses of random embeddings")
    rp.add_argument("--k", type=int, default=4)
    rp.add_argument("--samples", type=int, default=50)
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=_cmd_report)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenusLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
