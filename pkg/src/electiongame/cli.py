"""Command-line front end: ``electiongame <command> INSTANCE [options]``.

INSTANCE is a JSON instance file or a ``fixtures:<name>`` reference.
Errors go to stderr as a one-line JSON object and exit with status 2.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import fixtures
from . import instance_io as io
from .coalition import CoalitionStructure, coalition_incentive_delta, secce_transform
from .efficiency import check_poa_bound, price_of_anarchy
from .equilibria import approx_ratio, approx_ratio_all_first, deviation_graph, enumerate_psne
from .errors import ElectionGameError
from .fpt import fpt_psne
from .generate import MODES, GeneratorConfig, ensemble, generate
from .model import is_egoistic, is_strongly_egoistic
from .satgadget import CnfFormula, build_gadget, compare_with_sat, parse_dimacs
from .wp import available, check_monotone, get_wp


def fmt(s):
    return "(" + ",".join(map(str, s)) + ")"


def parse_profile(text):
    return tuple(int(x) for x in text.strip("() ").split(","))


def _wp_for(args, g):
    if args.wp == "gadget":
        meta = (g.metadata or {}).get("formula")
        if not meta:
            raise ElectionGameError("--wp gadget needs an instance built by reduce-sat")
        return get_wp("gadget", formula=CnfFormula.of(meta["num_vars"], meta["clauses"]))
    return get_wp(args.wp)


def _load(args):
    g = io.load(args.instance, normalize=args.normalize)
    return g, _wp_for(args, g) if hasattr(args, "wp") else None


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def cmd_validate(args):
    g, _ = _load(args)
    _emit(args, {"ok": True, "m": g.m, "sizes": list(g.sizes)},
          f"ok: {g.m} parties, candidates {list(g.sizes)}, beta {g.beta:g}")


def cmd_info(args):
    g, wp = _load(args)
    ego, strong = is_egoistic(g), is_strongly_egoistic(g)
    mono = check_monotone(g, wp, seed=args.seed)
    info = {
        "m": g.m, "sizes": list(g.sizes), "beta": g.beta, "profiles": g.num_profiles,
        "egoistic": ego.ok, "egoistic_witness": ego.witness,
        "strongly_egoistic": strong.ok, "strongly_egoistic_witness": strong.witness,
        "wp": wp.name, "monotone": mono.ok, "monotone_witness": mono.witness,
    }
    lines = [f"parties: {g.m}  candidates: {list(g.sizes)}  beta: {g.beta:g}",
             f"egoistic: {ego.ok}" + ("" if ego.ok else f"  witness {ego.witness}"),
             f"strongly egoistic: {strong.ok}" + ("" if strong.ok else f"  witness {strong.witness}"),
             f"{wp.name} monotone: {mono.ok}" + ("" if mono.ok else f"  witness {mono.witness}")]
    _emit(args, info, "\n".join(lines))


def cmd_psne(args):
    g, wp = _load(args)
    if args.method == "fpt":
        res = fpt_psne(g, wp, refine=not args.no_refine)
        payload = {"method": "fpt", "profile": res.profile, "k": res.reduced.k,
                   "reduced_sets": res.reduced.reduced_sets,
                   "payoff_evaluations": res.payoff_evaluations}
        text = fmt(res.profile) if res.found else "no PSNE"
    else:
        eqs = enumerate_psne(g, wp, args.tau, cap=args.cap)
        payload = {"method": "brute", "tau": args.tau, "psne": eqs}
        text = "\n".join(fmt(s) for s in eqs) if eqs else "no PSNE"
    _emit(args, payload, text)


def cmd_approx(args):
    g, wp = _load(args)
    rep = approx_ratio(g, wp, parse_profile(args.profile)) if args.profile \
        else approx_ratio_all_first(g, wp)
    payload = {"profile": rep.profile, "alpha": rep.alpha, "witness": rep.witness,
               "unbounded": rep.unbounded}
    _emit(args, payload, f"{fmt(rep.profile)} is a {rep.alpha:.6f}-approximate PSNE"
          + (f" (worst deviation {rep.witness})" if rep.witness else ""))


def cmd_poa(args):
    g, wp = _load(args)
    rep = price_of_anarchy(g, wp, args.tau, cap=args.cap)
    row = rep.as_row()
    if args.csv:
        w = csv.DictWriter(sys.stdout, fieldnames=list(row))
        w.writeheader()
        w.writerow(row)
        return
    if rep.poa is None:
        text = f"optimum {row['optimal_profile']} SW {rep.optimal_sw:.6f}; no PSNE, PoA undefined"
    else:
        text = (f"optimum {row['optimal_profile']} SW {rep.optimal_sw:.6f}\n"
                f"worst PSNE {row['worst_psne']} SW {rep.worst_sw:.6f}\n"
                f"best PSNE {row['best_psne']} SW {rep.best_sw:.6f}\n"
                f"PoA {rep.poa:.6f}  PoS {rep.pos:.6f}")
        if is_egoistic(g):
            text += f"\nPoA <= m: {bool(check_poa_bound(g, wp, args.tau, cap=args.cap))}"
    _emit(args, row, text)


def cmd_graph(args):
    g, wp = _load(args)
    graph = deviation_graph(g, wp, args.tau, args.best_response_only, cap=args.cap)
    if args.dot:
        Path(args.dot).write_text(graph.to_dot())
    cycle = graph.find_cycle()
    payload = {"nodes": len(graph.nodes), "edges": len(graph.edges),
               "sinks": graph.sinks(), "cycle": cycle}
    text = (f"{len(graph.nodes)} profiles, {len(graph.edges)} improving moves\n"
            f"sinks: {', '.join(map(fmt, graph.sinks())) or 'none'}\n"
            f"cycle: {' -> '.join(map(fmt, cycle)) if cycle else 'none'}")
    _emit(args, payload, text)


def cmd_coalitions(args):
    g, wp = _load(args)
    cs = CoalitionStructure.parse(args.coalitions, g.m)
    cg = secce_transform(g, cs)
    ego = is_egoistic(cg.instance)
    payload = {"coalitions": str(cs), "beta": cg.instance.beta, "egoistic": ego.ok,
               "instance": io.to_document(cg.instance)}
    lines = [f"coalitions {cs}: {cg.instance.m} players, beta {cg.instance.beta:g}, "
             f"egoistic {ego.ok}"]
    if args.member is not None:
        choices = [parse_profile(c) for c in args.choices.split("|")] if args.choices \
            else [(1,) * len(b) for b in cs.blocks]
        delta = coalition_incentive_delta(g, cs, wp, args.member, choices)
        payload["delta"] = delta
        lines.append(f"party {args.member} leaving changes its payoff by {delta:+.6f}")
    if args.out:
        io.store(cg.instance, args.out)
    _emit(args, payload, "\n".join(lines))


def cmd_reduce_sat(args):
    f = parse_dimacs(Path(args.cnf).read_text())
    gg = build_gadget(f, args.epsilon)
    if args.out:
        io.store(gg.instance, args.out)
    cmp = compare_with_sat([(args.cnf, f)], args.epsilon)
    row = cmp.rows[0]
    payload = {"satisfiable": row.satisfiable, "psne": row.psne, "agree": row.agree,
               "findings": cmp.findings}
    text = (f"satisfiable: {row.satisfiable}\n"
            f"PSNE exists: {row.psne_exists}" + (f" {fmt(row.psne[0])}" if row.psne else "")
            + f"\nagree: {row.agree}" + (f"\nfinding: {row.witness}" if row.witness else ""))
    _emit(args, payload, text)


def cmd_generate(args):
    cfg = GeneratorConfig(m=args.m, n=args.n, beta=args.beta, mode=args.mode, seed=args.seed)
    text = io.render(generate(cfg))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_ensemble(args):
    wp = get_wp(args.wp)
    w = csv.writer(sys.stdout)
    w.writerow(["index", "seed", "m", "sizes", "num_psne", "fpt_profile",
                "poa", "alpha_all_first"])
    for k, (cfg, g) in enumerate(ensemble(args.count, args.seed, (2, args.max_m),
                                          (2, args.max_n), args.mode, args.beta)):
        rep = price_of_anarchy(g, wp)
        fpt = fpt_psne(g, wp) if is_egoistic(g) else None
        w.writerow([k, cfg.seed, g.m, " ".join(map(str, g.sizes)), rep.num_psne,
                    fmt(fpt.profile) if fpt and fpt.found else "",
                    "" if rep.poa is None else repr(rep.poa),
                    repr(approx_ratio_all_first(g, wp).alpha)])


def cmd_fixtures(args):
    if args.action == "list":
        print("\n".join(fixtures.names()))
        return
    sys.stdout.write(io.render(fixtures.get(args.name)))


def build_parser():
    p = argparse.ArgumentParser(prog="electiongame", description="Election game analysis.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, wp=True, instance=True):
        sp = sub.add_parser(name, help=help)
        if instance:
            sp.add_argument("instance", help="instance file or fixtures:<name>")
            sp.add_argument("--normalize", action="store_true",
                            help="sort candidates instead of rejecting unsorted input")
        if wp:
            sp.add_argument("--wp", default="hardmax", choices=available(),
                            help="winning-probability function")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check an instance", wp=False)
    sp = add("info", cmd_info, "egoism and monotonicity report")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("psne", cmd_psne, "pure Nash equilibria")
    sp.add_argument("--method", choices=("brute", "fpt"), default="brute")
    sp.add_argument("--tau", type=float, default=0.0)
    sp.add_argument("--no-refine", action="store_true", help="fpt: skip chain refinement")
    sp.add_argument("--cap", type=int, default=10**7)

    sp = add("approx-check", cmd_approx, "approximation ratio of a profile")
    sp.add_argument("--profile", help="e.g. 1,2,1 (default: all first candidates)")

    sp = add("poa", cmd_poa, "price of anarchy and stability")
    sp.add_argument("--tau", type=float, default=0.0)
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--cap", type=int, default=10**7)

    sp = add("deviation-graph", cmd_graph, "improving-move graph")
    sp.add_argument("--dot", help="write DOT to this path")
    sp.add_argument("--tau", type=float, default=0.0)
    sp.add_argument("--best-response-only", action="store_true")
    sp.add_argument("--cap", type=int, default=10**6)

    sp = add("coalitions", cmd_coalitions, "coalition transform and leave incentive")
    sp.add_argument("--coalitions", required=True, help='blocks like "1,2|3"')
    sp.add_argument("--member", type=int, help="party whose leave incentive is reported")
    sp.add_argument("--choices", help='member candidates per block, e.g. "1,2|1"')
    sp.add_argument("--out", help="write the transformed instance here")

    sp = add("reduce-sat", cmd_reduce_sat, "build the SAT gadget game", wp=False, instance=False)
    sp.add_argument("--cnf", required=True, help="DIMACS CNF file")
    sp.add_argument("--epsilon", type=float, default=0.5)
    sp.add_argument("--out", help="write the gadget instance here")

    sp = add("generate", cmd_generate, "random instance", wp=False, instance=False)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--beta", type=float, default=100.0)
    sp.add_argument("--mode", choices=MODES, default="egoistic")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("ensemble", cmd_ensemble, "CSV summary over random instances", instance=False)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-m", type=int, default=4)
    sp.add_argument("--max-n", type=int, default=3)
    sp.add_argument("--beta", type=float, default=100.0)
    sp.add_argument("--mode", choices=MODES, default="egoistic")

    sp = sub.add_parser("fixtures", help="built-in instances")
    sp.add_argument("action", choices=("list", "emit"))
    sp.add_argument("name", nargs="?", default="table1")
    sp.set_defaults(fn=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except ElectionGameError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 2
    except (OSError, ValueError, TypeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
