"""Command-line entry point: ``recolor-lab <subcommand> ...``.

Every subcommand prints one JSON document (or raw graph text for ``emit``).
Exit codes: 0 success, 1 a must-pass campaign found counterexamples, 2 usage or
input error, 3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone

from . import verify
from .coloring import Coloring, chromatic_number, enumerate_colorings, optimal_coloring
from .errors import BudgetExhausted, NoPath, RecolorError, StateSpaceTooLarge
from .graph import FORMATS, Graph, blowup, emit_edge_list, emit_graph, emit_graph6, parse_graph, sibling
from .lifting import plan_recoloring
from .modules import clique_skeleton, is_prime, is_prime_eligible, maximal_module_partition, skeleton
from .patterns import NAMED_CLASSES, classify
from .reconfig import DEFAULT_PATH_BUDGET, census, find_path

SCHEMA_VERSION = 1
MEM_ENV = "RECOLOR_MEM_BUDGET"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    format: str = "edge-list"
    k_range: tuple[int, int] | None = None
    seed: int | None = None
    jobs: int = 1
    mem_budget: int | None = None
    out: str | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        cfg = cls(args.command, format=args.format, seed=args.seed, out=args.out,
                  jobs=args.jobs if args.jobs is not None else verify.default_jobs(),
                  mem_budget=args.mem_budget)
        for name in ("input", "from_file", "to_file"):
            if getattr(args, name, None):
                cfg.inputs.append(getattr(args, name))
        if cfg.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if cfg.mem_budget is not None and cfg.mem_budget < 1:
            raise UsageError("--mem-budget must be positive")
        k = getattr(args, "k", None)
        rng = getattr(args, "range", None)
        if k is not None:
            cfg.k_range = (k, k)
        elif rng is not None:
            try:
                lo, hi = (int(x) for x in rng.split(":"))
            except ValueError:
                raise UsageError(f"--range expects lo:hi, got {rng!r}") from None
            cfg.k_range = (lo, hi)
        if cfg.k_range is not None and not 1 <= cfg.k_range[0] <= cfg.k_range[1]:
            raise UsageError(f"invalid palette bounds {cfg.k_range}")
        return cfg


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(args) -> Graph:
    if not args.input:
        raise UsageError("--input is required")
    return parse_graph(_read(args.input), args.format)


def _load_coloring(path: str, k: int) -> Coloring:
    text = _read(path).strip()
    try:
        values = json.loads(text) if text.startswith("[") else [int(x) for x in text.split()]
    except ValueError:
        raise UsageError(f"{path}: expected a JSON array or whitespace-separated colors") from None
    return Coloring(tuple(values), k)


def _schedule_json(sched) -> dict:
    return {"start": sched.start.to_json(), "steps": [list(s) for s in sched.steps], "length": len(sched.steps)}


# -- subcommands --------------------------------------------------------------------

def cmd_parse(args, cfg):
    g = _load_graph(args)
    return {"graph": emit_edge_list(g), "n": g.n, "m": g.m, "graph6": emit_graph6(g) if g.n <= 62 else None}


def cmd_emit(args, cfg):
    g = _load_graph(args)
    return emit_graph(g, args.to)


def cmd_decompose(args, cfg):
    g = _load_graph(args)
    if not is_prime_eligible(g):
        raise UsageError("graph is disconnected or a join; decompose its components first")
    cs = clique_skeleton(g)
    return {
        "graph": emit_edge_list(g),
        "blocks": cs.source_blocks.to_json(),
        "skeleton": emit_edge_list(cs.skeleton),
        "clique_skeleton": emit_edge_list(cs.host),
        "sizes": list(cs.sizes),
    }


def cmd_prime(args, cfg):
    g = _load_graph(args)
    out = {"graph": emit_edge_list(g), "prime": is_prime(g), "eligible": is_prime_eligible(g)}
    if g.n > 2 and out["eligible"]:
        out["blocks"] = maximal_module_partition(g).to_json()
    return out


def cmd_skeleton(args, cfg):
    g = _load_graph(args)
    sk, reps = skeleton(g)
    return {"graph": emit_edge_list(g), "skeleton": emit_edge_list(sk), "representatives": list(reps)}


def cmd_clique_skeleton(args, cfg):
    g = _load_graph(args)
    cs = clique_skeleton(g)
    return {"graph": emit_edge_list(g), "host": emit_edge_list(cs.host), "sizes": list(cs.sizes),
            "cliques": [sorted(q) for q in cs.cliques]}


def cmd_blowup(args, cfg):
    g = _load_graph(args)
    try:
        sizes = [int(x) for x in args.sizes.split(",")]
    except ValueError:
        raise UsageError("--sizes expects comma-separated integers") from None
    return {"graph": emit_edge_list(g), "sizes": sizes, "blowup": emit_edge_list(blowup(g, sizes))}


def cmd_sibling(args, cfg):
    g = _load_graph(args)
    return {"graph": emit_edge_list(g), "sibling": emit_edge_list(sibling(g))}


def cmd_classify(args, cfg):
    g = _load_graph(args)
    return {"graph": emit_edge_list(g), **classify(g)}


def cmd_chi(args, cfg):
    g = _load_graph(args)
    return {"graph": emit_edge_list(g), "chi": chromatic_number(g), "coloring": optimal_coloring(g).to_json()}


def cmd_enumerate(args, cfg):
    g = _load_graph(args)
    out = []
    for c in enumerate_colorings(g, args.k):
        if args.limit is not None and len(out) >= args.limit:
            break
        out.append(c.to_json())
    return {"graph": emit_edge_list(g), "k": args.k, "colorings": out, "truncated": args.limit is not None
            and len(out) >= args.limit}


def cmd_mixing(args, cfg):
    g = _load_graph(args)
    if cfg.k_range is None:
        raise UsageError("mixing needs --k or --range")
    reports = [census(g, k).to_json() for k in range(cfg.k_range[0], cfg.k_range[1] + 1)]
    out = {"graph": emit_edge_list(g), "chi": chromatic_number(g)}
    if args.k is not None:
        out.update(reports[0])
    else:
        out["reports"] = reports
    return out


def cmd_path(args, cfg):
    g = _load_graph(args)
    a, b = _load_coloring(args.from_file, args.k), _load_coloring(args.to_file, args.k)
    sched = find_path(g, args.k, a, b, budget=args.budget)
    out = {"graph": emit_edge_list(g), "k": args.k, "found": sched is not None}
    out["schedule"] = _schedule_json(sched) if sched is not None else None
    return out


def cmd_plan(args, cfg):
    g = _load_graph(args)
    a, b = _load_coloring(args.from_file, args.ell), _load_coloring(args.to_file, args.ell)
    out = {"graph": emit_edge_list(g), "ell": args.ell}
    try:
        sched, trace = plan_recoloring(g, args.ell, a, b, budget=args.budget)
    except NoPath as exc:
        out.update(found=False, certified=exc.certified, reason=str(exc))
        if args.trace and exc.trace is not None:
            out["trace"] = exc.trace.to_json()
        return out
    out.update(found=True, schedule=_schedule_json(sched))
    if args.trace:
        out["trace"] = trace.to_json()
    return out


def cmd_verify(args, cfg):
    campaign = args.campaign
    jobs = cfg.jobs
    if campaign == "class":
        if args.cls not in NAMED_CLASSES:
            raise UsageError(f"--class must be one of {sorted(NAMED_CLASSES)}")
        spec = NAMED_CLASSES[args.cls]
        corpus = None
        if args.random is not None:
            if cfg.seed is None:
                raise UsageError("--seed is mandatory with --random")
            corpus = verify.random_class_corpus(spec, args.n_max or 8, args.random, cfg.seed)
        report = verify.campaign_class_recolorable(spec, args.n_max or 6, args.ell_extra or 2, jobs, corpus)
    elif campaign == "skeleton":
        report = verify.campaign_skeleton_equivalence(args.n_max or 6, args.ell_extra or 2, jobs)
    elif campaign == "sibling":
        report = verify.campaign_sibling(args.n_max or 5, args.k or 4, seed=cfg.seed or 0, jobs=jobs)
    elif campaign == "hereditary":
        report = verify.campaign_hereditary_reduction(args.kind, args.n_max or 6, args.ell_extra or 2, jobs)
    elif campaign == "conjecture":
        report = verify.campaign_conjecture(args.n_max or 5, args.mult_max, args.ell_extra or 1, jobs)
    elif campaign == "structure":
        report = verify.campaign_structure_theorems(args.n_max or 8)
    else:
        report = verify.figure2_reproduction()
    return report.to_json() | {"campaign": campaign}, report.failed_gate


COMMANDS = {
    "parse": cmd_parse,
    "emit": cmd_emit,
    "decompose": cmd_decompose,
    "prime": cmd_prime,
    "skeleton": cmd_skeleton,
    "clique-skeleton": cmd_clique_skeleton,
    "blowup": cmd_blowup,
    "sibling": cmd_sibling,
    "classify": cmd_classify,
    "chi": cmd_chi,
    "enumerate": cmd_enumerate,
    "mixing": cmd_mixing,
    "path": cmd_path,
    "plan": cmd_plan,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", "-i")
    common.add_argument("--format", choices=FORMATS, default="edge-list")
    common.add_argument("--out", "-o")
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--mem-budget", type=int, help=f"census guard (overrides {MEM_ENV})")
    parser = _Parser(prog="recolor-lab", description="Coloring reconfiguration toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "emit":
            p.add_argument("--to", choices=FORMATS, default="graph6")
        elif name == "blowup":
            p.add_argument("--sizes", required=True)
        elif name == "enumerate":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--limit", type=int)
        elif name == "mixing":
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--k", type=int)
            group.add_argument("--range")
        elif name in ("path", "plan"):
            p.add_argument("--k" if name == "path" else "--ell", type=int, required=True)
            p.add_argument("--from", dest="from_file", required=True)
            p.add_argument("--to", dest="to_file", required=True)
            p.add_argument("--budget", type=int, default=DEFAULT_PATH_BUDGET)
            if name == "plan":
                p.add_argument("--trace", action="store_true")
        elif name == "verify":
            p.add_argument("campaign",
                           choices=["class", "skeleton", "sibling", "hereditary", "conjecture", "figure2",
                                    "structure"])
            p.add_argument("--n-max", type=int)
            p.add_argument("--ell-extra", type=int)
            p.add_argument("--class", dest="cls", default="p5-diamond")
            p.add_argument("--random", type=int, help="sample this many random class members (needs --seed)")
            p.add_argument("--kind", default="diamond", help="hereditary campaign class: 2K2 or diamond")
            p.add_argument("--mult-max", type=int, default=2)
            p.add_argument("--k", type=int)
    return parser


def _emit(doc, cfg: RunConfig, started: float) -> None:
    if isinstance(doc, str):
        text = doc
    else:
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.subcommand, **doc}
        doc["meta"] = {"timestamp": datetime.now(timezone.utc).isoformat(), "elapsed": time.perf_counter() - started}
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig.from_args(args)
        if cfg.mem_budget is not None:
            os.environ[MEM_ENV] = str(cfg.mem_budget)
        result = COMMANDS[args.command](args, cfg)
        failed = False
        if isinstance(result, tuple):
            result, failed = result
        _emit(result, cfg, started)
        return 1 if failed else 0
    except (StateSpaceTooLarge, BudgetExhausted) as exc:
        print(f"recolor-lab: resource guard: {exc}", file=sys.stderr)
        return 3
    except (UsageError, RecolorError, ValueError) as exc:
        print(f"recolor-lab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
