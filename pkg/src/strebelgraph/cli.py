"""Command-line front end: ``strebelgraph build|analyze|threepole|check``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .constructors import build, build_three_pole
from .formats import load_metric_graph, to_dot, write_atomic
from .metric import as_fraction, fraction_str, residue_vector, strebel_admissible, zero_partition
from .numeric import POLES, classify_crosscheck, curvature_probe, pole_monodromy_numeric, q_poly, safe_sample_points
from .ribbon import genus
from .spectral import degeneracy_check
from .spherical import spherical_report


class UsageError(ValueError):
    pass


def _residue(text: str) -> Fraction:
    try:
        value = as_fraction(text)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"residue {text!r} is not a decimal or rational number") from exc
    if value <= 0:
        raise UsageError(f"residue {text} is not positive")
    return value


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _sibling(path: Path, suffix: str) -> Path:
    return path.with_suffix(suffix) if path.suffix != suffix else path.with_suffix(path.suffix + suffix)


def cmd_build(args) -> dict | str:
    if args.genus < 0:
        raise UsageError(f"genus must be >= 0, got {args.genus}")
    alpha = [_residue(a) for a in args.residues]
    mg, trace = build(args.genus, alpha)
    cover = degeneracy_check(mg)
    report = {
        "genus": args.genus,
        "residues": [fraction_str(a) for a in alpha],
        "graph": mg.to_dict(),
        "trace": trace.to_list(),
        "spherical": spherical_report(mg, cover),
        "degeneracy": cover.to_dict(),
    }
    dot = to_dot(mg)
    if args.out:
        out = Path(args.out)
        if args.format == "dot":
            write_atomic(out, dot)
            write_atomic(_sibling(out, ".json"), _dump(report))
        else:
            write_atomic(out, _dump(report))
            write_atomic(_sibling(out, ".dot"), dot)
    return dot if args.format == "dot" else report


def cmd_analyze(args) -> dict:
    mg = load_metric_graph(args.graph)
    res = residue_vector(mg)
    verdict = strebel_admissible(mg)
    out = {
        "genus": genus(mg.graph),
        "residues": [fraction_str(a) for a in res.entries],
        "vertices": mg.graph.num_vertices,
        "edges": mg.graph.num_edges,
        "faces": mg.graph.num_faces,
        "admissible": verdict.admissible,
        "admissibility_reasons": list(verdict.reasons),
        "zero_partition": None,
        "spherical": None,
        "degeneracy": None,
        "reducibility": None,
    }
    if verdict:
        cover = degeneracy_check(mg)
        sph = spherical_report(mg, cover)
        out["zero_partition"] = list(zero_partition(mg).parts)
        out["spherical"] = sph
        out["degeneracy"] = cover.to_dict()
        out["reducibility"] = sph["reducibility"]
    return out


def cmd_threepole(args) -> dict:
    a = [_residue(x) for x in (args.a1, args.a2, args.a3)]
    mg, cls = build_three_pole(*a)
    cover = degeneracy_check(mg)
    d = q_poly(*a)
    monodromy = [pole_monodromy_numeric(d, p, radius=args.radius, steps=args.steps).to_dict() for p in POLES]
    rng = np.random.default_rng(args.seed)
    samples = curvature_probe(d, safe_sample_points(d, args.samples, rng), h=args.fd_step)
    return {
        "residues": [fraction_str(x) for x in a],
        "class": cls.value,
        "differential": d.to_dict(),
        "crosscheck": classify_crosscheck(*a),
        "graph": mg.to_dict(),
        "degenerate": cover.degenerate,
        "cover_components": cover.component_count,
        "reducibility": spherical_report(mg, cover)["reducibility"],
        "monodromy": monodromy,
        "curvature": {
            "h": args.fd_step,
            "samples": [{"z": [z.real, z.imag], "K": k, "abs_K_minus_1": abs(k - 1)} for z, k in samples],
        },
    }


def cmd_check(args) -> tuple[str, bool]:
    from .checks import run_suite

    results = run_suite(seed=args.seed, suite_size=args.suite_size)
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _dump([{"criterion": r.number, "name": r.name, "passed": r.passed,
                       "detail": r.detail, "seconds": r.seconds} for r in results])
    else:
        text = "\n".join(r.line() for r in results) + f"\n{'ALL PASS' if ok else 'FAILURES'}\n"
    return text, ok


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strebelgraph", description="Strebel critical graphs and cone spherical metrics.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="trivalent metric ribbon graph with given genus and residues")
    b.add_argument("genus", type=int)
    b.add_argument("residues", nargs="+")
    b.add_argument("--out", help="write the report here and the other format next to it")
    b.add_argument("--format", choices=("json", "dot"), default="json")

    a = sub.add_parser("analyze", help="invariants of a metric graph JSON file")
    a.add_argument("graph")

    t = sub.add_parser("threepole", help="explicit three-pole differential on the sphere")
    for name in ("a1", "a2", "a3"):
        t.add_argument(name)
    t.add_argument("--radius", type=float, default=None)
    t.add_argument("--steps", type=int, default=4096)
    t.add_argument("--fd-step", type=float, default=1e-3)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--samples", type=int, default=5)

    c = sub.add_parser("check", help="run the property suite")
    c.add_argument("--suite-size", type=int, default=500)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--format", choices=("text", "json"), default="text")
    return p


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "check":
            text, ok = cmd_check(args)
            sys.stdout.write(text)
            return 0 if ok else 2
        handler = {"build": cmd_build, "analyze": cmd_analyze, "threepole": cmd_threepole}[args.command]
        result = handler(args)
    except AssertionError as exc:
        sys.stdout.write(_dump({"error": str(exc) or "internal assertion failed", "kind": "AssertionError"}))
        return 2
    except (ValueError, TypeError, KeyError, OSError, IndexError) as exc:
        message = exc.args[0] if exc.args and isinstance(exc.args[0], str) else str(exc)
        sys.stdout.write(_dump({"error": message, "kind": type(exc).__name__}))
        return 1
    sys.stdout.write(result if isinstance(result, str) else _dump(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
