"""Command line interface: resolve, trace, diffsat, tau, equiv-fuzz and build-provider."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .charts import make_basic_object
from .diff import diff_saturate
from .driver import IDENTITY_PROVIDER, EliminationProvider, RestrictionProvider, invariant_trace, resolve
from .equivalence import weak_equiv_fuzz
from .errors import ProviderError, ReesError
from .rees import Couple, rees_from_couple
from .scenario import load_scenario


def _emit(data, out: str | None) -> None:
    text = json.dumps(data, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _figure_path(args) -> Path | None:
    if getattr(args, "figure", None):
        return Path(args.figure)
    if getattr(args, "out", None) and not getattr(args, "no_figure", False):
        return Path(args.out).with_suffix(".png")
    return None


def _provider(args, sc) -> EliminationProvider:
    path = args.provider or sc.provider_path
    return EliminationProvider.from_json(path) if path else IDENTITY_PROVIDER


def _run_resolution(args):
    sc = load_scenario(args.scenario, args.char)
    trace = resolve(sc.obj, _provider(args, sc), max_steps=args.max_steps)
    fig = _figure_path(args)
    if fig is not None:
        from .report import plot_trace

        plot_trace(trace, fig, title=str(args.scenario))
    return trace


def cmd_resolve(args) -> int:
    trace = _run_resolution(args)
    _emit(trace.to_json(), args.out)
    return trace.exit_code


def cmd_trace(args) -> int:
    trace = _run_resolution(args)
    _emit(invariant_trace(trace), args.out)
    return trace.exit_code


def cmd_diffsat(args) -> int:
    sc = load_scenario(args.scenario, args.char)
    p = sc.obj.payload
    g = rees_from_couple(p) if isinstance(p, Couple) else p
    sat = diff_saturate(g)
    _emit({"gens": [[str(f), n] for f, n in sat.gens]}, args.out)
    return 0


def _point(text: str, n: int) -> tuple[int, ...]:
    pt = tuple(int(v) for v in text.split(","))
    if len(pt) != n:
        raise SystemExit(f"point needs {n} coordinates")
    return pt


def cmd_tau(args) -> int:
    from .tau import ridge_and_tau

    sc = load_scenario(args.scenario, args.char)
    p = sc.obj.payload
    g = rees_from_couple(p) if isinstance(p, Couple) else p
    point = _point(args.point, sc.ring.nvars) if args.point else (sc.point or (0,) * sc.ring.nvars)
    _emit(ridge_and_tau(g, point).to_json(), args.out)
    return 0


def cmd_equiv_fuzz(args) -> int:
    sc = load_scenario(args.scenario, args.char)
    other = sc.other
    if other is None:
        p = sc.obj.payload
        g = rees_from_couple(p) if isinstance(p, Couple) else p
        first = make_basic_object(g, [d.name for d in sc.obj.E if not d.exceptional])
        other = make_basic_object(diff_saturate(g), [d.name for d in sc.obj.E if not d.exceptional])
        result = weak_equiv_fuzz(first, other, depth=args.depth, budget=args.budget)
    else:
        result = weak_equiv_fuzz(sc.obj, other, depth=args.depth, budget=args.budget)
    _emit(result.to_json(), args.out)
    return 0 if result.ok else 1


def cmd_build_provider(args) -> int:
    sc = load_scenario(args.scenario, args.char)
    base = EliminationProvider.from_json(args.provider) if args.provider else None
    prov = RestrictionProvider(base)
    trace = resolve(sc.obj, prov, max_steps=args.max_steps)
    _emit(prov.to_json(), args.out)
    print(f"{len(prov.generated)} entries generated, resolution status {trace.status}", file=sys.stderr)
    return trace.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reeswb", description="Rees algebra resolution workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, provider=False, steps=False, figure=False):
        p.add_argument("scenario", help="scenario JSON file")
        p.add_argument("--char", type=int, default=None, help="override the field characteristic (0 for QQ)")
        p.add_argument("--out", "-o", default=None, help="write JSON here instead of stdout")
        if provider:
            p.add_argument("--provider", default=None, help="elimination table JSON")
        if steps:
            p.add_argument("--max-steps", type=int, default=50)
        if figure:
            p.add_argument("--figure", default=None, help="PNG path (default: next to --out)")
            p.add_argument("--no-figure", action="store_true")

    p = sub.add_parser("resolve", help="run the resolution driver")
    common(p, provider=True, steps=True, figure=True)
    p.set_defaults(func=cmd_resolve)
    p = sub.add_parser("trace", help="per-step invariant records")
    common(p, provider=True, steps=True, figure=True)
    p.set_defaults(func=cmd_trace)
    p = sub.add_parser("diffsat", help="Diff-saturation generators")
    common(p)
    p.set_defaults(func=cmd_diffsat)
    p = sub.add_parser("tau", help="tau and the translation space at a point")
    common(p)
    p.add_argument("--point", default=None, help="comma separated coordinates, e.g. 0,0,0")
    p.set_defaults(func=cmd_tau)
    p = sub.add_parser("equiv-fuzz", help="search for a weak-equivalence counterexample")
    common(p)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--budget", type=int, default=500)
    p.set_defaults(func=cmd_equiv_fuzz)
    p = sub.add_parser("build-provider", help="generate an elimination table by restriction")
    common(p, provider=True, steps=True)
    p.set_defaults(func=cmd_build_provider)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ProviderError as exc:
        print(f"provider error: {exc}", file=sys.stderr)
        return 3
    except ReesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
