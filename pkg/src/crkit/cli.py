"""``crkit`` command-line front end.  Output is JSON with sorted keys."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import corpus, reports
from .flows import FlowConfig
from .formats import SpecError, load_series, manifold_to_dict, parse_point, series_to_dict, _gauss
from .gaussrat import GaussRat
from .manifold import NotOnManifold, NonRealInput
from .poly import PolyParseError

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAPPED = 0, 1, 2, 3


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer (decimal or 0x...)") from None


def default_seed() -> int:
    env = os.environ.get("CRKIT_SEED")
    return _seed(env) if env else reports.DEFAULT_SEED


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=argparse.SUPPRESS,
                        help="random seed (default 0xC0FFEE, or $CRKIT_SEED)")
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent the JSON")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="add wall-clock timing (breaks byte-identical output)")
    common.add_argument("--assert", dest="assert_", action="store_true", default=argparse.SUPPRESS,
                        help="exit 1 when a check comes out negative")

    ap = argparse.ArgumentParser(prog="crkit", parents=[common],
                                 description="Exact computations on real-algebraic CR manifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, help):
        return sub.add_parser(name, parents=[common], help=help, description=help)

    p = cmd("analyze", "codimension, CR rank, minimality, kappa and holomorphic fields")
    p.add_argument("manifold")
    p.add_argument("--degree", type=int, default=3, help="degree bound for holomorphic fields")

    p = cmd("segre", "Segre variety of a point and the reciprocity property")
    p.add_argument("manifold")
    p.add_argument("--point", help="e.g. '1,i,1/2' or a JSON list")
    p.add_argument("--reciprocity-samples", type=int, default=0)

    p = cmd("transversal", "Segre-transversality verdict and witness")
    p.add_argument("manifold")

    p = cmd("kappa", "degeneracy degree kappa, chi, witness minor, exceptional locus")
    p.add_argument("manifold")

    p = cmd("straighten", "split off linear polydisc factors")
    p.add_argument("manifold")

    p = cmd("orbit", "Lie saturation and/or numerical orbit dimension")
    p.add_argument("manifold")
    p.add_argument("--numeric", action="store_true", help="also estimate the orbit dimension by flows")
    p.add_argument("--numeric-only", action="store_true", help="skip the symbolic bracket computation")
    p.add_argument("--svd-tol", type=float, default=1e-6)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--step", type=float, default=1e-3)

    p = cmd("reflect", "first and double reflection dimension estimates")
    p.add_argument("target")
    p.add_argument("--points", required=True, help="JSON file with a list of points")
    p.add_argument("--map", help="polynomial series map for the double reflection")
    p.add_argument("--source", help="source manifold of the map")
    p.add_argument("--z", help="point z on the Segre variety of w")
    p.add_argument("--w", help="point w")

    p = cmd("trdeg", "transcendence-degree estimate with certificates")
    p.add_argument("series")
    p.add_argument("--bounds", type=int, nargs=2, metavar=("DZ", "DX"), default=(4, 4))
    p.add_argument("--order", type=int)

    p = cmd("maps-into", "check that a series map sends one manifold into another")
    p.add_argument("series")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--order", type=int)

    p = cmd("perturb", "perturb a map along its straightened coordinates by iterated sin^a")
    p.add_argument("series")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--kappa", type=int, default=1)
    p.add_argument("--slots", type=int, nargs="+", help="1-based components to perturb")

    p = cmd("corpus", "list or run the built-in examples")
    p.add_argument("--list", action="store_true")
    p.add_argument("--names", nargs="+", choices=corpus.NAMES)
    return ap


def _load_points(path: str, n: int) -> list:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SpecError(e.msg, path, e.lineno, e.colno) from None
    if isinstance(raw, dict):
        raw = raw.get("points", [])
    pts = []
    for q in raw:
        if isinstance(q, str):
            pts.append(parse_point(q, n))
        else:
            if len(q) != n:
                raise SpecError("each point needs %d coordinates" % n, path)
            pts.append([_gauss(x, path, "point") for x in q])
    if not pts:
        raise SpecError("no points given", path)
    return pts


def run(args) -> tuple[dict, dict]:
    """Returns (inputs, result)."""
    seed = args.seed
    c = args.command
    if c == "corpus":
        if args.list:
            return {}, {"names": list(corpus.NAMES)}
        names = tuple(args.names) if args.names else corpus.NAMES
        res = corpus.run(seed, names)
        res["negative"] = not res["all_match"]
        return {"names": list(names)}, res
    if c in ("analyze", "segre", "transversal", "kappa", "straighten", "orbit"):
        M = corpus.resolve(args.manifold)
        inputs = {"manifold": manifold_to_dict(M)}
        if c == "analyze":
            inputs["degree"] = args.degree
            return inputs, reports.analyze(M, seed, args.degree)
        if c == "segre":
            pt = parse_point(args.point, M.n) if args.point else None
            inputs.update(point=None if pt is None else [str(x) for x in pt],
                          reciprocity_samples=args.reciprocity_samples)
            return inputs, reports.segre_report(M, pt, args.reciprocity_samples, seed)
        if c == "transversal":
            return inputs, reports.transversal_report(M, seed)
        if c == "kappa":
            return inputs, reports.kappa_report(M, seed)
        if c == "straighten":
            return inputs, reports.straighten_report(M, seed)
        cfg = FlowConfig(h=args.step, delta=args.delta, svd_tol=args.svd_tol)
        inputs.update(numeric=args.numeric or args.numeric_only, svd_tol=args.svd_tol, delta=args.delta,
                      step=args.step)
        return inputs, reports.orbit_report(M, seed, numeric=args.numeric or args.numeric_only,
                                            symbolic=not args.numeric_only, cfg=cfg)
    if c == "reflect":
        Mp = corpus.resolve(args.target)
        pts = _load_points(args.points, Mp.n)
        inputs = {"target": manifold_to_dict(Mp), "points": [[str(x) for x in q] for q in pts]}
        f = M = z = w = None
        if args.map:
            if not (args.source and args.z and args.w):
                raise SpecError("--map needs --source, --z and --w", "reflect")
            f = load_series(args.map)
            M = corpus.resolve(args.source)
            z, w = parse_point(args.z, M.n), parse_point(args.w, M.n)
            inputs.update(map=series_to_dict(f), source=manifold_to_dict(M),
                          z=[str(x) for x in z], w=[str(x) for x in w])
        return inputs, reports.reflect_report(Mp, pts, seed, f, M, z, w)
    f = load_series(args.series)
    inputs = {"series": series_to_dict(f)}
    if c == "trdeg":
        inputs.update(bounds=list(args.bounds), order=args.order)
        return inputs, reports.trdeg_report(f, args.bounds, args.order)
    if c == "maps-into":
        M, Mp = corpus.resolve(args.source), corpus.resolve(args.target)
        inputs.update(source=manifold_to_dict(M), target=manifold_to_dict(Mp), order=args.order)
        return inputs, reports.maps_into_report(f, M, Mp, args.order)
    if c == "perturb":
        slots = [s - 1 for s in args.slots] if args.slots else None
        inputs.update(a=args.a, kappa=args.kappa, slots=args.slots)
        return inputs, reports.perturb_report(f, args.a, args.kappa, slots)
    raise AssertionError(c)


def _emit(obj, pretty: bool, stream=None):
    stream = stream or sys.stdout
    text = json.dumps(obj, sort_keys=True, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"), ensure_ascii=False)
    stream.write(text + "\n")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name, default in (("seed", None), ("pretty", False), ("timing", False), ("assert_", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.seed is None:
        try:
            args.seed = default_seed()
        except argparse.ArgumentTypeError as e:
            print("crkit: CRKIT_SEED: %s" % e, file=sys.stderr)
            return EXIT_INPUT
    start = time.perf_counter()
    try:
        inputs, result = run(args)
    except SpecError as e:
        print(str(e), file=sys.stderr)
        _emit({"command": args.command, "error": e.as_dict()}, args.pretty)
        return EXIT_INPUT
    except PolyParseError as e:
        print("%s: column %d: %s" % (e.text, e.column, e.message), file=sys.stderr)
        _emit({"command": args.command, "error": {"error": e.message, "text": e.text, "line": 1,
                                                  "column": e.column}}, args.pretty)
        return EXIT_INPUT
    except (OSError, KeyError, ValueError, NotOnManifold, NonRealInput) as e:
        print("crkit: %s" % e, file=sys.stderr)
        _emit({"command": args.command, "error": {"error": str(e)}}, args.pretty)
        return EXIT_INPUT
    negative = bool(result.pop("negative", False))
    capped = bool(result.pop("capped", False))
    report = {"command": args.command, "seed": args.seed, "inputs_digest": reports.digest(args.command, inputs),
              "result": result, "capped": capped}
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    _emit(report, args.pretty)
    if capped:
        return EXIT_CAPPED
    if negative and (args.assert_ or args.command == "corpus"):
        return EXIT_NEGATIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
