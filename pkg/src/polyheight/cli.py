"""Command line interface: subcommands over the library, JSON/CSV reports.

Every run emits a report envelope {command, input_digest, tool_version,
timestamp, payload}.  Payloads are deterministic for deterministic
commands; the digest covers the command and its semantic inputs, never the
timestamp.  Exit codes: 0 success, 2 parse/usage error, 3 hypothesis not
applicable, 4 precondition refusal.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .asymptotics import (
    ApproxFunction,
    DimFunction,
    Outcome,
    classical_verdict,
    dimension_formula,
    series_verdict,
)
from .empirical import build_cover, estimate_dimension, tail_sum
from .errors import ParseError, PreconditionError
from .parsing import SystemDescriptor, parse_box
from .rational import (
    affine_height,
    parse_rat_vec,
    projective_height,
    rat,
    rat_str,
    to_projective,
)
from .variety import apply_F, apply_Fstar, height_bound_scan, off_manifold_check

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_APPLICABLE = 3
EXIT_REFUSED = 4


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--poly", action="append", default=None, help="polynomial expression (repeatable)")
    p.add_argument("--system", default=None, help="path to a system JSON file")
    p.add_argument("--n", type=int, default=None, help="ambient dimension (inferred if omitted)")
    p.add_argument("--box", default=None, help='box "lo,hi" or "lo,hi;lo,hi;..."')


def _load_system(args) -> SystemDescriptor:
    if args.system and args.poly:
        raise ParseError("--system and --poly conflict")
    if args.system:
        with open(args.system, "r", encoding="utf-8") as fh:
            desc = SystemDescriptor.from_json(fh.read())
        if args.n is not None and args.n != desc.n:
            raise ParseError(f"--n {args.n} conflicts with system n={desc.n}")
        return desc
    if not args.poly:
        raise ParseError("no system given: use --poly or --system")
    n = args.n
    box = None
    if args.box is not None:
        if n is None:
            exprs_n = SystemDescriptor.from_exprs(args.poly).n
            n = exprs_n
        box = parse_box(args.box, n)
    return SystemDescriptor.from_exprs(args.poly, n, box)


def _psi_from(args) -> ApproxFunction:
    return ApproxFunction.power(rat(args.tau), rat(args.psi_c), rat(args.psi_beta))


def _f_from(args) -> DimFunction:
    return DimFunction.power(rat(args.s), rat(args.f_gamma))


def _add_psi_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau", required=True, help="psi decay exponent (rational)")
    p.add_argument("--psi-c", default="1", help="psi scale c > 0")
    p.add_argument("--psi-beta", default="0", help="psi log exponent beta")


def _add_f_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s", required=True, help="dimension function exponent s > 0")
    p.add_argument("--f-gamma", default="0", help="dimension function log exponent gamma")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyheight",
        description="Exact heights, morphism tests, and measure/dimension verdicts "
        "for rational approximation on polynomial graphs.",
    )
    ap.add_argument("--output", default=None, help="write the report to this path")
    ap.add_argument("--format", choices=["json", "csv"], default="json")
    ap.add_argument("--seed", type=int, default=None, help="seed for sampling demos only")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("morphism-check", help="decide the top-form common-zero condition")
    _add_system_flags(p)

    p = sub.add_parser("heights", help="affine/projective heights of a rational point")
    _add_system_flags(p)
    p.add_argument("--point", required=True, help='rational vector, e.g. "2/3,1/2"')

    p = sub.add_parser("height-bounds", help="scan image-height ratios H(F(p/q))/q^d")
    _add_system_flags(p)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--q-min", type=int, default=1)

    p = sub.add_parser("verdict", help="zero/infinity verdict for the graph series")
    _add_system_flags(p)
    p.add_argument("--d", type=int, default=None, help="max degree (with --n, skips the system)")
    _add_psi_flags(p)
    _add_f_flags(p)

    p = sub.add_parser("classical-verdict", help="baseline ambient-space verdict")
    p.add_argument("--n", type=int, required=True)
    _add_psi_flags(p)
    _add_f_flags(p)

    p = sub.add_parser("dimension", help="dimension formula (1+n)/(d*tau)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--tau", required=True)

    p = sub.add_parser("estimate-dim", help="box-counting estimate across stages")
    _add_system_flags(p)
    p.add_argument("--tau", required=True)
    p.add_argument("--q-levels", required=True, help="comma-separated stage tops, e.g. 32,64,128")
    p.add_argument("--eps-levels", default=None, help="optional explicit rational eps per stage")

    p = sub.add_parser("tail-sum", help="stage cover mass vs comparison series")
    _add_system_flags(p)
    _add_psi_flags(p)
    _add_f_flags(p)
    p.add_argument("--window-lo", type=int, required=True, help="exclusive lower q")
    p.add_argument("--window-hi", type=int, required=True, help="inclusive upper q")

    p = sub.add_parser("check-intrinsic", help="search for off-graph near approximants")
    _add_system_flags(p)
    _add_psi_flags(p)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--d-min", type=int, default=1)
    p.add_argument("--depth-limit", type=int, default=20)

    p = sub.add_parser("cover", help="emit one finite cover stage")
    _add_system_flags(p)
    _add_psi_flags(p)
    p.add_argument("--q-lo", type=int, required=True)
    p.add_argument("--q-hi", type=int, required=True)
    p.add_argument("--radius-mode", choices=["lower", "upper"], default="lower")

    return ap


def _system_inputs(desc: SystemDescriptor) -> dict:
    return desc.to_json()


def _run(args) -> tuple[dict, dict, int, tuple | None]:
    """Returns (inputs, payload, exit_code, csv_data)."""
    cmd = args.command

    if cmd == "morphism-check":
        desc = _load_system(args)
        ctx = desc.context()
        payload = {
            "d": ctx.d,
            "degrees": list(ctx.degrees),
            "top_forms": [t.to_text() for t in ctx.top_forms],
            "certificate": ctx.morphism.to_report(),
        }
        return _system_inputs(desc), payload, EXIT_OK, None

    if cmd == "heights":
        point = parse_rat_vec(args.point)
        proj = to_projective(point)
        payload = {
            "point": [rat_str(x) for x in point],
            "affine_height": affine_height(point),
            "projective": str(proj),
            "projective_height": projective_height(proj),
        }
        inputs = {"point": payload["point"]}
        if args.poly or args.system:
            desc = _load_system(args)
            ctx = desc.context()
            image = apply_F(ctx, point)
            image_proj = apply_Fstar(ctx, proj)
            payload["image"] = {
                "coords": [rat_str(x) for x in image],
                "affine_height": affine_height(image),
                "projective": str(image_proj),
                "projective_height": projective_height(image_proj),
            }
            inputs["system"] = _system_inputs(desc)
        return inputs, payload, EXIT_OK, None

    if cmd == "height-bounds":
        desc = _load_system(args)
        ctx = desc.context()
        report = height_bound_scan(ctx, args.q_max, args.q_min)
        inputs = {"system": _system_inputs(desc), "q_min": args.q_min, "q_max": args.q_max}
        return inputs, report.to_report(), EXIT_OK, report.csv_rows()

    if cmd == "verdict":
        psi = _psi_from(args)
        f = _f_from(args)
        inputs: dict = {"psi": psi.to_report(), "f": f.to_report()}
        if args.poly or args.system:
            desc = _load_system(args)
            ctx = desc.context()
            n, d = ctx.n, ctx.d
            inputs["system"] = _system_inputs(desc)
            if not ctx.morphism.holds:
                payload = {
                    "outcome": Outcome.NOT_APPLICABLE.value,
                    "note": "morphism condition fails for the top-degree forms",
                    "certificate": ctx.morphism.to_report(),
                }
                return inputs, payload, EXIT_NOT_APPLICABLE, None
        else:
            if args.n is None or args.d is None:
                raise ParseError("verdict needs --n and --d, or a system")
            n, d = args.n, args.d
        inputs.update({"n": n, "d": d})
        verdict = series_verdict(psi, f, n, d)
        code = EXIT_OK if verdict.outcome in (Outcome.ZERO, Outcome.INFINITY) else EXIT_NOT_APPLICABLE
        return inputs, verdict.to_report(), code, None

    if cmd == "classical-verdict":
        psi = _psi_from(args)
        f = _f_from(args)
        verdict = classical_verdict(psi, f, args.n)
        inputs = {"n": args.n, "psi": psi.to_report(), "f": f.to_report()}
        code = EXIT_OK if verdict.outcome in (Outcome.ZERO, Outcome.INFINITY) else EXIT_NOT_APPLICABLE
        return inputs, verdict.to_report(), code, None

    if cmd == "dimension":
        result = dimension_formula(args.n, args.d, rat(args.tau))
        inputs = {"n": args.n, "d": args.d, "tau": rat_str(result.tau)}
        code = EXIT_OK if result.corollary_applicable else EXIT_NOT_APPLICABLE
        return inputs, result.to_report(), code, None

    if cmd == "estimate-dim":
        desc = _load_system(args)
        ctx = desc.context()
        q_levels = [int(x) for x in args.q_levels.split(",") if x.strip()]
        eps_levels = None
        if args.eps_levels:
            eps_levels = [rat(x) for x in args.eps_levels.split(",") if x.strip()]
        estimate = estimate_dimension(ctx, rat(args.tau), q_levels, eps_levels)
        inputs = {
            "system": _system_inputs(desc),
            "tau": rat_str(estimate.tau),
            "q_levels": q_levels,
            "eps_levels": None if eps_levels is None else [rat_str(e) for e in eps_levels],
        }
        return inputs, estimate.to_report(), EXIT_OK, estimate.csv_rows()

    if cmd == "tail-sum":
        desc = _load_system(args)
        ctx = desc.context()
        psi = _psi_from(args)
        f = _f_from(args)
        result = tail_sum(ctx, psi, f, args.window_lo, args.window_hi)
        inputs = {
            "system": _system_inputs(desc),
            "psi": psi.to_report(),
            "f": f.to_report(),
            "window_lo": args.window_lo,
            "window_hi": args.window_hi,
        }
        return inputs, result.to_report(), EXIT_OK, None

    if cmd == "check-intrinsic":
        desc = _load_system(args)
        ctx = desc.context()
        psi = _psi_from(args)
        findings = off_manifold_check(ctx, psi, args.d_max, args.d_min, args.depth_limit)
        inputs = {
            "system": _system_inputs(desc),
            "psi": psi.to_report(),
            "d_min": args.d_min,
            "d_max": args.d_max,
        }
        payload = {
            "d_min": args.d_min,
            "d_max": args.d_max,
            "violations": [v.to_report() for v in findings],
        }
        header = ["height", "point", "status"]
        rows = [[v.height, ",".join(rat_str(x) for x in v.point), v.status] for v in findings]
        return inputs, payload, EXIT_OK, (header, rows)

    if cmd == "cover":
        desc = _load_system(args)
        ctx = desc.context()
        psi = _psi_from(args)
        stage = build_cover(ctx, psi, args.q_lo, args.q_hi, args.radius_mode)
        inputs = {
            "system": _system_inputs(desc),
            "psi": psi.to_report(),
            "q_lo": args.q_lo,
            "q_hi": args.q_hi,
            "radius_mode": args.radius_mode,
        }
        return inputs, stage.to_report(), EXIT_OK, stage.csv_rows()

    raise ParseError(f"unknown subcommand {cmd!r}")


def _digest(command: str, inputs: dict) -> str:
    blob = json.dumps({"command": command, "inputs": inputs}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _emit(args, envelope: dict, csv_data) -> None:
    if args.format == "csv":
        if csv_data is None:
            raise ParseError(f"{args.command} has no CSV form")
        header, rows = csv_data
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    workers = os.environ.get("POLYHEIGHT_WORKERS")
    if workers is not None and (not workers.isdigit() or int(workers) < 1):
        print("POLYHEIGHT_WORKERS must be a positive integer", file=sys.stderr)
        return EXIT_PARSE
    try:
        inputs, payload, code, csv_data = _run(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    envelope = {
        "command": args.command,
        "input_digest": _digest(args.command, inputs),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "payload": payload,
    }
    if args.seed is not None:
        envelope["seed"] = args.seed
    _emit(args, envelope, csv_data)
    return code


if __name__ == "__main__":
    sys.exit(main())
