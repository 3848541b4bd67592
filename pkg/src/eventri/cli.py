"""``eventri`` command line: validate, analyze, cover, parity, color.

Exit codes: 0 success, 1 invalid input, 2 precondition failure, 3 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from eventri import __version__
from eventri.errors import EventriError, InvalidInput, PreconditionError
from eventri.triangulation import (
    Triangulation,
    face_orbits,
    is_even,
    orientability,
    parse_triangulation,
    vertex_count,
    vertex_link_euler,
)

EXIT_OK, EXIT_INVALID, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _basics(T: Triangulation) -> dict:
    even, witness = is_even(T)
    return {
        "dim": T.dim,
        "simplices": T.num_simplices,
        "vertices": vertex_count(T),
        "degrees": face_orbits(T, T.dim - 2).degrees(),
        "even": even,
        "orientable": orientability(T),
        "vertex_links": vertex_link_euler(T) if T.dim == 3 else None,
    }


def cmd_validate(data: bytes, args) -> dict:
    T = parse_triangulation(data)
    return {"valid": True, **_basics(T)}


def cmd_analyze(data: bytes, args) -> dict:
    from eventri.normal import component_rep_correspondence, hypersurface_report, z2_rank_bound
    from eventri.symrep import canonical_representation, induced_representation

    T = parse_triangulation(data)
    out = _basics(T)
    rep = canonical_representation(T, args.base)
    out["canonical"] = rep.to_json()
    ks = [args.k] if args.k else list(range(2, (T.dim + 1) // 2 + 1))
    out["induced"] = {str(k): induced_representation(rep, k).to_json() for k in ks}
    out["hypersurfaces"] = {}
    for k in ks:
        report = hypersurface_report(T, k, rep, surfaces=not args.no_surfaces)
        corr = component_rep_correspondence(T, rep, k)
        report["fixed_classes"] = corr.fixed_classes
        report["consistent"] = corr.consistent
        out["hypersurfaces"][str(k)] = report
    out["z2_rank_bound"] = z2_rank_bound(T, rep)
    return out


def _action(T: Triangulation, spec: str, base: int):
    from eventri import covers
    from eventri.symrep import canonical_representation, induced_representation

    if spec == "trivial":
        return covers.trivial_action(T, base)
    if spec == "canonical":
        return covers.canonical_action(canonical_representation(T, base))
    if spec.startswith("induced:"):
        return covers.induced_action(canonical_representation(T, base), int(spec.split(":", 1)[1]))
    if spec == "regular":
        return covers.regular_action(canonical_representation(T, base))
    if spec.startswith("regular:"):
        rep = canonical_representation(T, base)
        return covers.regular_action(induced_representation(rep, int(spec.split(":", 1)[1])))
    path = Path(spec)
    if not path.exists():
        raise InvalidInput(f"unknown action {spec!r} (not a keyword and no such file)")
    return covers.action_from_json(T, path.read_bytes(), base)


def cmd_cover(data: bytes, args) -> dict:
    from eventri.covers import build_cover, verify_cover

    T = parse_triangulation(data)
    try:
        action = _action(T, args.action, args.base)
    except ValueError as exc:
        if isinstance(exc, EventriError):
            raise
        raise InvalidInput(str(exc)) from None
    C = build_cover(T, action)
    out = {"action": action.to_json(), "verify": verify_cover(C)}
    if args.out:
        Path(args.out).write_text(C.result.dumps() + "\n")
        Path(args.out + ".projection.json").write_text(json.dumps(C.projection_json()) + "\n")
        out["written"] = [args.out, args.out + ".projection.json"]
    else:
        out["triangulation"] = C.result.to_json()
        out["projection"] = C.projection_json()
    return out


def cmd_parity(data: bytes, args) -> dict:
    from eventri.z2 import parity_normalize, parse_matrix, symmetric_parity_normalize

    A, reduced = parse_matrix(data)
    result = symmetric_parity_normalize(A) if args.symmetric else parity_normalize(A)
    return {
        "symmetric": args.symmetric,
        "reduced_mod_2": reduced,
        "input": A.to_json(),
        **result.to_json(),
    }


def cmd_color(data: bytes, args) -> dict:
    from eventri.symrep import canonical_representation, haken_cell_check, vertex_labelling

    T = parse_triangulation(data)
    rep = canonical_representation(T, args.base)
    labels = vertex_labelling(T, rep)
    return {"labelling": labels.to_json(), "proper": labels.proper(T), **haken_cell_check(T, rep).to_json()}


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "cover": cmd_cover,
    "parity": cmd_parity,
    "color": cmd_color,
}


def run_one(command: str, path: str, args) -> tuple[int, dict]:
    """Run one subcommand on one file, returning (exit code, report)."""
    report: dict = {"command": command, "file": path, "version": __version__}
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        report["input_digest"] = None
        report["error"] = {"error": "InputUnreadable", "message": str(exc)}
        return EXIT_INVALID, report
    report["input_digest"] = _digest(data)
    try:
        report["payload"] = COMMANDS[command](data, args)
        return EXIT_OK, report
    except InvalidInput as exc:
        report["error"] = exc.to_json()
        return EXIT_INVALID, report
    except PreconditionError as exc:
        report["error"] = exc.to_json()
        return EXIT_PRECONDITION, report
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        report["error"] = {"error": type(exc).__name__, "message": str(exc)}
        return EXIT_INTERNAL, report


def _summary(report: dict) -> str:
    head = f"{report['command']} {report['file']}"
    if "error" in report:
        err = report["error"]
        return f"{head}: {err['error']}: {err['message']}"
    lines = [head + ":"]
    payload = report["payload"]
    if report["command"] == "analyze":
        lines.append(f"  canonical image: {payload['canonical']['image']['label']} "
                     f"(order {payload['canonical']['image']['order']})")
        for k, ind in payload["induced"].items():
            surf = payload["hypersurfaces"][k]
            comps = surf["components"]
            lines.append(f"  k={k}: induced image {ind['image']['label']}, {len(comps)} component(s), "
                         f"{sum(c['embedded'] for c in comps)} embedded, chi {[c['chi'] for c in comps]}")
        payload = {key: v for key, v in payload.items() if key not in ("canonical", "induced", "hypersurfaces")}
    for key, value in payload.items():
        if isinstance(value, (dict, list)) and len(json.dumps(value)) > 100:
            value = "..." if isinstance(value, list) else ", ".join(f"{k}={v}" for k, v in value.items() if not isinstance(v, (dict, list)))
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    """Usage errors count as invalid input (exit 1), keeping 2 for failed preconditions."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    fmt_default = os.environ.get("EVENTRI_FORMAT", "json")
    if fmt_default not in ("json", "text"):
        fmt_default = "json"
    parser = _Parser(prog="eventri", description="Analyze even triangulations given as face-pairing tables.")
    parser.add_argument("--version", action="version", version=f"eventri {__version__}")
    parser.add_argument("--format", choices=("json", "text"), default=fmt_default,
                        help="json report on stdout (default) or text summary on stderr; env EVENTRI_FORMAT")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="process independent files in parallel")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="parse and check a triangulation")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("analyze", parents=[common], help="degrees, representations, hypersurfaces, rank bound")
    p.add_argument("files", nargs="+")
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--k", type=int, default=None, help="only this partition size (default: all k >= 2)")
    p.add_argument("--no-surfaces", action="store_true", help="skip Euler characteristic and sidedness")

    p = sub.add_parser("cover", parents=[common], help="build a finite cover from a permutation action")
    p.add_argument("files", nargs="+")
    p.add_argument("--action", default="canonical",
                   help="canonical | induced:K | regular | regular:K | trivial | path to an action JSON file")
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--out", default=None, help="write the cover here plus OUT.projection.json")

    p = sub.add_parser("parity", parents=[common], help="Z2 parity normalization of a square matrix")
    p.add_argument("files", nargs="+")
    p.add_argument("--symmetric", action="store_true", help="congruence version for symmetric zero-diagonal input")

    p = sub.add_parser("color", parents=[common], help="vertex labelling and Haken-cell conditions")
    p.add_argument("files", nargs="+")
    p.add_argument("--base", type=int, default=0)
    return parser


def _run_packed(item):
    command, path, args = item
    return run_one(command, path, args)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cover" and args.out and len(args.files) > 1:
        print("eventri: --out takes a single input file", file=sys.stderr)
        return EXIT_INVALID
    items = [(args.command, f, args) for f in args.files]
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_packed, items))
    else:
        results = [_run_packed(it) for it in items]
    for code, report in results:
        if args.format == "json":
            sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
        else:
            sys.stderr.write(_summary(report) + "\n")
    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())
