"""Command-line entry point.  Every subcommand prints one JSON envelope (or a text table)."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .construction import (ConstructionError, certify, coverage_report, empty_extras,
                           ensure_even_characteristic, random_extras)
from .ind import ind_table, invariant, is_gray
from .oracle import catalog_bases, cross_check, default_catalog, line_sum_spec
from .polytope import PolytopeError, dodecahedron, load_polytope, shipped_path
from .profiles import InvolutionProfile
from .smallcover import (REFERENCE_ROWS, ColoringError, Coloring, census, fmt, from_bits,
                         load_coloring)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _digest(command: str, args: argparse.Namespace, files: list[str]) -> str:
    h = hashlib.sha256()
    flags = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    h.update(json.dumps({"command": command, "flags": flags}, sort_keys=True, default=str).encode())
    for f in files:
        h.update(Path(f).read_bytes())
    return h.hexdigest()


def _envelope(command: str, digest: str, results, error: str | None = None) -> str:
    env = {"command": command, "inputs_digest": digest, "results": results, "version": __version__}
    if error is not None:
        env["error"] = error
    return json.dumps(env, sort_keys=True, indent=1)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


# --- start profiles -----------------------------------------------------------------


def _default_census():
    lat = dodecahedron()
    col = load_coloring(lat, shipped_path("dodecahedron_coloring.json"))
    return {row.g: row for row in census(lat, col)}


def _parse_color(text: str) -> int:
    t = text.strip().strip("()[]")
    parts = [p for p in t.replace(" ", "").split(",") if p]
    if len(parts) == 1 and len(parts[0]) == 3:
        parts = list(parts[0])
    try:
        g = from_bits(int(p) for p in parts) if len(parts) == 3 else None
    except (ValueError, ColoringError):
        g = None
    if not g:
        raise InputError(f"bad color {text!r}: expected three bits such as 0,1,1")
    return g


def _load_start(spec: str) -> tuple[InvolutionProfile, list[str]]:
    """'census:0,1,1' picks a row of the shipped dodecahedral census; anything else is a profile file."""
    if spec.startswith("census:"):
        return _default_census()[_parse_color(spec[len("census:"):])].profile, []
    try:
        return InvolutionProfile.from_json(_read_json(spec)), [spec]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad profile file {spec}: {exc}") from None


def _load_extras(spec: str, start_dim: int, target_n: int) -> tuple[list[InvolutionProfile], list[str]]:
    if spec == "empty":
        return empty_extras(start_dim, target_n), []
    if spec.startswith("random:"):
        try:
            _, seed, count = spec.split(":")
            return random_extras(int(seed), start_dim, target_n, int(count)), []
        except ValueError:
            raise InputError("random extras take the form random:SEED:COUNT") from None
    data = _read_json(spec)
    if not isinstance(data, list):
        raise InputError("extras file must hold a JSON list of profiles")
    try:
        return [InvolutionProfile.from_json(x) for x in data], [spec]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad extras file {spec}: {exc}") from None


# --- subcommands -------------------------------------------------------------------


def cmd_ind_table(args) -> tuple[int, object, list[str], str | None]:
    if args.n_max < 0 or args.d_max < 0:
        raise InputError("--n-max and --d-max must be >= 0")
    rows = ind_table(args.n_max, args.d_max)
    if args.format == "json":
        return 0, {"rows": rows, "gray": [[int(is_gray(n, d)) for d in range(args.d_max + 1)]
                                          for n in range(args.n_max + 1)]}, [], None
    if args.format == "csv":
        lines = ["n," + ",".join(f"d={d}" for d in range(args.d_max + 1))]
        lines += [f"{n}," + ",".join(r) for n, r in enumerate(rows)]
        return 0, None, [], "\n".join(lines)
    cells = [[c + ("*" if is_gray(n, d) else "") for d, c in enumerate(r)] for n, r in enumerate(rows)]
    widths = [max(len(f"d={d}"), *(len(r[d]) for r in cells)) for d in range(args.d_max + 1)]
    head = "n\\d | " + "  ".join(f"{d}".ljust(w) for d, w in enumerate(widths))
    lines = [head, "-" * len(head)]
    for n, r in enumerate(cells):
        lines.append(f"{n:>3} | " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return 0, None, [], "\n".join(lines)


def cmd_fixed_points(args):
    files = [args.polytope, args.coloring]
    try:
        lat = load_polytope(args.polytope)
        col = Coloring.from_json(lat, _read_json(args.coloring))
    except (PolytopeError, ColoringError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from None
    if args.all:
        elements = sorted(REFERENCE_ROWS)
    else:
        elements = [_parse_color(args.color)]
    try:
        rows = census(lat, col, elements)
    except ColoringError as exc:
        raise InputError(str(exc)) from None
    mismatch = []
    if args.check:
        want = {g: row["counts"] for g, row in REFERENCE_ROWS.items()}
        mismatch = [fmt(r.g) for r in rows if want.get(r.g) != r.counts()]
    code = 1 if mismatch else 0
    if args.format == "json":
        out = [{"color": fmt(r.g), "facets": list(r.facets), "points": r.points,
                "circles": r.circles, "surfaces": r.surfaces, "surfaces_w1sq_nonzero": r.surfaces_w1sq,
                "surface_info": [{"label": i.label, "euler_char": i.euler_char,
                                  "orientable": i.orientable, "normal_w1_squared": i.normal_w1_squared}
                                 for i in r.surface_info],
                "profile": r.profile.to_json()} for r in rows]
        if args.check:
            out = {"rows": out, "mismatched_colors": mismatch}
        return code, out, files, None
    header = ("Facet i", "Color", "Points", "Circles", "Surfaces X", "...with w1^2(nu X) = 1")
    table = [header] + [(", ".join(r.facets), fmt(r.g), str(r.points), str(r.circles),
                         str(r.surfaces), str(r.surfaces_w1sq)) for r in rows]
    widths = [max(len(t[i]) for t in table) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(t, widths)).rstrip() for t in table]
    lines.insert(1, "-" * len(lines[0]))
    if mismatch:
        lines.append("mismatch against reference counts: " + ", ".join(mismatch))
    return code, None, files, "\n".join(lines)


def _catalog_from_file(path: str):
    """A JSON list of {"base": name, "lines": [...], "rank": r, "n": n}."""
    bases = {b.name: b for b in catalog_bases()}
    cases = []
    for item in _read_json(path):
        try:
            base = bases[item["base"]]
            spec = line_sum_spec(base, item.get("lines", []), int(item["rank"]))
            cases.append((base.name, spec.label, int(item["n"]), spec))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad catalog entry {item}: {exc}") from None
    return cases


def cmd_oracle(args):
    if args.catalog == "default":
        cases, files = default_catalog(), []
    else:
        cases, files = _catalog_from_file(args.catalog), [args.catalog]
    out = []
    for base, bundle, n, spec in cases:
        try:
            ok, lhs, rhs = cross_check(n, spec)
        except ValueError as exc:
            raise InputError(f"{base}/{bundle} at n={n}: {exc}") from None
        out.append({"base": base, "bundle": bundle, "n": n, "d": spec.base.top_degree,
                    "lhs": lhs, "rhs": rhs, "ok": bool(ok)})
    failed = sum(not c["ok"] for c in out)
    return (1 if failed else 0), {"cases": out, "failed": failed}, files, None


def cmd_certify(args):
    start, files = _load_start(args.start)
    extras, more = _load_extras(args.extras, start.ambient_dim, args.target_n)
    try:
        plan = certify(start, args.target_n, extras)
    except (ConstructionError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if args.even_chi:
        plan = ensure_even_characteristic(plan)
    return 0, plan.to_json(), files + more, None


def cmd_coverage(args):
    start, files = _load_start(args.start)
    try:
        rep = coverage_report(start, args.n_max)
    except ConstructionError as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        return 0, rep, files, None
    lines = [c["description"] for c in rep["classes"]] or ["none"]
    if rep["phi_undefined"]:
        lines.append("invariant defined, phi^n not: " + ", ".join(map(str, rep["phi_undefined"])))
    return 0, None, files, "\n".join(lines)


def cmd_invariant(args):
    start, files = _load_start(args.start)
    if args.n < start.ambient_dim:
        raise InputError(f"n = {args.n} is below the ambient dimension {start.ambient_dim}")
    return 0, {"n": args.n, "value": invariant(args.n, start)}, files, None


COMMANDS = {
    "ind-table": cmd_ind_table,
    "fixed-points": cmd_fixed_points,
    "oracle": cmd_oracle,
    "certify": cmd_certify,
    "coverage": cmd_coverage,
    "invariant": cmd_invariant,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cobinv", description=__doc__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    t = sub.add_parser("ind-table", help="table of I_{n,d}")
    t.add_argument("--n-max", type=int, default=16)
    t.add_argument("--d-max", type=int, default=4)
    t.add_argument("--format", choices=["text", "csv", "json"], default="text")
    f = sub.add_parser("fixed-points", help="fixed sets of a small-cover involution")
    f.add_argument("--polytope", required=True)
    f.add_argument("--coloring", required=True)
    which = f.add_mutually_exclusive_group(required=True)
    which.add_argument("--color")
    which.add_argument("--all", action="store_true")
    f.add_argument("--format", choices=["text", "json"], default="text")
    f.add_argument("--check", action="store_true",
                   help="compare counts with the reference dodecahedral census; exit 1 on mismatch")
    o = sub.add_parser("oracle", help="cross-check I_{n,d} against projective bundles")
    o.add_argument("--catalog", default="default")
    c = sub.add_parser("certify", help="run the embed/twist induction")
    c.add_argument("--start", required=True)
    c.add_argument("--target-n", type=int, required=True)
    c.add_argument("--extras", default="empty")
    c.add_argument("--even-chi", action="store_true")
    v = sub.add_parser("coverage", help="dimensions reached by a start profile")
    v.add_argument("--start", required=True)
    v.add_argument("--n-max", type=int, default=32)
    v.add_argument("--format", choices=["text", "json"], default="json")
    i = sub.add_parser("invariant", help="I(n, M, tau) of a profile")
    i.add_argument("--start", required=True)
    i.add_argument("--n", type=int, required=True)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else ""
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise InputError("missing subcommand")
    except InputError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        out.write(_envelope(command, "", None, f"usage: {exc}") + "\n")
        return 2
    digest = ""
    try:
        code, results, files, text = COMMANDS[args.command](args)
        digest = _digest(args.command, args, files)
    except InputError as exc:
        out.write(_envelope(args.command, digest, None, str(exc)) + "\n")
        return 2
    if text is not None:
        out.write(text + "\n")
        return code
    err = "verification failed" if code == 1 else None
    out.write(_envelope(args.command, digest, results, err) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
