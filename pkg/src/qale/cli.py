"""``qale`` command line.

Exit codes: 0 success, 2 hypothesis failure, 64 usage error, 70 internal error.
JSON is the canonical report format (sorted keys, two-space indent); markdown
is rendered from the same dictionary.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction

from . import analytic, homological
from .assembly import (
    WeightSpec,
    boundary_betti,
    chi_l2,
    cone_rule,
    end_geometry,
    end_l2,
    end_l2_weighted,
    sp2_l2,
    su3_l2,
)
from .errors import ConfigurationError, HypothesisFailure, QaleError
from .field import format_cyc
from .group import close_group, conjugacy_classes
from .groupfile import parse_group_file
from .mckay import CohomTable, crepant_betti
from .strata import all_ok, stratification_report, validate_hypotheses

log = logging.getLogger("qale")

EXIT_OK, EXIT_HYPOTHESIS, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 64, 70


class UsageError(ConfigurationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _md_value(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_md_value(x)}" for k, x in v.items()) or "(none)"
    if isinstance(v, list):
        return "; ".join(_md_value(x) for x in v) or "(none)"
    return str(v)


def render_markdown(report: dict) -> str:
    lines = [f"# {report.get('command', 'report')}: {report.get('name', '')}".rstrip(": "), ""]
    for banner in report.get("banners", []):
        lines.append(f"> {banner}")
    if report.get("banners"):
        lines.append("")
    for key in sorted(report):
        if key in ("command", "name", "banners"):
            continue
        val = report[key]
        if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
            cols = sorted({c for r in val for c in r})
            if lines[-1]:
                lines.append("")
            lines += [f"## {key}", "", "| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
            lines += ["| " + " | ".join(_md_value(r.get(c, "")) for c in cols) + " |" for r in val]
            lines.append("")
        else:
            lines.append(f"- **{key}**: {_md_value(val)}")
    return "\n".join(lines).rstrip() + "\n"


def _emit(report: dict, fmt: str) -> None:
    sys.stdout.write(render_json(report) if fmt == "json" else render_markdown(report))


def _table(t: CohomTable) -> dict:
    return {str(k): v for k, v in t.dims.items()}


def _load(path: str):
    try:
        gf = parse_group_file(path)
    except FileNotFoundError:
        raise UsageError(f"no such group file: {path}") from None
    G = close_group(gf.generators)
    return gf, G


def _analyze_report(gf, G) -> tuple[dict, bool]:
    report = stratification_report(G)
    findings = validate_hypotheses(G, report)
    classes = [
        {
            "rep": c.rep_index,
            "size": c.size,
            "order": c.order,
            "age": c.age,
            "fixed_dim": c.fixed_dim,
            "trace": format_cyc(G.trace(c.rep_index).promote(G.order_m)),
        }
        for c in conjugacy_classes(G)
    ]
    strata = [
        {
            "index": k,
            "orbit": s.orbit_id,
            "n_i": s.n_i,
            "m_i": s.m_i,
            "A": len(s.A_indices),
            "N": len(s.N_indices),
            "B": len(s.B_coset_reps),
        }
        for k, s in enumerate(report.strata)
    ]
    banners = []
    if not report.strata:
        banners.append("ALE case: G acts freely on the sphere, no singular strata")
    out = {
        "command": "analyze",
        "name": gf.name,
        "dimension": G.n,
        "cyclotomic_order": G.order_m,
        "order": len(G),
        "classes": classes,
        "strata": strata,
        "orbits": [list(o) for o in report.orbits],
        "length": report.length,
        "isolated": report.isolated,
        "sp_status": report.sp_status,
        "findings": [{"code": f.code, "ok": f.ok, "detail": f.detail} for f in findings],
        "banners": banners,
    }
    return out, all_ok(findings)


def cmd_analyze(path: str, fmt: str = "json") -> int:
    gf, G = _load(path)
    out, ok = _analyze_report(gf, G)
    _emit(out, fmt)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def cmd_validate(path: str, fmt: str = "json") -> int:
    gf, G = _load(path)
    report = stratification_report(G)
    findings = validate_hypotheses(G, report)
    ok = all_ok(findings)
    _emit({
        "command": "validate",
        "name": gf.name,
        "ok": ok,
        "findings": [{"code": f.code, "ok": f.ok, "detail": f.detail} for f in findings],
    }, fmt)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


def _pick_model(model: str, G, report, force_sp: bool) -> str:
    if model != "auto":
        return model
    if G.n == 3:
        return "su3"
    if G.n == 4 and (report.sp_status == "yes" or force_sp):
        return "sp2"
    return "ends"


def cohomology_report(gf, G, model: str = "auto") -> dict:
    report = stratification_report(G)
    model = _pick_model(model, G, report, gf.force_sp)
    E = end_geometry(G, report, gf.overrides)
    banners = []
    if G.n >= 4:
        banners.append(f"existence of a crepant resolution is assumed at n = {G.n}")
    provenance = []
    for k, o in enumerate(E.orbits):
        entry = {"orbit": k, "source": o.source, "n_i": o.n_i, "m_i": o.m_i,
                 "invariant": _table(o.invariant_table)}
        if o.source == "override":
            entry["heuristic"] = _table(o.heuristic_table)
            log.info("orbit %d: override %s replaces heuristic %s", k,
                     entry["invariant"], entry["heuristic"])
        provenance.append(entry)

    crepant = crepant_betti(conjugacy_classes(G), G.n)
    out = {
        "command": "cohomology",
        "name": gf.name,
        "model": model,
        "crepant_betti": _table(crepant),
        "end_l2": _table(end_l2(E)),
        "end_l2_weighted": _table(end_l2_weighted(E)),
        "boundary_betti": _table(boundary_betti(E)),
        "chi_l2": chi_l2(G),
        "provenance": provenance,
    }
    if model == "su3":
        x = su3_l2(G)
    elif model == "sp2":
        x = sp2_l2(G, force=gf.force_sp)
        if G.n == 4 and report.sp_status != "yes":
            banners.append(f"symplectic structure forced (check returned {report.sp_status})")
    elif model == "ends":
        x = None
        banners.append(f"no closed-form L2 table: unproven at this n = {G.n}; end data only")
    else:
        raise UsageError(f"unknown model {model!r}")
    if x is not None:
        out["l2"] = _table(x)
        out["l2_euler"] = x.euler()
        out["mv_ok"] = homological.mv_check(homological.mv_tables(G, E, x), G.n)
    out["banners"] = banners
    return out


def cmd_cohomology(path: str, model: str = "auto", fmt: str = "json") -> int:
    gf, G = _load(path)
    out = cohomology_report(gf, G, model)
    _emit(out, fmt)
    if "mv_ok" in out and not out["mv_ok"]:
        return EXIT_INTERNAL
    return EXIT_OK


def _parse_betti(spec: str | None) -> dict[int, int]:
    out: dict[int, int] = {}
    if not spec:
        return out
    for item in spec.split(","):
        try:
            deg, dim = item.split(":")
            out[int(deg)] = int(dim)
        except ValueError:
            raise UsageError(f"bad --betti item {item!r}; expected deg:dim") from None
    return out


def cone_line(k: int, d: int, a, b, relative: bool = False, betti: dict | None = None) -> str:
    betti = betti or {}
    table = CohomTable(betti, max(d - 1, 0))
    value, rule = cone_rule(k, d, WeightSpec(a, b), table, "relative" if relative else "absolute")
    if rule != ("lex-below" if relative else "lex-above"):
        return f"{value} ({rule})"
    deg = k - 1 if relative else k
    return f"{value} = b{deg}(V) ({rule})"


def cmd_cone(k: int, d: int, a: str, b: str, relative: bool, betti: str | None) -> int:
    try:
        fa, fb = Fraction(a), Fraction(b)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"weights must be rational, got a={a!r}, b={b!r}") from None
    if d < 1:
        raise UsageError("cone dimension d must be positive")
    try:
        line = cone_line(k, d, fa, fb, relative, _parse_betti(betti))
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(line)
    return EXIT_OK


def selfcheck(seed: int = 0, ladders: int = 1000, hardy_per_mode: int = 100) -> dict[str, tuple[int, int]]:
    rng = random.Random(seed)
    passed = 0
    for _ in range(ladders):
        passed += homological.verify_ladder(*homological.random_ladder(rng))
    hardy = analytic.hardy_suite(seed, hardy_per_mode)
    h_pass = sum(p for p, _ in hardy.values())
    h_total = sum(t for _, t in hardy.values())
    return {"ladder": (passed, ladders), "hardy": (h_pass, h_total), "cm": analytic.cm_suite()}


def cmd_selfcheck(seed: int = 0) -> int:
    res = selfcheck(seed)
    print(", ".join(f"{name}: {p}/{t}" for name, (p, t) in res.items()))
    return EXIT_OK if all(p == t for p, t in res.values()) else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qale", description="L2 cohomology bookkeeping for QALE quotients C^n/G.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log override provenance to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="group structure, strata and hypothesis findings")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "markdown"], default="json")

    p = sub.add_parser("cohomology", help="crepant, end, boundary and L2 tables")
    p.add_argument("file")
    p.add_argument("--model", choices=["auto", "su3", "sp2", "ends"], default="auto")
    p.add_argument("--format", choices=["json", "markdown"], default="json")

    p = sub.add_parser("validate", help="hypothesis findings only")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "markdown"], default="json")

    p = sub.add_parser("cone", help="weighted L2 cohomology of a cone over V")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--relative", action="store_true")
    p.add_argument("--betti", help="link Betti numbers as deg:dim,...")

    p = sub.add_parser("selfcheck", help="randomized ladder, Hardy and operator-norm suites")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # own handler so -v works even when the root logger is already configured
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("qale: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        if args.command == "analyze":
            return cmd_analyze(args.file, args.format)
        if args.command == "validate":
            return cmd_validate(args.file, args.format)
        if args.command == "cohomology":
            return cmd_cohomology(args.file, args.model, args.format)
        if args.command == "cone":
            return cmd_cone(args.k, args.d, args.a, args.b, args.relative, args.betti)
        if args.command == "selfcheck":
            return cmd_selfcheck(args.seed)
    except HypothesisFailure as e:
        print(f"qale: hypothesis failure: {e}", file=sys.stderr)
        return e.exit_code
    except QaleError as e:
        print(f"qale: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:  # pragma: no cover - last-resort guard
        print(f"qale: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        log.removeHandler(handler)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
