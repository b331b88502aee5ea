"""Command-line interface: ``quadgal {bounds,rayclass,tables,curve,walkthrough}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import bounds as B
from .audit.corpus import load_corpus, search_s3_candidates
from .audit.tables import (
    DEFAULT_CENSUS_BOUND,
    FAIL,
    audit_sextic,
    audit_table_field,
    p3field_record,
    table1_records,
    table2_records,
)
from .curves import (
    RATIONALITY_FIELDS,
    CurveModel,
    SingularCurve,
    nonexistence_report,
    odd_reduction_audit,
    two_torsion_field,
    two_torsion_rationality_audit,
)
from .data import load as load_data
from .quadratic import NINE_FIELDS
from .quadratic.field import DomainError, QuadraticField, splitting_of_prime
from .quadratic.rayclass import (
    ENUMERATION_BUDGET,
    UnsupportedPrime,
    check_rank_stabilization,
    is_power_of,
    local_degrees,
    nakagoshi_rank,
    ray_class_group,
    residue_ring_units,
    zeta_p_in_completion,
)
from .report import (
    DERIVED,
    EXIT_AUDIT_FAIL,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_UNSUPPORTED,
    EXIT_USAGE,
    FORMATS,
    PRINTED,
    RECOMPUTED,
    Report,
    render,
)

log = logging.getLogger("quadgal")

PRECISION_ENV = "QUADGAL_PRECISION"
MIN_PRECISION = 15
DEFAULT_SCAN_TO = 100_000
CONFIG_KEYS = {"precision", "format", "output", "census_bound", "budget", "scan_to", "corpus"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# bounds


_CHAIN_FOR = {(2, "ramified"): "p2_ramified_wild", (2, "inert"): "p2_inert_wild", (3, "ramified"): "p3_ramified_wild"}
_NOTES_FOR = {
    "p2_ramified_wild": ("ramified-p2-different-sup", "lower-bound-constant"),
    "p2_inert_wild": ("inert-p2-log-threshold", "lower-bound-constant"),
    "p3_ramified_wild": ("p3-malformed-A", "p3-threshold-rounding", "lower-bound-constant"),
}


def _tagged(result: B.ExclusionResult, provenance: str) -> dict:
    out = result.to_dict()
    out["provenance"] = provenance
    return out


def _printed(chain: str) -> dict:
    rec = load_data()["bound_chains"][chain]
    out = dict(rec["printed"])
    out["provenance"] = PRINTED
    return out


def bounds_section(p: int, base: str, wild: bool, precision: int, n_min: int = 60, scan_to: int = DEFAULT_SCAN_TO) -> dict:
    scenario = B.BoundScenario(p, base, "wild" if wild else "tame", n_min=n_min)
    notes = {n["id"]: n for n in B.discrepancy_notes(precision)}
    if not wild:
        res = B.tame_exclusion(scenario, precision)
        out = {"recomputed": _tagged(res, RECOMPUTED)}
        if (p, base) == (2, "ramified"):
            out["printed"] = _printed("p2_ramified_tame")
            out["notes"] = [notes["ramified-p2-tame-range"]]
        return out
    chain = _CHAIN_FOR.get((p, base))
    if chain is None:
        # raises UnsupportedScenario for split primes and unknown pairs
        B.different_in_terms_of_n(scenario)
    out = {"recomputed": _tagged(B.exclusion_threshold(scenario, precision, scan_to), RECOMPUTED)}
    if chain is not None:
        out["chain"] = chain
        out["literal"] = _tagged(B.literal_threshold(chain, precision, n_min, scan_to), DERIVED)
        out["recomputed_from_printed_inputs"] = _tagged(B.exclusion_threshold(B.literal_scenario(chain), precision, scan_to), RECOMPUTED)
        out["printed"] = _printed(chain)
        out["notes"] = [notes[i] for i in _NOTES_FOR[chain]]
    return out


def cmd_bounds(args, cfg: dict) -> Report:
    sec = bounds_section(args.p, args.base, not args.tame, cfg["precision"], args.n_min, cfg["scan_to"])
    summary = {
        "log_threshold": sec.get("literal", sec["recomputed"])["log_threshold"],
        "abs_threshold": sec.get("literal", sec["recomputed"])["abs_threshold"],
        "excluded_fundamental_discriminants": sec.get("literal", sec["recomputed"])["excluded_fundamental_discriminants"],
        "hard_fails": [],
    }
    scan = sec.get("literal", {}).get("integer_scan")
    if scan is not None and not scan["all_at_or_above_threshold"]:
        summary["hard_fails"].append("integer scan dips below the threshold")
    echo = {"p": args.p, "base": args.base, "wild": not args.tame, "n_min": args.n_min}
    return Report("bounds", {**cfg, **echo}, sec, summary)


# ---------------------------------------------------------------------------
# ray classes


def _claim_applies(d: int, p: int) -> bool:
    return (p == 2 and d in NINE_FIELDS) or (p == 3 and d == -3)


def rayclass_section(d: int, p: int, kmax: int, infinity: bool, budget: int) -> dict:
    K = QuadraticField(d)
    per_k = []
    for k in range(1, kmax + 1):
        r = ray_class_group(K, p, k, infinity, budget)
        row = r.as_dict()
        row["is_p_group"] = is_power_of(r.order, p)
        per_k.append(row)
    e, f = local_degrees(K, p)
    zeta = zeta_p_in_completion(K, p)
    residue = []
    for n in range(0, kmax + 1):
        enumerated = residue_ring_units(K, p, n + 1, budget).q_rank(p)
        formula = nakagoshi_rank(p, e, f, n, zeta)
        residue.append({"n": n, "formula_rank": formula, "enumerated_rank": enumerated, "match": formula == enumerated})
    return {
        "d": d,
        "p": p,
        "splitting": splitting_of_prime(K, p).kind,
        "ray_classes": per_k,
        "all_p_groups": all(row["is_p_group"] for row in per_k),
        "p_group_claim_applies": _claim_applies(d, p),
        "residue_ring_ranks": residue,
    }


def cmd_rayclass(args, cfg: dict) -> Report:
    sec = rayclass_section(args.d, args.p, args.kmax, args.infinity, cfg["budget"])
    fails = []
    if sec["p_group_claim_applies"] and not sec["all_p_groups"]:
        fails.append(f"ray class group of order not a power of {args.p}")
    fails += [f"rank mismatch at n={r['n']}" for r in sec["residue_ring_ranks"] if not r["match"]]
    summary = {
        "orders": [r["order"] for r in sec["ray_classes"]],
        "all_p_groups": sec["all_p_groups"],
        "hard_fails": fails,
    }
    echo = {"d": args.d, "p": args.p, "kmax": args.kmax, "infinity": args.infinity}
    return Report("rayclass", {**cfg, **echo}, sec, summary)


# ---------------------------------------------------------------------------
# tables


def _audit_rows(reports: list) -> tuple[list[dict], list[str]]:
    rows, fails = [], []
    for rep in reports:
        rows.append(rep.as_dict())
        for name in rep.hard_fails:
            fails.append(f"d={rep.subject['d']}: {name}")
    return rows, fails


def tables_section(which: str, census_bound: int) -> tuple[dict, list[str]]:
    if which == "table1":
        reports = [audit_table_field(r) for r in table1_records()]
    elif which == "p3field":
        reports = [audit_table_field(p3field_record())]
    elif which == "table2":
        reports = [audit_sextic(r, census_bound) for r in table2_records()]
    else:
        raise UsageError(f"unknown table {which!r}")
    rows, fails = _audit_rows(reports)
    verdicts = {str(rep.subject["d"]): rep.verdict for rep in reports}
    return {"which": which, "rows": rows, "verdicts": verdicts}, fails


def cmd_tables(args, cfg: dict) -> Report:
    if cfg.get("corpus"):
        try:
            corpus = load_corpus(cfg["corpus"])
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read corpus: {exc}") from exc
        res = search_s3_candidates(corpus, args.d, args.ramification, cfg["census_bound"])
        results = {
            "corpus": str(cfg["corpus"]),
            "row_errors": [{"row": e.row, "message": e.message} for e in corpus.errors],
            "candidates": [{"d": r.d, "polynomial": str(r.polynomial), "ramification": r.claimed_ramification} for r in res.candidates],
            "rejected": [{"entry": e.as_dict(), "hard_fails": rep.hard_fails, "audit": rep.as_dict()} for e, rep in res.rejected],
        }
        summary = {"candidates": len(res.candidates), "rejected": len(res.rejected), "row_errors": len(corpus.errors), "hard_fails": []}
        return Report("tables", {**cfg, "d": args.d, "ramification": args.ramification}, results, summary)
    sec, fails = tables_section(args.which, cfg["census_bound"])
    summary = {"rows": len(sec["rows"]), "verdicts": sec["verdicts"], "hard_fails": fails}
    return Report("tables", {**cfg, "which": args.which}, sec, summary)


# ---------------------------------------------------------------------------
# curves


def curve_section(E: CurveModel) -> dict:
    inv = E.invariants
    out = {
        "model": E.as_dict(),
        "invariants": inv.as_dict(),
        "reduction": odd_reduction_audit(E).as_dict(),
        "two_torsion": two_torsion_field(E).as_dict(),
    }
    if E.K.d in RATIONALITY_FIELDS:
        audit = two_torsion_rationality_audit(E)
        out["rational_two_torsion_audit"] = audit.verdict
    else:
        out["rational_two_torsion_audit"] = "field not covered"
    return out


def cmd_curve(args, cfg: dict) -> Report:
    if args.nonexistence:
        if args.d is None:
            raise UsageError("--nonexistence needs --d")
        rep = nonexistence_report(args.d)
        return Report("curve", {**cfg, "d": args.d, "nonexistence": True}, rep, {"conclusion": rep["conclusion"], "hard_fails": []})
    if not args.file:
        raise UsageError("curve needs --file or --nonexistence")
    try:
        obj = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read curve file: {exc}") from exc
    if args.d is not None:
        if "d" in obj and int(obj["d"]) != args.d:
            raise UsageError("--d disagrees with the curve file")
        obj["d"] = args.d
    try:
        E = CurveModel.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (SingularCurve, DomainError)):
            raise
        raise UsageError(f"malformed curve: {exc}") from exc
    if not E.is_integral():
        raise DomainError("curve model must be integral")
    sec = curve_section(E)
    fails = ["rational 2-torsion forced but absent"] if sec["rational_two_torsion_audit"] == "inconsistent" else []
    summary = {
        "image": sec["two_torsion"]["image"],
        "good_away_from_2": sec["reduction"]["good_away_from_2"],
        "rational_two_torsion_audit": sec["rational_two_torsion_audit"],
        "hard_fails": fails,
    }
    return Report("curve", {**cfg, "file": Path(args.file).name}, sec, summary)


# ---------------------------------------------------------------------------
# walkthrough


WALKTHROUGH_CURVES = (
    ("x^3 - x over Q(i)", {"d": -1, "a4": [-1, 0]}),
    ("x^3 - 81x over Q(i)", {"d": -1, "a4": [-81, 0]}),
    ("x^3 + x + 1 over Q(sqrt 2)", {"d": 2, "a4": [1, 0], "a6": [1, 0]}),
)


def walkthrough(cfg: dict) -> tuple[dict, list[str]]:
    prec, budget = cfg["precision"], cfg["budget"]
    fails: list[str] = []
    doc: dict = {}

    doc["1_bounds"] = {
        "p2_ramified_wild": bounds_section(2, "ramified", True, prec, scan_to=cfg["scan_to"]),
        "p2_inert_wild": bounds_section(2, "inert", True, prec, scan_to=cfg["scan_to"]),
        "p2_ramified_tame": bounds_section(2, "ramified", False, prec),
    }
    for name, sec in doc["1_bounds"].items():
        scan = sec.get("literal", {}).get("integer_scan")
        if scan is not None and not scan["all_at_or_above_threshold"]:
            fails.append(f"{name}: integer scan")

    rays = {}
    for d in NINE_FIELDS:
        sec = rayclass_section(d, 2, 5, True, budget)
        rays[str(d)] = {
            "orders": [r["order"] for r in sec["ray_classes"]],
            "all_2_groups": sec["all_p_groups"],
            "residue_ranks_match": all(r["match"] for r in sec["residue_ring_ranks"]),
            "rank_stabilization": check_rank_stabilization(QuadraticField(d), 2),
        }
        if not sec["all_p_groups"]:
            fails.append(f"d={d}: ray class group not a 2-group")
        if not rays[str(d)]["residue_ranks_match"]:
            fails.append(f"d={d}: residue ring rank mismatch")
    three_rank = {}
    for d in (5, -3):
        r = ray_class_group(QuadraticField(d), 2, 1, True, budget)
        three_rank[str(d)] = r.q_ranks[3]
        if r.q_ranks[3] != 0:
            fails.append(f"d={d}: nonzero 3-rank at (2)")
    doc["2_ray_classes_p2"] = {"fields": rays, "three_rank_at_2_with_infinity": three_rank}
    doc["3_table1"], f1 = tables_section("table1", cfg["census_bound"])
    fails += f1

    doc["4_p3"] = {
        "bounds": bounds_section(3, "ramified", True, prec, scan_to=cfg["scan_to"]),
        "ray_classes": rayclass_section(-3, 3, 5, True, budget),
        "rank_stabilization": check_rank_stabilization(QuadraticField(-3), 3),
    }
    if not doc["4_p3"]["ray_classes"]["all_p_groups"]:
        fails.append("d=-3: ray class group not a 3-group")
    doc["4_p3"]["field"], f3 = tables_section("p3field", cfg["census_bound"])
    fails += f3

    doc["5_table2"], f5 = tables_section("table2", cfg["census_bound"])
    fails += f5

    curves = {}
    for label, obj in WALKTHROUGH_CURVES:
        curves[label] = curve_section(CurveModel.from_json(obj))
        if curves[label]["rational_two_torsion_audit"] == "inconsistent":
            fails.append(f"{label}: rational 2-torsion forced but absent")
    doc["6_curves"] = {
        "examples": curves,
        "nonexistence": {str(d): nonexistence_report(d) for d in NINE_FIELDS},
    }
    return doc, fails


def cmd_walkthrough(args, cfg: dict) -> Report:
    doc, fails = walkthrough(cfg)
    summary = {
        "nonexistence_fields": [int(d) for d, r in doc["6_curves"]["nonexistence"].items() if r["conclusion"] == "nonexistence"],
        "table2_verdicts": doc["5_table2"]["verdicts"],
        "hard_fails": fails,
    }
    return Report("walkthrough", cfg, doc, summary)


# ---------------------------------------------------------------------------
# parsing and dispatch


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int, default=None, help=f"significant digits (>= {MIN_PRECISION}; default ${PRECISION_ENV} or {B.DEFAULT_PRECISION})")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--output", default=None, help="write the report here instead of stdout")
    p.add_argument("--config", default=None, help="JSON file with defaults for these options")
    p.add_argument("--census-bound", type=int, default=None, dest="census_bound")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget for residue groups")
    p.add_argument("--scan-to", type=int, default=None, dest="scan_to", help="largest n in the per-n bound scan")
    p.add_argument("--timing", action="store_true", help="print elapsed time to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadgal", description="Audits for Galois extensions of small quadratic fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="discriminant exclusion thresholds")
    _common(b)
    b.add_argument("--p", type=int, choices=(2, 3), required=True)
    b.add_argument("--base", choices=("ramified", "inert", "split"), required=True)
    w = b.add_mutually_exclusive_group()
    w.add_argument("--wild", action="store_true", default=True)
    w.add_argument("--tame", action="store_true")
    b.add_argument("--n-min", type=int, default=60, dest="n_min")

    r = sub.add_parser("rayclass", help="ray class groups modulo powers of a prime over p")
    _common(r)
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--p", type=int, choices=(2, 3), required=True)
    r.add_argument("--kmax", type=int, default=5)
    r.add_argument("--infinity", action=argparse.BooleanOptionalAction, default=True)

    t = sub.add_parser("tables", help="audit embedded field tables or a corpus")
    _common(t)
    t.add_argument("--which", choices=("table1", "table2", "p3field"), default="table1")
    t.add_argument("--corpus", default=None)
    t.add_argument("--d", type=int, default=None, help="corpus filter")
    t.add_argument("--ramification", choices=("only_over_2", "unramified"), default=None, help="corpus filter")

    c = sub.add_parser("curve", help="elliptic curve audits")
    _common(c)
    c.add_argument("--file", default=None)
    c.add_argument("--d", type=int, default=None)
    c.add_argument("--nonexistence", action="store_true", help="report on curves with good reduction everywhere")

    wk = sub.add_parser("walkthrough", help="run every audit and emit one document")
    _common(wk)
    return parser


def resolve_config(args) -> dict:
    file_cfg: dict = {}
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        if not isinstance(file_cfg, dict) or set(file_cfg) - CONFIG_KEYS:
            raise UsageError(f"config keys must be among {sorted(CONFIG_KEYS)}")

    def pick(key, default):
        v = getattr(args, key, None)
        if v is not None:
            return v
        return file_cfg.get(key, default)

    env_prec = os.environ.get(PRECISION_ENV)
    try:
        default_prec = int(env_prec) if env_prec else B.DEFAULT_PRECISION
    except ValueError as exc:
        raise UsageError(f"{PRECISION_ENV} must be an integer") from exc
    cfg = {
        "precision": int(pick("precision", default_prec)),
        "format": pick("format", "json"),
        "census_bound": int(pick("census_bound", DEFAULT_CENSUS_BOUND)),
        "budget": int(pick("budget", ENUMERATION_BUDGET)),
        "scan_to": int(pick("scan_to", DEFAULT_SCAN_TO)),
    }
    corpus = pick("corpus", None)
    if corpus:
        cfg["corpus"] = corpus
    if cfg["precision"] < MIN_PRECISION:
        raise UsageError(f"precision must be at least {MIN_PRECISION}")
    if cfg["format"] not in FORMATS:
        raise UsageError(f"format must be one of {FORMATS}")
    if min(cfg["budget"], cfg["scan_to"]) < 1:
        raise UsageError("budgets must be positive")
    if cfg["census_bound"] < 50:
        raise UsageError("census bound must be at least 50")
    return cfg


COMMANDS = {
    "bounds": cmd_bounds,
    "rayclass": cmd_rayclass,
    "tables": cmd_tables,
    "curve": cmd_curve,
    "walkthrough": cmd_walkthrough,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = resolve_config(args)
        output = args.output or None
        start = time.perf_counter()
        report = COMMANDS[args.command](args, cfg)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(f"quadgal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedPrime, B.UnsupportedScenario) as exc:
        print(f"quadgal: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (SingularCurve, DomainError) as exc:
        print(f"quadgal: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    report.timing = {"seconds": round(elapsed, 3)}
    text = render(report, cfg["format"])
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.timing:
        print(f"quadgal: {args.command} took {elapsed:.2f} s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_AUDIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
