"""Command-line front end.

Subcommands tie the library into reproducible batch runs over JSON
files:

  gen-words      emit a code: the framed two-letter family up to a
                 length, or a guarded code for a demand histogram
  check-overlap  decide the overlap property for a code file
  factorize      greedy-decode a word over a code file
  validate       associativity plus the two length-function conditions
  embed          assign codewords, compute induced lengths, verify
  orbit          explore one element's congruence class and cross-check
                 the induced length against the orbit minimum
  cyclic         truncated monogenic instances: validation, DP lengths,
                 distortion report

Exit codes: 0 all checks pass, 1 a verification or violation finding,
2 malformed input.  Reports are deterministic: identical inputs and
flags produce byte-identical output (JSON is emitted with sorted keys,
and the seed, when given, is echoed into the report).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import (
    NonPositiveLength,
    cyclic_assignment,
    cyclic_length_table,
    distortion_report,
    make_cyclic,
)
from .embedding import (
    InfeasibleAssignment,
    VerificationFailure,
    assign_equivalent,
    assign_exact,
    build_presentation,
    congruence_orbit,
    default_length_cap,
    induced_lengths,
    verify_induced_lengths,
    verify_orbit_factorizes,
)
from .errors import InputError, SemilenError
from .semigroup import (
    SubadditivityError,
    check_length_conditions,
    semigroup_from_json,
    validate_semigroup,
)
from .words import (
    build_guarded_code,
    check_overlap,
    code_from_json,
    code_to_json,
    factorize,
    framed_code,
    word_from_str,
    word_to_str,
)

PASS, FINDING, BAD_INPUT = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; built from parsed flags."""

    subcommand: str
    path: str | None = None
    word: str | None = None
    element: str | None = None
    demand: str | None = None
    max_length: int | None = None
    mode: str = "exact"
    d: str | None = None
    length_cap: int | None = None
    state_cap: int = 10**6
    imax: int | None = None
    formula: str | None = None
    table: str | None = None
    seed: int | None = None
    format: str = "json"
    verbose: bool = False


def _load_json(path: str) -> object:
    """Read a JSON document from a file or stdin ('-'), with positioned
    diagnostics on parse failure."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None


def _frac(f: Fraction | None) -> str | None:
    return None if f is None else str(f)


def _parse_d(raw: str | None) -> Fraction | None:
    if raw is None:
        return None
    try:
        d = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse --d value {raw!r} as a rational") from None
    if d <= 0:
        raise InputError(f"--d must be positive, got {d}")
    return d


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _emit_csv(rows: list[list[object]], header: list[str]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _parse_demand(raw: str) -> dict[int, int]:
    if os.path.exists(raw) or raw == "-":
        doc = _load_json(raw)
    else:
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError:
            raise InputError(
                f"--demand value {raw!r} is neither a file nor inline JSON"
            ) from None
    if not isinstance(doc, dict):
        raise InputError("demand histogram must be a JSON object {length: count}")
    out: dict[int, int] = {}
    for k, v in doc.items():
        try:
            length = int(k)
        except (TypeError, ValueError):
            raise InputError(f"demand key {k!r} is not an integer length") from None
        if not isinstance(v, int) or isinstance(v, bool):
            raise InputError(f"demand[{k}] = {v!r} is not an integer count")
        out[length] = v
    return out


def cmd_gen_words(cfg: RunConfig) -> int:
    if (cfg.demand is None) == (cfg.max_length is None):
        raise InputError("gen-words needs exactly one of --max-len or --demand")
    if cfg.demand is not None:
        code = build_guarded_code(_parse_demand(cfg.demand))
        meta: dict[str, object] = {"family": "guarded"}
    else:
        code = framed_code(cfg.max_length)
        meta = {"family": "framed", "max_length": cfg.max_length}
    meta["count"] = len(code.words)
    meta["seed"] = cfg.seed
    if cfg.format == "json":
        doc = code_to_json(code)
        doc["meta"] = meta
        _emit_json(doc)
    elif cfg.format == "csv":
        _emit_csv(
            [[len(w), word_to_str(w, code.alphabet)] for w in code.words],
            ["length", "word"],
        )
    else:
        for w in code.words:
            sys.stdout.write(word_to_str(w, code.alphabet) + "\n")
    return PASS


def cmd_check_overlap(cfg: RunConfig) -> int:
    code = code_from_json(_load_json(cfg.path))
    rep = check_overlap(code)
    doc: dict[str, object] = {
        "command": "check-overlap",
        "ok": rep.ok,
        "word_count": len(code.words),
        "seed": cfg.seed,
        "violation": None,
    }
    if rep.violation is not None:
        v = rep.violation
        doc["violation"] = {
            "kind": v.kind,
            "y": word_to_str(v.y, code.alphabet),
            "z": word_to_str(v.z, code.alphabet),
            "u": None if v.u is None else word_to_str(v.u, code.alphabet),
            "position": v.position,
        }
    if cfg.format == "text":
        if rep.ok:
            sys.stdout.write("overlap property holds\n")
        else:
            sys.stdout.write(f"overlap violation: {doc['violation']}\n")
    else:
        _emit_json(doc)
    return PASS if rep.ok else FINDING


def cmd_factorize(cfg: RunConfig) -> int:
    code = code_from_json(_load_json(cfg.path))
    w = word_from_str(cfg.word, code.alphabet)
    res = factorize(w, code)
    doc: dict[str, object] = {
        "command": "factorize",
        "word": word_to_str(w, code.alphabet),
        "ok": res.ok,
        "seed": cfg.seed,
        "factors": None,
        "failure_position": res.failure_position,
    }
    if res.ok:
        doc["factors"] = [word_to_str(f, code.alphabet) for f in res.factors]
    if cfg.format == "text":
        if res.ok:
            sys.stdout.write(" ".join(doc["factors"]) + "\n")
        else:
            sys.stdout.write(f"no factorization from position {res.failure_position}\n")
    else:
        _emit_json(doc)
    return PASS if res.ok else FINDING


def cmd_validate(cfg: RunConfig) -> int:
    data = semigroup_from_json(_load_json(cfg.path))
    sg = data.semigroup
    triple = validate_semigroup(sg.table)
    doc: dict[str, object] = {
        "command": "validate",
        "order": sg.order,
        "associative": triple is None,
        "associativity_witness": list(triple) if triple else None,
        "seed": cfg.seed,
        "length_checks": None,
    }
    ok = triple is None
    if ok and data.lengths is not None:
        cond = check_length_conditions(sg, data.lengths)
        doc["length_checks"] = {
            "subadditive": cond.ok,
            "violations": [
                [sg.name_of(g), sg.name_of(h)] for g, h in cond.violations
            ],
            "growth_witness": cond.witness.a,
        }
        ok = ok and cond.ok
    if cfg.format == "text":
        sys.stdout.write(("valid\n" if ok else "violations found\n"))
    else:
        _emit_json(doc)
    return PASS if ok else FINDING


def _require_lengths(data) -> dict[int, int]:
    if data.lengths is None:
        raise InputError("this command needs a 'length' field in the semigroup file")
    return data.lengths


def _make_assignment(sg, lengths, cfg: RunConfig):
    if cfg.mode == "exact":
        return assign_exact(sg, lengths)
    return assign_equivalent(sg, lengths, d=_parse_d(cfg.d))


def cmd_embed(cfg: RunConfig) -> int:
    data = semigroup_from_json(_load_json(cfg.path))
    sg = data.semigroup
    lengths = _require_lengths(data)
    finding: dict[str, object] | None = None
    try:
        asg = _make_assignment(sg, lengths, cfg)
        table = induced_lengths(sg, asg)
        report = verify_induced_lengths(sg, lengths, asg, table)
    except SubadditivityError as exc:
        finding = {
            "kind": "subadditivity",
            "pair": [sg.name_of(x) for x in exc.pair],
        }
    except InfeasibleAssignment as exc:
        finding = {
            "kind": "infeasible_assignment",
            "element": sg.name_of(exc.element),
            "window": [str(exc.interval[0]), str(exc.interval[1])],
        }
    except VerificationFailure as exc:
        finding = {
            "kind": "verification_failure",
            "element": sg.name_of(exc.element),
            "expected": str(exc.expected),
            "got": exc.got,
        }
    if finding is not None:
        doc = {"command": "embed", "ok": False, "finding": finding, "seed": cfg.seed}
        if cfg.format == "text":
            sys.stdout.write(f"finding: {finding}\n")
        else:
            _emit_json(doc)
        return FINDING

    alphabet = asg.code.alphabet
    doc = {
        "command": "embed",
        "ok": report.ok,
        "mode": asg.mode,
        "d": _frac(asg.d),
        "constants": [str(report.constants[0]), str(report.constants[1])],
        "generators": alphabet.size,
        "codewords": {sg.name_of(g): word_to_str(asg.x[g], alphabet) for g in sg.elements()},
        "length": {sg.name_of(g): lengths[g] for g in sg.elements()},
        "cost": {sg.name_of(g): table.cost[g] for g in sg.elements()},
        "relaxation_passes": table.passes,
        "seed": cfg.seed,
    }
    if cfg.format == "csv":
        _emit_csv(
            [
                [sg.name_of(g), lengths[g], table.cost[g], word_to_str(asg.x[g], alphabet)]
                for g in sg.elements()
            ],
            ["element", "length", "cost", "codeword"],
        )
    elif cfg.format == "text":
        tag = "cost = l" if asg.mode == "exact" else f"l <= cost <= d*l, d = {asg.d}"
        sys.stdout.write(f"ok: {tag}\n")
        for g in sg.elements():
            sys.stdout.write(
                f"  {sg.name_of(g)}: l = {lengths[g]}, cost = {table.cost[g]}, "
                f"X = {word_to_str(asg.x[g], alphabet)}\n"
            )
    else:
        _emit_json(doc)
    return PASS


def cmd_orbit(cfg: RunConfig) -> int:
    data = semigroup_from_json(_load_json(cfg.path))
    sg = data.semigroup
    lengths = _require_lengths(data)
    g = sg.resolve(cfg.element)
    asg = _make_assignment(sg, lengths, cfg)
    p = build_presentation(sg, asg)
    cap = cfg.length_cap if cfg.length_cap is not None else default_length_cap(asg)
    rep = congruence_orbit(p, asg.x[g], cap, cfg.state_cap)
    if cfg.verbose:
        for depth, size in enumerate(rep.depth_sizes):
            sys.stderr.write(f"depth {depth}: {size} new words\n")
    checked = verify_orbit_factorizes(rep, asg.code)
    dp = induced_lengths(sg, asg).cost[g]
    oracle = len(rep.min_word)
    agreement = "confirmed" if rep.saturated and oracle == dp else (
        "mismatch" if rep.saturated else "not_certified"
    )
    alphabet = asg.code.alphabet
    doc = {
        "command": "orbit",
        "element": sg.name_of(g),
        "start": word_to_str(asg.x[g], alphabet),
        "length_cap": rep.length_cap,
        "state_cap": cfg.state_cap,
        "orbit_size": len(rep.words),
        "depth_sizes": list(rep.depth_sizes),
        "dropped": rep.dropped,
        "saturated": rep.saturated,
        "states_capped": rep.states_capped,
        "min_word": word_to_str(rep.min_word, alphabet),
        "orbit_min_length": oracle,
        "induced_length": dp,
        "agreement": agreement,
        "words_factor_checked": checked,
        "ok": agreement != "mismatch",
        "seed": cfg.seed,
    }
    if cfg.format == "text":
        sys.stdout.write(
            f"orbit of {doc['element']}: {doc['orbit_size']} words, "
            f"min {oracle}, induced {dp}, {agreement}\n"
        )
    else:
        _emit_json(doc)
    return PASS if agreement != "mismatch" else FINDING


def cmd_cyclic(cfg: RunConfig) -> int:
    if (cfg.formula is None) == (cfg.table is None):
        raise InputError("cyclic needs exactly one of --formula or --table")
    if cfg.formula is not None:
        spec: object = cfg.formula
        if cfg.imax is None:
            raise InputError("--formula needs --imax")
    else:
        doc_in = _load_json(cfg.table)
        if isinstance(doc_in, dict) and "values" in doc_in:
            doc_in = doc_in["values"]
        if not isinstance(doc_in, list):
            raise InputError("--table file must hold a JSON list (or {'values': [...]})")
        spec = doc_in
    try:
        inst = make_cyclic(spec, i_max=cfg.imax)
    except SubadditivityError as exc:
        finding = {"kind": "subadditivity", "pair": list(exc.pair)}
        if cfg.format == "text":
            sys.stdout.write(f"finding: {finding}\n")
        else:
            _emit_json({"command": "cyclic", "ok": False, "finding": finding, "seed": cfg.seed})
        return FINDING

    d = _parse_d(cfg.d)
    try:
        asg = cyclic_assignment(inst, mode=cfg.mode, d=d)
    except InfeasibleAssignment as exc:
        finding = {
            "kind": "infeasible_assignment",
            "exponent": exc.element,
            "window": [str(exc.interval[0]), str(exc.interval[1])],
        }
        if cfg.format == "text":
            sys.stdout.write(f"finding: {finding}\n")
        else:
            _emit_json({"command": "cyclic", "ok": False, "finding": finding, "seed": cfg.seed})
        return FINDING
    table = cyclic_length_table(inst, asg)
    rep = distortion_report(inst, table)

    if cfg.mode == "exact":
        bad = [i for i in range(1, inst.i_max + 1) if table.cost[i] != inst.values[i - 1]]
    else:
        dd = asg.d
        bad = [
            i
            for i in range(1, inst.i_max + 1)
            if not inst.values[i - 1] <= table.cost[i] <= dd * inst.values[i - 1]
        ]
    ok = not bad

    rows = [[r.i, r.length, r.cost, str(r.ratio)] for r in rep.rows]
    summary = {
        "command": "cyclic",
        "ok": ok,
        "source": inst.source,
        "i_max": inst.i_max,
        "mode": cfg.mode,
        "d": _frac(asg.d),
        "note": inst.note,
        "growth_witness": {
            "a": inst.witness.a,
            "half_window_a": inst.witness.half_a,
            "growth_warning": inst.witness.growth_warning,
        },
        "constants_vs_length": [str(c) for c in rep.constants_vs_length],
        "constants_vs_intrinsic": [str(c) for c in rep.constants_vs_intrinsic],
        "spread": {"half": _frac(rep.half_spread), "full": _frac(rep.full_spread)},
        "distorted_at_scale": rep.distorted_at_scale,
        "truncation_note": rep.truncation_note,
        "first_mismatch": bad[0] if bad else None,
        "seed": cfg.seed,
    }
    if cfg.format == "csv":
        _emit_csv(rows, ["i", "l", "cost", "ratio"])
    elif cfg.format == "text":
        sys.stdout.write(
            f"{'ok' if ok else 'MISMATCH'}: {inst.source}, i_max {inst.i_max}, "
            f"witness a = {inst.witness.a}, "
            f"distorted_at_scale = {rep.distorted_at_scale}\n"
        )
    else:
        summary["rows"] = rows
        _emit_json(summary)
    return PASS if ok else FINDING


_HANDLERS = {
    "gen-words": cmd_gen_words,
    "check-overlap": cmd_check_overlap,
    "factorize": cmd_factorize,
    "validate": cmd_validate,
    "embed": cmd_embed,
    "orbit": cmd_orbit,
    "cyclic": cmd_cyclic,
}


def run(cfg: RunConfig) -> int:
    """Dispatch one configured invocation; returns the exit code."""
    handler = _HANDLERS.get(cfg.subcommand)
    if handler is None:
        raise InputError(f"unknown subcommand {cfg.subcommand!r}")
    try:
        return handler(cfg)
    except NonPositiveLength as exc:
        sys.stderr.write(f"error: {exc}\n")
        return BAD_INPUT
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return BAD_INPUT
    except SemilenError as exc:
        sys.stderr.write(f"finding: {exc}\n")
        return FINDING


def _add_common(sp: argparse.ArgumentParser, formats=("json", "csv", "text")) -> None:
    sp.add_argument("--format", choices=formats, default="json")
    sp.add_argument("--seed", type=int, default=None, help="echoed into the report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="semilen",
        description="length-preserving semigroup embeddings: codes, checks, reports",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("gen-words", help="emit a framed-family or guarded code")
    sp.add_argument("--max-len", type=int, dest="max_length", default=None)
    sp.add_argument("--demand", default=None, help="JSON histogram {length: count}, inline or a file")
    _add_common(sp)

    sp = sub.add_parser("check-overlap", help="decide the overlap property for a code file")
    sp.add_argument("path", help="code JSON file, or - for stdin")
    _add_common(sp, formats=("json", "text"))

    sp = sub.add_parser("factorize", help="greedy-decode a word over a code file")
    sp.add_argument("path", help="code JSON file, or - for stdin")
    sp.add_argument("word", help="word rendered with letter names, e.g. b1b1b1b2b1b2b2b2")
    _add_common(sp, formats=("json", "text"))

    sp = sub.add_parser("validate", help="check associativity and the length conditions")
    sp.add_argument("path", help="semigroup JSON file, or - for stdin")
    _add_common(sp, formats=("json", "text"))

    sp = sub.add_parser("embed", help="assign codewords and verify induced lengths")
    sp.add_argument("path", help="semigroup JSON file with a length field")
    sp.add_argument("--mode", choices=("exact", "equiv"), default="exact")
    sp.add_argument("--d", default=None, help="equivalence parameter, a rational > 1")
    _add_common(sp)

    sp = sub.add_parser("orbit", help="explore one element's congruence class")
    sp.add_argument("path", help="semigroup JSON file with a length field")
    sp.add_argument("--element", required=True, help="element name or index")
    sp.add_argument("--mode", choices=("exact", "equiv"), default="exact")
    sp.add_argument("--d", default=None)
    sp.add_argument("--length-cap", type=int, dest="length_cap", default=None)
    sp.add_argument("--state-cap", type=int, dest="state_cap", default=10**6)
    sp.add_argument("--verbose", action="store_true", help="stream per-depth counts to stderr")
    _add_common(sp, formats=("json", "text"))

    sp = sub.add_parser("cyclic", help="truncated monogenic instance report")
    sp.add_argument("--formula", default=None, help="pow:A | pow:pi-e | lin:B | log2")
    sp.add_argument("--table", default=None, help="JSON file with the value list")
    sp.add_argument("--imax", type=int, default=None)
    sp.add_argument("--mode", choices=("exact", "equiv"), default="exact")
    sp.add_argument("--d", default=None)
    _add_common(sp)

    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = {f for f in RunConfig.__dataclass_fields__}
    kwargs = {k: v for k, v in vars(ns).items() if k in fields}
    return RunConfig(**kwargs)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
