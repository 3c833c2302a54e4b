"""Command-line frontend.

Exit codes: 0 success, 2 usage or input error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import __version__, _backend, baselines, corpus
from .ingest import IngestError, IngestReport, SymbolizationPolicy, ingest_bytes, ingest_file
from .measures import KINDS, NORMALIZED, MeasureReport, profile_spectrum, report_from_spectra, round_bits, spectra

SCHEMA_VERSION = 1
LARGE_INPUT_BYTES = 10 * 1024 * 1024
PAPER_T3 = {"T3a": 29, "T3b": 50}
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class CliError(Exception):
    pass


class InvariantViolation(Exception):
    pass


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="input file (omit with --fixture)")
    p.add_argument("--fixture", help="use an embedded reference pattern instead of a file")
    p.add_argument("--symbol", help="bit | byte | utf8-char | token:W (default: byte, with a warning)")
    p.add_argument("--newline", choices=("keep", "strip", "lf"))
    p.add_argument("--declared-alphabet", type=int, metavar="K")
    p.add_argument("--max-scales", type=int, metavar="M",
                   help="scan at most M scales (a dense head plus a log-spaced tail)")
    p.add_argument("--workers", type=int, default=1, help="threads used across scales")
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    p.add_argument("--verbose", action="store_true", help="add version and kernel provenance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infometer", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"infometer {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("analyze", help="measure I_MAX, I_S and I_SSM of one input")
    _add_input_args(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--with-spectrum", action="store_true", help="include all three spectra")

    p = sub.add_parser("spectrum", help="dump spectra as long-form plot data")
    _add_input_args(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--kinds", default=",".join(KINDS), help="comma list of raw,maximal,normalized")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--large-limit", type=int, default=LARGE_INPUT_BYTES, metavar="BYTES")

    p = sub.add_parser("compare", help="compare I_SSM with compression complexity")
    _add_input_args(p)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--backends", default=",".join([baselines.ZIP, baselines.SEVENZIP, baselines.ZPAQ]))
    p.add_argument("--config", metavar="FILE", help="key=value file with backend command templates")

    p = sub.add_parser("demo-sensitivity", help="one substituted element versus a clean repetition")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("profile", help="per-scale block counts and timings")
    _add_input_args(p)
    p.add_argument("--buckets", action="store_true", help="aggregate over power-of-two scale ranges")

    p = sub.add_parser("export", help="write an embedded fixture to a file")
    p.add_argument("fixture", choices=sorted(corpus.FIXTURES))
    p.add_argument("--out", metavar="FILE", required=True)

    p = sub.add_parser("generate", help="write a seeded synthetic pattern to a file")
    p.add_argument("kind", choices=corpus.KINDS)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--alphabet", help="symbols as a string, one character each")
    p.add_argument("--period", help="period for the repeat kinds, one character per symbol")
    p.add_argument("--error-rate", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--unit", choices=("bit", "character"), default="character",
                   help="bit packs a 0/1 pattern MSB-first into bytes")
    p.add_argument("--out", metavar="FILE", required=True)
    return parser


def _load(args) -> tuple[IngestReport, dict]:
    declared = args.declared_alphabet
    if args.fixture:
        if args.path:
            raise CliError("give either a path or --fixture, not both")
        try:
            fx = corpus.get(args.fixture)
        except corpus.UnknownFixture as e:
            raise CliError(e.args[0]) from None
        if args.symbol:
            policy = SymbolizationPolicy.parse(args.symbol, args.newline, declared)
        else:
            base = fx.policy
            policy = SymbolizationPolicy(base.mode, base.width, args.newline or base.newline, declared)
        return ingest_bytes(fx.to_bytes(), policy), {"fixture": fx.id}
    if not args.path:
        raise CliError("an input path or --fixture is required")
    if not args.symbol:
        print("infometer: warning: no --symbol given, reading bytes", file=sys.stderr)
    policy = SymbolizationPolicy.parse(args.symbol or "byte", args.newline, declared)
    return ingest_file(args.path, policy), {"path": args.path}


def _descriptor(ing: IngestReport, source: dict) -> dict:
    return dict(source, source_bytes=ing.source_bytes, dropped_symbols=ing.dropped_symbols,
                stripped_newlines=ing.stripped_newlines)


def _bits(x: float) -> dict:
    return {"value_bits": round_bits(x), "value_bits_exact": x}


def _measures(r: MeasureReport) -> dict:
    return {
        "n": r.n,
        "k": r.k,
        "argmin_scale": r.argmin_scale,
        "i_max": _bits(r.i_max),
        "i_shannon": _bits(r.i_shannon),
        "i_ssm": _bits(r.i_ssm),
        "i_shannon_rel": r.i_shannon_rel,
        "i_ssm_rel": r.i_ssm_rel,
    }


def _check(r: MeasureReport) -> None:
    if r.k <= r.n and not (r.i_ssm <= r.i_shannon + 1e-9 and r.i_shannon <= r.i_max + 1e-9):
        raise InvariantViolation(f"ordering I_SSM <= I_S <= I_MAX violated: {r}")
    if r.i_ssm < 0 or r.i_shannon < 0:
        raise InvariantViolation(f"negative information: {r}")


def _spectrum_rows(s, kinds) -> list[dict]:
    argmin = s.normalized.argmin()
    rows = []
    for r in s.raw.scales():
        for kind in kinds:
            rows.append({"scale": r, "kind": kind, "bits": s.by_kind(kind)[r],
                         "is_argmin": int(kind == NORMALIZED and r == argmin)})
    return rows


def _record(args, ing, source, report, rows=None, comparison=None) -> dict:
    rec = {
        "schema_version": SCHEMA_VERSION,
        "input": _descriptor(ing, source),
        "policy": ing.policy.describe(),
        "measures": _measures(report),
    }
    if ing.warnings:
        rec["warnings"] = list(ing.warnings)
    if rows is not None:
        rec["spectrum"] = rows
    if comparison is not None:
        rec["compression"] = _comparison_dict(comparison)
    if getattr(args, "verbose", False):
        rec["provenance"] = {"version": __version__, "kernel": _backend.NAME}
    return rec


def _comparison_dict(c: baselines.Comparison) -> dict:
    return {
        "results": [
            {"backend": r.backend, "input_bits": r.input_bits, "output_bits": r.output_bits,
             "raw_bits": r.raw_bits, "ratio": r.ratio, "relative": r.output_bits / c.report.i_max
             if c.report.i_max else 0.0, "container_overhead_included": r.container_overhead_included,
             "version": r.version}
            for r in c.results
        ],
        "skipped": [{"backend": s.backend, "reason": s.reason} for s in c.skipped],
        "overhead_dominated": c.overhead_dominated,
    }


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _measure_csv(report: MeasureReport) -> list[tuple]:
    rows = [("n", report.n, report.n), ("k", report.k, report.k),
            ("argmin_scale", report.argmin_scale, report.argmin_scale)]
    for name in ("i_max", "i_shannon", "i_ssm"):
        x = getattr(report, name)
        rows.append((name, round_bits(x), x))
    for name in ("i_shannon_rel", "i_ssm_rel"):
        x = getattr(report, name)
        rows.append((name, x, x))
    return rows


def _compute(args, ing: IngestReport):
    s = spectra(ing.pattern, ing.policy.declared_alphabet, max_scales=args.max_scales,
                workers=args.workers)
    report = report_from_spectra(ing.pattern, s)
    _check(report)
    return s, report


def cmd_analyze(args) -> str:
    ing, source = _load(args)
    s, report = _compute(args, ing)
    if args.format == "csv":
        out = _csv(("quantity", "value", "value_exact"), _measure_csv(report))
        if args.with_spectrum:
            out += "\n" + _csv(("scale", "kind", "bits", "is_argmin"),
                               [tuple(r.values()) for r in _spectrum_rows(s, KINDS)])
        return out
    rows = _spectrum_rows(s, KINDS) if args.with_spectrum else None
    return _json(_record(args, ing, source, report, rows))


def cmd_spectrum(args) -> str:
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    bad = [k for k in kinds if k not in KINDS]
    if bad or not kinds:
        raise CliError(f"unknown spectrum kind(s): {', '.join(bad) or '(none)'}")
    ing, source = _load(args)
    if ing.source_bytes > args.large_limit and not args.allow_large and args.max_scales is None:
        raise CliError(f"input is {ing.source_bytes} bytes (limit {args.large_limit}); full spectra "
                       "are quadratic in symbol reads, pass --allow-large or --max-scales")
    p = ing.pattern
    if len(p) < 2:
        raise CliError(f"pattern has {len(p)} symbol(s); a spectrum needs at least 2")
    if len(p.alphabet) < 2:
        raise CliError("pattern uses a single symbol; every spectrum value is 0")
    s, report = _compute(args, ing)
    rows = _spectrum_rows(s, kinds)
    if args.format == "json":
        return _json(_record(args, ing, source, report, rows))
    return _csv(("scale", "kind", "bits", "is_argmin"), [tuple(r.values()) for r in rows])


def cmd_compare(args) -> str:
    ing, source = _load(args)
    config = baselines.load_config(args.config) if args.config else {}
    ids = [b.strip() for b in args.backends.split(",") if b.strip()]
    try:
        backends = baselines.resolve(ids, config)
    except ValueError as e:
        raise CliError(str(e)) from None
    s, report = _compute(args, ing)
    data = corpus.get(source["fixture"]).to_bytes() if "fixture" in source else _read(args.path)
    c = baselines.compare(ing.pattern, backends, data, report)
    for skip in c.skipped:
        print(f"infometer: skipped {skip.backend}: {skip.reason}", file=sys.stderr)
    if args.format == "json":
        return _json(_record(args, ing, source, report, comparison=c))
    if args.format == "csv":
        rows = [(name, "absolute", round_bits(v), v) for name, v in c.absolute_rows()]
        rows += [(name, "relative", round(100 * v), v) for name, v in c.relative_rows()]
        return _csv(("measure", "table", "value", "value_exact"), rows)
    return _compare_table(c, source)


def _read(path) -> bytes:
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}") from None


_LABELS = {"i_max": "I_MAX", "i_s": "I_S", "i_ssm": "I_SSM"}


def _compare_table(c: baselines.Comparison, source: dict) -> str:
    name = source.get("fixture") or source.get("path")
    r = c.report
    lines = [f"{name}: N={r.n} K={r.k} argmin scale={r.argmin_scale}", "", "absolute [bit]"]
    for key, v in c.absolute_rows():
        lines.append(f"  {_LABELS.get(key, key):<14}{round_bits(v):>12}")
    lines += ["", "relative to I_MAX [%]"]
    for key, v in c.relative_rows():
        lines.append(f"  {_LABELS.get(key, key):<14}{round(100 * v):>12}")
    if c.results:
        lines += ["", "compressed sizes include container overhead"]
    if c.overhead_dominated:
        lines.append(f"input below {baselines.TINY_INPUT_BITS} bits: compressed sizes are overhead-dominated")
    for s in c.skipped:
        lines.append(f"skipped {s.backend}: {s.reason}")
    return "\n".join(lines) + "\n"


def sensitivity_rows() -> list[dict]:
    rows = []
    for fid in ("T3a", "T3b"):
        fx = corpus.get(fid)
        s = spectra(fx.pattern())
        rep = report_from_spectra(fx.pattern(), s)
        rows.append({"id": fid, "pattern": fx.content, "i_ssm": round_bits(rep.i_ssm),
                     "i_ssm_exact": rep.i_ssm, "argmin_scale": rep.argmin_scale,
                     "paper_i_ssm": PAPER_T3[fid]})
    return rows


def cmd_demo_sensitivity(args) -> str:
    rows = sensitivity_rows()
    ratio = rows[1]["i_ssm_exact"] / rows[0]["i_ssm_exact"]
    if args.format == "json":
        return _json({"schema_version": SCHEMA_VERSION, "rows": rows, "ratio": ratio,
                      "paper_ratio": PAPER_T3["T3b"] / PAPER_T3["T3a"]})
    lines = [f"{'pattern':<32}{'I_SSM':>8}{'exact':>12}{'scale':>7}{'reported':>10}"]
    for r in rows:
        lines.append(f"{r['pattern']:<32}{r['i_ssm']:>8}{r['i_ssm_exact']:>12.3f}"
                     f"{r['argmin_scale']:>7}{r['paper_i_ssm']:>10}")
    lines.append(f"ratio {ratio:.3f} (reported {PAPER_T3['T3b'] / PAPER_T3['T3a']:.3f})")
    return "\n".join(lines) + "\n"


def cmd_profile(args) -> str:
    ing, _ = _load(args)
    timings = profile_spectrum(ing.pattern, max_scales=args.max_scales)
    if not args.buckets:
        return _csv(("scale", "blocks", "distinct", "seconds"),
                    [(t.scale, t.blocks, t.distinct, t.seconds) for t in timings])
    rows = []
    for lo, hi, group in bucket_timings(timings):
        rows.append((lo, hi, len(group), sum(t.blocks for t in group),
                     sum(t.seconds for t in group) / len(group)))
    return _csv(("scale_lo", "scale_hi", "scales", "blocks", "mean_seconds_per_scale"), rows)


def bucket_timings(timings):
    """Group timings into scale ranges ``[2**i, 2**(i+1))``."""
    groups: dict[int, list] = {}
    for t in timings:
        groups.setdefault(t.scale.bit_length() - 1, []).append(t)
    return [(1 << i, (1 << (i + 1)) - 1, groups[i]) for i in sorted(groups)]


def cmd_export(args) -> Optional[str]:
    fx = corpus.get(args.fixture)
    with open(args.out, "wb") as f:
        f.write(fx.to_bytes())
    return None


def cmd_generate(args) -> Optional[str]:
    spec = corpus.GeneratorSpec(
        args.kind, args.length,
        alphabet=list(args.alphabet) if args.alphabet else None,
        period=list(args.period) if args.period else None,
        error_rate=args.error_rate, seed=args.seed)
    try:
        p = corpus.generate(spec)
        data = corpus.to_bytes(p, args.unit)
    except (ValueError, IngestError) as e:
        raise CliError(str(e)) from None
    with open(args.out, "wb") as f:
        f.write(data)
    return None


COMMANDS = {
    "analyze": cmd_analyze,
    "spectrum": cmd_spectrum,
    "compare": cmd_compare,
    "demo-sensitivity": cmd_demo_sensitivity,
    "profile": cmd_profile,
    "export": cmd_export,
    "generate": cmd_generate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = COMMANDS[args.cmd](args)
    except (CliError, ValueError, OSError) as e:
        print(f"infometer: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, AssertionError) as e:
        print(f"infometer: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    if out is not None:
        if getattr(args, "out", None) and args.cmd not in ("export", "generate"):
            with open(args.out, "w", newline="") as f:
                f.write(out)
        else:
            sys.stdout.write(out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
