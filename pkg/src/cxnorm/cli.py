"""Command line: ``cxnorm norm``, ``cxnorm verify`` and ``cxnorm fixtures``.

Exit codes: 0 success, 1 bad input / violations / fixture mismatch,
2 norm search did not converge.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import hashlib
import io
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

from .counterexamples import check_fixtures, fixture_dir, regenerate_fixtures
from .engine import OperatorSpec, SearchConfig, opnorm, opnorm_oracle
from .io import read_matrix, read_measure
from .lp import Field, check_exponent
from .suites import DEFAULT_EXPONENTS, SUITES, run_suite

SUMMARY_COLUMNS = ("case_id", "p", "q", "real", "complex", "gap", "bound", "status")


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with bad input; 2 is reserved for non-convergence
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def exponent(text: str) -> float:
    try:
        return check_exponent(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"invalid exponent {text!r}: {exc}") from exc


def exponent_list(text: str) -> tuple[float, ...]:
    vals = tuple(exponent(t.strip()) for t in text.split(",") if t.strip())
    if not vals:
        raise argparse.ArgumentTypeError("empty exponent list")
    return vals


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = dt.datetime.fromtimestamp(int(epoch), dt.timezone.utc) if epoch else dt.datetime.now(dt.timezone.utc)
    return t.replace(microsecond=0).isoformat()


def _cfg(args) -> SearchConfig:
    return SearchConfig(restarts=args.restarts, max_iters=args.max_iters, rng_seed=args.seed)


def _add_cfg_flags(p):
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--seed", type=int, default=42)


def write_manifest(path: Path, command, seed, cfg, inputs: dict, outputs: list[Path]):
    man = {
        "command": command,
        "seed": seed,
        "config": asdict(cfg),
        "inputs": inputs,
        "outputs": {str(p.name): _sha256(p) for p in outputs},
        "timestamp": _timestamp(),
    }
    path.write_text(json.dumps(man, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------- commands


def cmd_norm(args) -> int:
    A = read_matrix(args.matrix)
    src = read_measure(args.source_measure) if args.source_measure else None
    tgt = read_measure(args.target_measure) if args.target_measure else None
    spec = OperatorSpec(A, args.p, args.q, src, tgt)
    fld = Field(args.field)
    if args.oracle_density:
        cert = opnorm_oracle(spec, fld, args.oracle_density).certificate
    else:
        cert = opnorm(spec, fld, _cfg(args))
    text = json.dumps(cert.to_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if cert.converged else 2


def summary_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for rec in records:
        w.writerow(["" if rec[c] is None else (repr(rec[c]) if isinstance(rec[c], float) else rec[c])
                    for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def ratio_report_csv(records) -> str:
    """The c_X table: p, bound, max_observed_ratio, witness (JSON {"re", "im"})."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("p", "bound", "max_observed_ratio", "witness"))
    for rec in records:
        if rec["kind"] == "cx_constant":
            d = rec["detail"]
            wit = json.dumps({"re": d["witness_re"], "im": d["witness_im"]})
            w.writerow((rec["p"] if isinstance(rec["p"], str) else repr(rec["p"]), repr(rec["bound"]),
                        repr(rec["complex"]), wit))
    return buf.getvalue()


def cmd_verify(args) -> int:
    cfg = _cfg(args)
    records = run_suite(args.suite, args.cases, args.dims, args.exponents, args.seed, cfg, args.r)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary, cases = out / "summary.csv", out / "cases.jsonl"
    summary.write_text(summary_csv(records))
    cases.write_text("".join(json.dumps(r, sort_keys=True) + "\n" for r in records))
    outputs = [summary, cases]
    if any(r["kind"] == "cx_constant" for r in records):
        outputs.append(out / "ratio_report.csv")
        outputs[-1].write_text(ratio_report_csv(records))
    inputs = {}
    if args.suite in ("counterexamples", "all"):
        inputs = {f"fixtures/{p.name}": _sha256(p) for p in sorted(fixture_dir().glob("*.json"))}
    write_manifest(out / "manifest.json", args.argv, args.seed, cfg, inputs, outputs)
    fails = [r["case_id"] for r in records if r["status"] != "pass"]
    sys.stdout.write(summary.read_text())
    sys.stdout.write(f"{len(records) - len(fails)}/{len(records)} passed\n")
    for cid in fails:
        sys.stderr.write(f"violation: {cid}\n")
    return 1 if fails else 0


def cmd_fixtures(args) -> int:
    directory = Path(args.dir) if args.dir else fixture_dir()
    if args.action == "regenerate":
        for path in regenerate_fixtures(directory, args.density):
            sys.stdout.write(f"wrote {path}\n")
        return 0
    try:
        problems = check_fixtures(directory)
    except FileNotFoundError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    for msg in problems:
        sys.stderr.write(f"mismatch: {msg}\n")
    if not problems:
        sys.stdout.write(f"fixtures in {directory} match\n")
    return 1 if problems else 0


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cxnorm", description="Real vs complex induced (p, q) operator norms.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pn = sub.add_parser("norm", help="compute one operator norm")
    pn.add_argument("matrix", help="CSV rows (real) or JSON {\"re\", \"im\"}")
    pn.add_argument("--p", type=exponent, required=True, help='source exponent, decimal or "inf"')
    pn.add_argument("--q", type=exponent, required=True, help='target exponent, decimal or "inf"')
    pn.add_argument("--field", choices=[f.value for f in Field], default="real")
    pn.add_argument("--source-measure", help="JSON array of source weights")
    pn.add_argument("--target-measure", help="JSON array of target weights")
    pn.add_argument("--oracle-density", type=int, default=0, help="use the grid oracle (small n only)")
    pn.add_argument("--out", help="write the certificate here instead of stdout")
    _add_cfg_flags(pn)
    pn.set_defaults(func=cmd_norm)

    pv = sub.add_parser("verify", help="run verification suites and write reports")
    pv.add_argument("suite", help=f"one of {', '.join(SUITES + ('all',))}")
    pv.add_argument("--cases", type=int, default=20)
    pv.add_argument("--dims", type=int, default=6, help="maximum matrix dimension")
    pv.add_argument("--exponents", type=exponent_list, default=DEFAULT_EXPONENTS, help="comma separated")
    pv.add_argument("--r", type=float, default=5.0, help="parameter of the pathological norm")
    pv.add_argument("--out", default="reports")
    _add_cfg_flags(pv)
    pv.set_defaults(func=cmd_verify)

    pf = sub.add_parser("fixtures", help="rebuild or recheck the gap fixtures")
    pf.add_argument("action", choices=["regenerate", "check"])
    pf.add_argument("--dir", help="fixture directory (default: package fixtures or $CXNORM_FIXTURE_DIR)")
    pf.add_argument("--density", type=int, default=1500, help="oracle grid density")
    pf.set_defaults(func=cmd_fixtures)
    return ap


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"cxnorm: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
