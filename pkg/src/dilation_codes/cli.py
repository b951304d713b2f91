"""Command-line interface: ``python -m dilation_codes <command> ...``.

Exit codes: 0 success, 2 invalid arguments, 3 verification failure,
4 undecodable input. Relative ``--out`` paths are resolved against
``$DILATION_CODES_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analysis, channel, codebook, confusability, numtheory, sequences
from .codebook import CodeSpec
from .errors import InvalidInput, Undecodable

OUTPUT_DIR_ENV = "DILATION_CODES_OUTPUT_DIR"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_UNDECODABLE = 4


class VerificationFailed(Exception):
    def __init__(self, payload):
        super().__init__("verification failed")
        self.payload = payload


def _beta(text):
    try:
        return sequences.DilationBound.parse(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--N", type=int, default=16, help="time slots (default 16)")
    p.add_argument("--k", type=int, default=2, help="events per signal (default 2)")
    p.add_argument("--beta", type=_beta, default=sequences.UNBOUNDED, help="dilation bound: p/q, integer, or inf")
    p.add_argument("--family", choices=["T", "C", "D"], default=None, help="code family")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "csv"], default=None, help="default csv for figure/enumerate, json otherwise")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="dilation-codes", description="Zero-error codes under unknown time dilation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="d_n and b_n sequences")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--sequence", choices=["d", "b", "both"], default="both")
    sub.add_parser("zeta", parents=[common], help="zeta(k) by series and, for even k, Bernoulli form")
    sub.add_parser("count", parents=[common], help="exact code size")
    sub.add_parser("enumerate", parents=[common], help="list codewords (CSV)")
    sub.add_parser("density", parents=[common], help="finite-N density next to the limit")
    p = sub.add_parser("sweep", parents=[common], help="density over a grid of N")
    p.add_argument("--Ns", type=_int_list, default=[100, 1000, 10000])
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("compare", parents=[common], help="d_n versus b_n table")
    p.add_argument("--terms", type=int, default=10)
    sub.add_parser("verify", parents=[common], help="optimality and zero-error checks on a small space")
    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo encode/dilate/decode")
    p.add_argument("--dist", choices=["uniform-open", "truncated-power-law", "pareto-unbounded"], default=None)
    p.add_argument("--shape", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    sub.add_parser("figure", parents=[common], help="points of T_{N,k} with codeword flags (CSV)")
    p = sub.add_parser("encode", parents=[common], help="message number to codeword")
    p.add_argument("--message", type=int, required=True)
    p = sub.add_parser("decode", parents=[common], help="observed intervals to codeword")
    p.add_argument("--values", type=_float_list, required=True, help="comma-separated observed intervals")
    return parser


def _spec(args) -> CodeSpec:
    family = args.family or ("C" if args.beta.unbounded else "D")
    return CodeSpec(args.N, args.k, family, args.beta)


def _tol(args, default):
    return default if args.tolerance is None else args.tolerance


def _csv_rows(header, rows) -> str:
    out = [",".join(header)]
    for r in rows:
        out.append(",".join(repr(v) if isinstance(v, float) else str(v).lower() if isinstance(v, bool) else str(v) for v in r))
    return "\n".join(out) + "\n"


def _dict_csv(d: dict) -> str:
    return _csv_rows(list(d), [list(d.values())])


def cmd_seq(args):
    n = args.count
    data = {"beta": str(args.beta)}
    if args.sequence in ("d", "both"):
        data["d"] = list(sequences.d_seq(args.beta, n))
    if args.sequence in ("b", "both"):
        data["b"] = list(sequences.b_seq(args.beta, n))
    if args.format == "csv":
        cols = [c for c in ("d", "b") if c in data]
        return _csv_rows(["n"] + [f"{c}_n" for c in cols], [[i + 1] + [data[c][i] for c in cols] for i in range(n)])
    return data


def cmd_zeta(args):
    tol = _tol(args, 1e-15)
    data = {"k": args.k, "series": numtheory.zeta(args.k, tol), "tolerance": tol}
    if args.k % 2 == 0:
        data["bernoulli_closed_form"] = numtheory.zeta_even(args.k // 2)
    data["inverse"] = 1.0 / data["series"]
    return _dict_csv(data) if args.format == "csv" else data


def cmd_count(args):
    spec = _spec(args)
    data = {"spec": spec.label(), "count": codebook.count(spec)}
    return _dict_csv(data) if args.format == "csv" else data


def cmd_enumerate(args):
    spec = _spec(args)
    if args.format == "json":
        return {"spec": spec.label(), "codewords": [list(t) for t in codebook.enumerate_code(spec)]}
    return codebook.write_csv(codebook.enumerate_code(spec), spec.k)


def cmd_density(args):
    rec = analysis.empirical_density(_spec(args), tolerance=_tol(args, 1e-13))
    return analysis.records_csv([rec]) if args.format == "csv" else rec.to_dict()


def cmd_sweep(args):
    recs = analysis.convergence_sweep(args.k, args.beta, args.Ns, family=args.family, workers=args.workers)
    if args.format == "csv":
        return analysis.records_csv(recs)
    return {"records": [r.to_dict() for r in recs]}


def cmd_compare(args):
    table = analysis.compare_models(args.k, args.beta, args.terms)
    if args.format == "csv":
        rows = table["rows"]
        return _csv_rows(list(rows[0]), [list(r.values()) for r in rows])
    return table


def cmd_verify(args):
    graph = confusability.build_graph(args.N, args.k, args.beta)
    alpha = confusability.max_independent_set(graph)
    spec = CodeSpec(args.N, args.k, "D", args.beta)
    size = codebook.count(spec)
    zero_error = confusability.verify_zero_error(codebook.enumerate_code(spec), args.beta)
    cert = confusability.shannon_certificate(args.N, args.k, args.beta)
    data = {
        "spec": spec.label(),
        "independence_number": alpha,
        "code_size": size,
        "optimal": alpha == size,
        "zero_error": zero_error,
        "certificate": cert,
    }
    ok = data["optimal"] and zero_error and cert["pass"]
    if args.format == "csv":
        flat = {k: v for k, v in data.items() if k != "certificate"}
        flat["certificate_pass"] = cert["pass"]
        flat["checked_pairs"] = cert["checked_pairs"]
        data = _dict_csv(flat)
    if not ok:
        raise VerificationFailed(data)
    return data


def _dist(args):
    kind = args.dist or ("pareto-unbounded" if args.beta.unbounded else "uniform-open")
    bound = sequences.UNBOUNDED if kind == "pareto-unbounded" else args.beta
    return channel.AlphaDistribution(kind, bound, args.shape)


def cmd_simulate(args):
    spec = _spec(args)
    report = channel.run_monte_carlo(
        spec, _dist(args), args.trials, seed=args.seed,
        tolerance=_tol(args, channel.DEFAULT_TOLERANCE), workers=args.workers,
    )
    data = report.to_dict()
    if args.format == "csv":
        data["distribution"] = data["distribution"]["kind"]
        return _dict_csv(data)
    return data


def cmd_figure(args):
    if args.format == "json":
        return {"N": args.N, "k": args.k, "points": [list(r[:-1]) + [r[-1]] for r in analysis.emit_figure_data(args.N, args.k)]}
    return analysis.figure_csv(args.N, args.k)


def cmd_encode(args):
    spec = _spec(args)
    word = channel.encode(args.message, spec)
    data = {"spec": spec.label(), "message": args.message, "codeword": list(word)}
    if args.format == "csv":
        return codebook.write_csv([word], spec.k)
    return data


def cmd_decode(args):
    spec = _spec(args)
    word, alpha = channel.decode(args.values, spec, _tol(args, channel.DEFAULT_TOLERANCE))
    data = {"spec": spec.label(), "codeword": list(word), "alpha": alpha}
    if args.format == "csv":
        return _csv_rows([f"t{i}" for i in range(1, spec.k + 1)] + ["alpha"], [list(word) + [alpha]])
    return data


CSV_FIRST = ("figure", "enumerate")

COMMANDS = {
    "seq": cmd_seq,
    "zeta": cmd_zeta,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "density": cmd_density,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "figure": cmd_figure,
    "encode": cmd_encode,
    "decode": cmd_decode,
}


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command in CSV_FIRST else "json"
    try:
        result = COMMANDS[args.command](args)
    except VerificationFailed as exc:
        _emit(_render(exc.payload), args.out)
        return EXIT_VERIFY
    except Undecodable as exc:
        print(f"undecodable: {exc}", file=sys.stderr)
        return EXIT_UNDECODABLE
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(_render(result), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
