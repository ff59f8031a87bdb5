"""Command-line interface: evaluation tables, spectra, Q tables, certification.

Data goes to stdout (or --out); human diagnostics go to stderr.  Output is
deterministic: identical configurations produce byte-identical files.
Exit codes: 0 ok, 1 I/O failure, 2 invalid parameters, 3 eigensolver
iteration failure, 4 uncertifiable evaluation radius, 5 failed certification.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import certify
from .params import (
    DegenerateRecurrenceError,
    Family1Params,
    Family2Params,
    InvalidParameterError,
)
from .recurrence import eval_G, eval_H, eval_monic, monic_coeffs
from .reference import FROZEN_WILSON_CONVENTION
from .spectral import (
    EigensolverError,
    OperatorStructureError,
    build_operator,
    eigensystem,
    trace_diagnostic,
)
from .qlimit import RadiusNotCertifiedError, eval_Q_limit, gronwall_envelope, q_coeff_table

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARAMS = 2
EXIT_EIGEN = 3
EXIT_RADIUS = 4
EXIT_CERTIFY = 5


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_z_grid(text: str) -> list[float]:
    """Either comma-separated values or start:stop:count (inclusive linspace)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("z grid range must be start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValueError("z grid count must be >= 1")
        return [float(v) for v in np.linspace(start, stop, count)]
    return [float(v) for v in text.split(",") if v.strip()]


def _build_params(args):
    if args.family == "H":
        missing = [f for f in ("mu", "nu", "alpha", "theta") if getattr(args, f) is None]
        if missing:
            raise InvalidParameterError(f"family H requires --{', --'.join(missing)}")
        return Family1Params(args.mu, args.nu, args.alpha, args.theta)
    missing = [f for f in ("mu", "nu", "sigma") if getattr(args, f) is None]
    if missing:
        raise InvalidParameterError(f"family G requires --{', --'.join(missing)}")
    return Family2Params(args.mu, args.nu, args.sigma)


def _emit(args, csv_lines: list[str], json_payload) -> int:
    if args.format == "csv":
        text = "\n".join(csv_lines) + "\n"
    else:
        text = json.dumps(json_payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_eval(args) -> int:
    params = _build_params(args)
    grid = _parse_z_grid(args.z_grid)
    coeffs = monic_coeffs(params, args.precision) if args.monic else None
    rows = []
    for n in range(args.n + 1):
        for z in grid:
            if args.monic:
                value = float(eval_monic(coeffs, n, z))
            elif args.family == "H":
                value = float(eval_H(params, n, z, args.precision))
            else:
                value = float(eval_G(params, n, z, args.precision))
            rows.append((n, z, value))
    csv_lines = ["n,z,value"] + [f"{n},{_fmt(z)},{_fmt(v)}" for n, z, v in rows]
    payload = {
        "family": args.family,
        "monic": bool(args.monic),
        "precision": args.precision,
        "rows": [{"n": n, "z": z, "value": v} for n, z, v in rows],
    }
    return _emit(args, csv_lines, payload)


def cmd_spectrum(args) -> int:
    params = _build_params(args)
    coeffs = monic_coeffs(params)
    data = eigensystem(build_operator(coeffs, args.N))
    if args.family == "H":
        diag = trace_diagnostic(coeffs, args.N)
        header = "k,node,weight,abs_eig_sum,tail_estimate"
        csv_lines = [header] + [
            f"{k},{_fmt(x)},{_fmt(w)},{_fmt(diag.abs_eig_sum)},{_fmt(diag.tail_estimate)}"
            for k, (x, w) in enumerate(zip(data.nodes, data.weights))
        ]
        payload = {
            "family": "H",
            "N": args.N,
            "nodes": list(map(float, data.nodes)),
            "weights": list(map(float, data.weights)),
            "abs_eig_sum": diag.abs_eig_sum,
            "tail_estimate": diag.tail_estimate,
        }
    else:
        csv_lines = ["k,node,weight"] + [
            f"{k},{_fmt(x)},{_fmt(w)}"
            for k, (x, w) in enumerate(zip(data.nodes, data.weights))
        ]
        payload = {
            "family": "G",
            "N": args.N,
            "nodes": list(map(float, data.nodes)),
            "weights": list(map(float, data.weights)),
        }
    return _emit(args, csv_lines, payload)


def cmd_qtable(args) -> int:
    if args.family != "H":
        raise InvalidParameterError("the Q table is defined for family H only")
    if not args.tol > 0.0:
        raise InvalidParameterError("tolerances must be strictly positive")
    params = _build_params(args)
    coeffs = monic_coeffs(params, args.precision if args.precision == "exact" else "float")
    table = q_coeff_table(coeffs, args.nmax, args.kmax)
    radii = [float(r) for r in args.radius.split(",") if r.strip()]
    zgrid = _parse_z_grid(args.z_grid) if args.z_grid else []

    csv_lines = ["record,n,k,z,value,tail,converged"]
    limit_rows = []
    for k in range(args.kmax + 1):
        flag = bool(table.converged[k])
        csv_lines.append(f"limit,,{k},,{_fmt(float(table.limits[k]))},"
                         f"{_fmt(float(table.column_delta[k]))},{int(flag)}")
        limit_rows.append({"k": k, "c_k": float(table.limits[k]),
                           "delta": float(table.column_delta[k]), "converged": flag})
    env_rows = []
    for R in radii:
        env = gronwall_envelope(coeffs, R)
        csv_lines.append(f"envelope,,,{_fmt(R)},{_fmt(env.bound)},,")
        env_rows.append({"R": R, "M": env.bound})
    q_rows = []
    for z in zgrid:
        value, tail = eval_Q_limit(table, z, tol=args.tol)
        csv_lines.append(f"q,,,{_fmt(z)},{_fmt(float(value))},{_fmt(tail)},")
        q_rows.append({"z": z, "value": float(value), "tail": tail})
    for n in range(args.nmax + 1):
        row = table.c[n]
        for k in range(args.kmax + 1):
            csv_lines.append(f"c,{n},{k},,{_fmt(float(row[k]))},,")
    payload = {
        "n_max": args.nmax,
        "k_max": args.kmax,
        "limits": limit_rows,
        "envelopes": env_rows,
        "q_values": q_rows,
        "c": [[float(v) for v in table.c[n]] for n in range(args.nmax + 1)],
    }
    return _emit(args, csv_lines, payload)


def cmd_certify(args) -> int:
    results = certify.run_all()
    csv_lines = ["criterion,name,passed,worst,tolerance,detail"]
    for r in results:
        csv_lines.append(f"{r.number},{r.name},{int(r.passed)},{_fmt(r.worst)},"
                         f"{_fmt(r.tolerance)},\"{r.detail}\"")
    all_passed = all(r.passed for r in results)
    csv_lines.append(f"verdict,,{int(all_passed)},,,"
                     f"\"wilson_convention={FROZEN_WILSON_CONVENTION}\"")
    payload = {
        "wilson_convention": FROZEN_WILSON_CONVENTION,
        "checks": [
            {"criterion": r.number, "name": r.name, "passed": r.passed,
             "worst": r.worst, "tolerance": r.tolerance, "detail": r.detail}
            for r in results
        ],
        "verdict": "pass" if all_passed else "fail",
    }
    code = _emit(args, csv_lines, payload)
    if not all_passed:
        for r in results:
            if not r.passed:
                print(r.row(), file=sys.stderr)
        return EXIT_CERTIFY
    return code


def _add_common(sub):
    sub.add_argument("--family", choices=("H", "G"), default="H")
    sub.add_argument("--mu", type=float)
    sub.add_argument("--nu", type=float)
    sub.add_argument("--alpha", type=float)
    sub.add_argument("--theta", type=float)
    sub.add_argument("--sigma", type=float)
    sub.add_argument("--precision", choices=("float", "extended", "exact"),
                     default="float")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgpoly",
        description="Recurrence-defined orthogonal polynomial families H and G",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate H_n, G_n or the monic P_n on a z grid")
    _add_common(p_eval)
    p_eval.add_argument("--n", type=int, required=True, help="maximum degree")
    p_eval.add_argument("--z-grid", required=True,
                        help="comma list or start:stop:count")
    p_eval.add_argument("--monic", action="store_true",
                        help="evaluate the monic polynomials instead")
    p_eval.set_defaults(func=cmd_eval)

    p_spec = subs.add_parser("spectrum", help="nodes, weights and trace diagnostics")
    _add_common(p_spec)
    p_spec.add_argument("--N", type=int, required=True, help="truncation size")
    p_spec.set_defaults(func=cmd_spectrum)

    p_q = subs.add_parser("qtable", help="coefficient table and values of the limit function Q")
    _add_common(p_q)
    p_q.add_argument("--nmax", type=int, default=400)
    p_q.add_argument("--kmax", type=int, default=40)
    p_q.add_argument("--z-grid", default="", help="evaluation points for Q")
    p_q.add_argument("--radius", default="0.5,1,2", help="envelope radii, comma list")
    p_q.add_argument("--tol", type=float, default=1e-6,
                     help="certification tolerance for Q values")
    p_q.set_defaults(func=cmd_qtable)

    p_cert = subs.add_parser("certify", help="run the full certification battery")
    _add_common(p_cert)
    p_cert.set_defaults(func=cmd_certify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RadiusNotCertifiedError as exc:
        print(f"radius not certified: {exc}", file=sys.stderr)
        return EXIT_RADIUS
    except EigensolverError as exc:
        print(f"eigensolver failure: {exc}", file=sys.stderr)
        return EXIT_EIGEN
    except (InvalidParameterError, DegenerateRecurrenceError,
            OperatorStructureError, ValueError, TypeError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
