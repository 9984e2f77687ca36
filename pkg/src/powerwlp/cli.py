"""Command-line interface.

Exit codes: 0 success, 1 an --assert-* flag or a reproduction check failed,
2 bad input, 3 a dimension is unknown and no fallback was requested.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .classifier import Status, classify, failure_certificate
from .combinatorics import ExponentConfig, aci_hilbert, ci_hilbert
from .errors import UnknownDimension, WlpError
from .linsys import (
    FatPointSystem,
    cremona_chain,
    dim_dl_p3,
    dim_p2_nef,
    peel_base_locus_p2,
    solve_linear_system,
)
from .oracle import DEFAULT_PRIME, PrimeFieldConfig, fat_point_dim_bruteforce, generic_quotient_dim, wlp_check
from .reproduce import TARGETS, run_target

EXIT_OK, EXIT_ASSERT, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    return vals


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None


def field_from_args(args) -> PrimeFieldConfig:
    prime = args.prime if args.prime is not None else _env_int("WLP_PRIME", DEFAULT_PRIME)
    seed = args.seed if args.seed is not None else _env_int("WLP_SEED", 0)
    retries = args.retries if args.retries is not None else _env_int("WLP_RETRIES", 3)
    try:
        return PrimeFieldConfig(prime, seed, retries)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _config(args, aci=True) -> ExponentConfig:
    if args.vars < 1:
        raise UsageError("--vars must be positive")
    if any(a < 1 for a in args.powers):
        raise UsageError("--powers must be positive integers")
    config = ExponentConfig(args.vars, tuple(args.powers))
    if aci and not config.is_almost_complete_intersection:
        raise UsageError(f"need exactly vars + 1 = {args.vars + 1} powers, got {config.n}")
    return config


# ---------------------------------------------------------------- commands


def cmd_classify(args, field):
    config = _config(args)
    verdict = classify(config, field)
    payload = {"inputs": {"vars": config.num_vars, "powers": list(config.exponents)},
               "result": verdict.as_dict(),
               "certificate": verdict.certificate.as_dict() if verdict.certificate else None}
    if verdict.status is Status.UNDETERMINED or args.oracle:
        check = wlp_check(config, field)
        payload["oracle"] = {"holds": check.holds, "failing_degrees": check.failing_degrees}
    status = verdict.status
    if "oracle" in payload and status is Status.UNDETERMINED:
        holds = payload["oracle"]["holds"]
    else:
        holds = status is Status.HOLDS
    return payload, holds


def cmd_hilbert(args, field):
    config = _config(args, aci=False)
    if config.n == config.num_vars:
        h, kind = ci_hilbert(config), "complete intersection"
    elif config.is_almost_complete_intersection:
        h, kind = aci_hilbert(config), "almost complete intersection"
    else:
        raise UsageError("hilbert needs vars or vars + 1 powers")
    payload = {"inputs": {"vars": config.num_vars, "powers": list(config.exponents)},
               "result": {"kind": kind, "values": list(h), "socle_degree": h.socle_degree}}
    if args.oracle:
        payload["oracle"] = {"values": [generic_quotient_dim(config, j, field) for j in range(len(h) + 1)]}
    return payload, None


def cmd_linsys(args, field):
    if args.pdim < 0:
        raise UsageError("--pdim must be >= 0")
    if any(m < 0 for m in args.mults):
        raise UsageError("--mults must be nonnegative")
    sys_ = FatPointSystem(args.pdim, args.deg, tuple(args.mults))
    trace: list[str] = []
    method = args.method
    value = None
    how = method
    if method == "auto":
        red = solve_linear_system(sys_)
        value, how = red.value, red.method
        trace = [s.describe() for s in red.steps]
    elif method == "cremona":
        end, steps = cremona_chain(sys_)
        trace = [s.describe() for s in steps]
        red = solve_linear_system(end)
        trace += [s.describe() for s in red.steps]
        value, how = red.value, f"cremona chain, then {red.method}"
    elif method == "peel":
        residual, steps = peel_base_locus_p2(sys_)
        trace = [s.describe() for s in steps]
        red = solve_linear_system(residual)
        trace += [s.describe() for s in red.steps]
        value, how = red.value, f"peeling, then {red.method}"
    elif method == "dl":
        value = dim_dl_p3(sys_)
    elif method == "nef":
        value = dim_p2_nef(sys_)
    elif method == "bruteforce":
        value = fat_point_dim_bruteforce(sys_, field)
    payload = {"inputs": {"pdim": sys_.proj_dim, "deg": sys_.degree, "mults": list(sys_.multiplicities),
                          "method": method},
               "result": {"system": str(sys_), "dimension": value, "method": how},
               "trace": trace}
    if value is None:
        payload["result"]["hint"] = "no symbolic method applies; rerun with --method bruteforce"
    return payload, None


def cmd_oracle(args, field):
    config = _config(args, aci=False)
    if args.degree is not None:
        check = wlp_check(config, field, power_k=args.power_k, degrees=[args.degree])
    else:
        check = wlp_check(config, field, power_k=args.power_k)
    payload = {"inputs": {"vars": config.num_vars, "powers": list(config.exponents),
                          "power_k": args.power_k},
               "result": {"holds": check.holds, "failing_degrees": check.failing_degrees,
                          "reports": [r.as_dict() for r in check]}}
    return payload, check.holds


def cmd_certificate(args, field):
    config = _config(args)
    cert = failure_certificate(config, args.degree, field, allow_oracle=not args.no_oracle)
    payload = {"inputs": {"vars": config.num_vars, "powers": list(config.exponents), "degree": args.degree},
               "result": {"witnesses_failure": cert.gap >= 1, "mode": cert.mode.value if cert.gap >= 1 else None},
               "certificate": cert.as_dict()}
    return payload, cert.gap < 1


def cmd_reproduce(args, field):
    if args.target != "all" and args.target not in TARGETS:
        raise UsageError(f"unknown target {args.target!r}; choose from {', '.join(['all', *TARGETS])}")
    opts = {"d": args.d, "n": args.n} if args.target != "all" else {}
    checks = run_target(args.target, field, **opts)
    payload = {"inputs": {"target": args.target, **{k: v for k, v in opts.items() if v}},
               "result": {"passed": sum(c.ok for c in checks), "total": len(checks),
                          "checks": [c.as_dict() for c in checks]}}
    return payload, all(c.ok for c in checks)


COMMANDS = {
    "classify": cmd_classify,
    "hilbert": cmd_hilbert,
    "linsys": cmd_linsys,
    "oracle": cmd_oracle,
    "certificate": cmd_certificate,
    "reproduce": cmd_reproduce,
}


# --------------------------------------------------------------- rendering


def render_human(doc) -> str:
    cmd, res = doc["command"], doc["result"]
    lines = []
    if cmd == "classify":
        lines.append(f"verdict: {res['status']}  [{res['theorem']}]")
        if res["failure_degree"] is not None:
            lines.append(f"failure degree: {res['failure_degree']}  mode: {res['mode']}")
        if res["hint"]:
            lines.append(f"hint: {res['hint']}")
    elif cmd == "hilbert":
        lines.append(f"{res['kind']}: {' '.join(map(str, res['values']))}  (socle degree {res['socle_degree']})")
        if "oracle" in doc:
            lines.append(f"oracle: {' '.join(map(str, doc['oracle']['values']))}")
    elif cmd == "linsys":
        lines.extend(f"  {t}" for t in doc["trace"])
        dim = res["dimension"]
        lines.append(f"dim {res['system']} = {'Unknown' if dim is None else dim}  ({res['method']})")
        if "hint" in res:
            lines.append(f"hint: {res['hint']}")
    elif cmd == "oracle":
        lines.append(f"{'j':>4} {'h(j)':>8} {'h(j-k)':>8} {'dim(l^k)':>9} {'expected':>9}  maximal")
        for r in res["reports"]:
            lines.append(f"{r['degree']:>4} {r['dim_rj']:>8} {r['dim_rj_minus']:>8} "
                         f"{r['dim_quotient_ell']:>9} {r['expected']:>9}  {'yes' if r['maximal_rank'] else 'NO'}")
        lines.append("holds" if res["holds"] else f"fails at degrees {res['failing_degrees']}")
    elif cmd == "certificate":
        lines.append("witnesses failure" if res["witnesses_failure"] else "no failure witnessed")
    elif cmd == "reproduce":
        for c in res["checks"]:
            mark = "ok  " if c["ok"] else "FAIL"
            lines.append(f"{mark} {c['label']}: expected {c['expected']}, computed {c['computed']}")
        lines.append(f"{res['passed']}/{res['total']} checks passed")
    cert = doc.get("certificate")
    if cert:
        lines.append(f"certificate: degree {cert['degree']}, dim[R/(I,l)] = {cert['actual']}, "
                     f"expected {cert['expected']} (signed {cert['signed_expected']}), gap {cert['gap']} "
                     f"({cert['source']})")
    if cmd == "classify" and "oracle" in doc:
        o = doc["oracle"]
        lines.append(f"oracle: {'holds' if o['holds'] else 'fails at ' + str(o['failing_degrees'])}")
    lines.append(f"prime {doc['prime']}, seed {doc['seed']}, retries {doc['retries']}, "
                 f"{doc['elapsed']:.2f}s")
    return "\n".join(lines)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, help="field characteristic (env WLP_PRIME, default 2^31-1)")
    common.add_argument("--seed", type=int, help="sampling seed (env WLP_SEED, default 0)")
    common.add_argument("--retries", type=int, help="re-samples for rank deficiencies (env WLP_RETRIES, default 3)")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--assert-holds", action="store_true", help="exit 1 unless the result holds / passes")
    common.add_argument("--assert-fails", action="store_true", help="exit 1 unless the result fails")

    parser = argparse.ArgumentParser(prog="powerwlp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--vars", type=int, required=True, help="number of variables r")
        p.add_argument("--powers", type=_int_list, required=True, help="exponents, e.g. 5,7,8,10,10")

    p = sub.add_parser("classify", parents=[common], help="WLP verdict with certificate")
    with_config(p)
    p.add_argument("--oracle", action="store_true", help="also run the finite-field check")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of R/I")
    with_config(p)
    p.add_argument("--oracle", action="store_true", help="compare with finite-field ranks")

    p = sub.add_parser("linsys", parents=[common], help="dimension of L_r(j; m_1, ..., m_n)")
    p.add_argument("--pdim", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--mults", type=_int_list, default=[])
    p.add_argument("--method", choices=("auto", "cremona", "peel", "dl", "nef", "bruteforce"), default="auto")

    p = sub.add_parser("oracle", parents=[common], help="finite-field rank of x l^k degree by degree")
    with_config(p)
    p.add_argument("--power-k", type=int, default=1)
    p.add_argument("--degree", type=int, help="only this target degree")

    p = sub.add_parser("certificate", parents=[common], help="failure certificate at one degree")
    with_config(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--no-oracle", action="store_true", help="do not fall back to brute force")

    p = sub.add_parser("reproduce", parents=[common], help="re-run the published numbers")
    p.add_argument("target", help=f"one of: all, {', '.join(TARGETS)}")
    p.add_argument("--d", help="range such as 4..8")
    p.add_argument("--n", help="range such as 3..6")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.assert_holds and args.assert_fails:
        parser.error("--assert-holds and --assert-fails are exclusive")
    start = time.perf_counter()
    try:
        field = field_from_args(args)
        payload, holds = COMMANDS[args.command](args, field)
    except UsageError as exc:
        print(f"powerwlp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownDimension as exc:
        print(f"powerwlp: unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except WlpError as exc:
        print(f"powerwlp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"powerwlp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    doc = {"command": args.command, "inputs": payload.get("inputs", {}), "result": payload.get("result"),
           "certificate": payload.get("certificate"), "trace": payload.get("trace", []),
           "prime": field.prime, "seed": field.seed, "retries": field.retries,
           "elapsed": round(time.perf_counter() - start, 4)}
    if "oracle" in payload:
        doc["oracle"] = payload["oracle"]
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(render_human(doc))

    if args.command == "linsys" and doc["result"]["dimension"] is None:
        return EXIT_UNKNOWN
    if args.command == "reproduce" and not holds:
        return EXIT_ASSERT
    if args.assert_holds and holds is not True:
        return EXIT_ASSERT
    if args.assert_fails and holds is not False:
        return EXIT_ASSERT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
