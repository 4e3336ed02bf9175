"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 computation error,
3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import budget
from .budget import EnumerationBudgetError
from .classify import classify, wei_dual_weights
from .duality import moment_table, moments_of_dual_to_primal, primal_to_dual_moments
from .hamming import (
    block_code_from_json,
    closed_form_A,
    closed_form_b,
    generalized_hamming_weights,
    hamming_distribution,
    hamming_dual_distance,
    is_iBMD_hamming,
    is_iMDS,
    minimal_bmd_index_hamming,
)
from .invariants import profile
from .oracle import FAIL, PASS, SKIP, first_failure, run_code_checks, run_profile_checks
from .qcombinat import (
    HomogeneousPoly,
    bell_full_monomials,
    bell_partial_monomials,
    fmt_rational,
    format_monomials,
    rational_json,
)
from .rmcode import RankMetricCode, code_from_json, generalized_weights, random_code
from .zeta import (
    DegenerateReferenceError,
    InternalConsistencyError,
    beta_coefficients,
    bmd_reference,
    phi,
    zeta_profile,
)

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3

FIXTURE_NAMES = ("c1", "c2", "c3", "c4", "c5", "c6", "c7", "zero_3x4", "dqmrd_3x4")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# --- input -------------------------------------------------------------------


def _read_json(path: str) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def fixture_path(name: str):
    return resources.files("rankzeta") / "fixtures" / f"{name}.json"


def _load_code(path: str) -> RankMetricCode:
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise UsageError(f"{path}: expected a JSON object")
    try:
        return code_from_json(obj)
    except (ValueError, TypeError, IndexError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _parse_random(tokens: list[str]) -> tuple[RankMetricCode, str]:
    params = {"q": 2, "seed": 0}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep or key not in ("n", "m", "k", "q", "seed"):
            raise UsageError(f"bad --random parameter '{tok}', expected n=, m=, k=, q=, seed=")
        try:
            params[key] = int(val)
        except ValueError:
            raise UsageError(f"bad --random value '{tok}'") from None
    for key in ("n", "m", "k"):
        if key not in params:
            raise UsageError(f"--random needs {key}=")
    n, m, k, q = params["n"], params["m"], params["k"], params["q"]
    if not 0 <= k <= n * m:
        raise UsageError("--random needs 0 <= k <= n*m")
    C = random_code(q, n, m, k, random.Random(params["seed"]))
    return C, f"random(n={n}, m={m}, k={k}, q={q}, seed={params['seed']})"


# --- output ------------------------------------------------------------------


def _emit(obj, fmt: str, table) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        table()


def _seq(xs) -> str:
    return "(" + ", ".join(fmt_rational(x) if isinstance(x, Fraction) else str(x) for x in xs) + ")"


def _print_profile(p) -> None:
    print(f"i = {p.i}   d_i = {p.d_i}")
    print(f"  B = {_seq(p.B)}")
    print(f"  A = {_seq(p.A)}")
    print(f"  b = {_seq(p.b)}")
    print(f"  W = {p.W}")


# --- commands ------------------------------------------------------------------


def cmd_invariants(args) -> int:
    C = _load_code(args.code)
    if args.all_i:
        indices = range(C.k + 1)
    else:
        if not 0 <= args.i <= C.k:
            raise UsageError(f"--i {args.i} outside [0, {C.k}]")
        indices = [args.i]
    profs = [profile(C, i) for i in indices]
    obj = [p.to_json() for p in profs] if args.all_i else profs[0].to_json()

    def table():
        for p in profs:
            _print_profile(p)

    _emit(obj, args.format, table)
    return EXIT_OK


def cmd_zeta(args) -> int:
    C = _load_code(args.code)
    if not 0 <= args.i <= C.k:
        raise UsageError(f"--i {args.i} outside [0, {C.k}]")
    if args.beta and args.tau is None:
        raise UsageError("--beta needs --tau")
    if args.tau is not None and not 0 <= args.tau < C.m:
        raise UsageError(f"--tau {args.tau} outside [0, {C.m - 1}]")
    prof = zeta_profile(C, args.i, args.order)
    beta = None
    if args.beta:
        count = args.beta_count
        order = max(prof.order, count - 1) if count else prof.order
        beta = beta_coefficients(C, args.i, args.tau, order, count)
    obj = prof.to_json()
    if beta is not None:
        obj["beta"] = {"tau": args.tau, "values": [rational_json(x) for x in beta]}
    if args.tau is not None:
        ref = bmd_reference(args.tau, args.i, C.q, C.m, C.n, prof.order)
        obj["reference"] = {"tau": args.tau, "Z": [rational_json(c) for c in ref.Z.coeffs]}
    zphi = None
    if args.times_phi:
        # coefficients of Z * phi_n; the one at T^(n-d_i) is W^(i)
        ph = phi(C.n, C.q)
        zphi = []
        for t in range(prof.order + 1):
            total = HomogeneousPoly(C.n)
            for u in range(max(0, t - C.n), t + 1):
                total = total + ph[t - u] * prof.Z[u]
            zphi.append(total)
        obj["Z_phi"] = [c.to_json() for c in zphi]

    def table():
        print(f"i = {prof.i}   order = {prof.order}   degree bound = {prof.degree_bound}")
        print(f"  Z = {prof.Z}")
        print(f"  P = {prof.P}")
        if args.tau is not None:
            print(f"  Z_{args.tau} = {ref.Z}")
        if beta is not None:
            print(f"  beta (tau = {args.tau}) = {_seq(beta)}")
        if zphi is not None:
            for t, c in enumerate(zphi):
                print(f"  Z*phi_{C.n} at T^{t}: {c}")

    _emit(obj, args.format, table)
    return EXIT_OK


def cmd_classify(args) -> int:
    C = _load_code(args.code)
    reports = [("C", classify(C))]
    wei_ok = None
    if args.dual:
        reports.append(("C-perp", classify(C.dual)))
        wei_ok = wei_dual_weights(C) == generalized_weights(C.dual)
    obj = {name: r.to_json() for name, r in reports}
    if wei_ok is not None:
        obj["wei_duality_consistent"] = wei_ok

    def table():
        for name, r in reports:
            print(f"{name}: n={r.n} m={r.m} k={r.k} (alpha={r.alpha}, rho={r.rho})")
            print(f"  weights d_0..d_k = {_seq(r.weights)}   d(dual) = {r.dual_distance}")
            print(f"  i-BMD for i = {[i for i, v in enumerate(r.is_iBMD) if v]}")
            print(f"  i-MRD for i = {[i for i, v in enumerate(r.is_iMRD) if v]}")
            print(f"  minimal BMD index = {r.minimal_bmd_index}")
            print(f"  MRD = {r.is_MRD}   QMRD = {r.is_QMRD}   DQMRD = {r.is_DQMRD}")
        if wei_ok is not None:
            print(f"Wei duality consistent: {wei_ok}")

    _emit(obj, args.format, table)
    return EXIT_OK if wei_ok in (None, True) else EXIT_MISMATCH


def cmd_oracle_check(args) -> int:
    targets: list[tuple[str, RankMetricCode]] = []
    if args.random:
        C, label = _parse_random(args.random)
        targets.append((label, C))
    if args.code:
        targets.append((args.code, _load_code(args.code)))
    if not targets:
        for name in FIXTURE_NAMES:
            with resources.as_file(fixture_path(name)) as p:
                targets.append((f"fixtures/{name}.json", _load_code(str(p))))
    if args.profile and len(targets) != 1:
        raise UsageError("--profile needs exactly one code (--code or --random)")

    rows = []
    for label, C in targets:
        results = run_code_checks(C)
        if args.profile:
            obj = _read_json(args.profile)
            for item in obj if isinstance(obj, list) else [obj]:
                if not isinstance(item, dict):
                    raise UsageError(f"{args.profile}: expected profile objects")
                results += run_profile_checks(C, item)
        rows.append((label, results))

    failed = any(r.status == FAIL for _, res in rows for r in res)
    obj = {
        "codes": [{"code": label, "checks": [r.to_json() for r in res]} for label, res in rows],
        "ok": not failed,
    }

    def table():
        width = max(len(r.name) for _, res in rows for r in res)
        for label, res in rows:
            print(label)
            for r in res:
                extra = f"  ({r.detail})" if r.status != PASS and r.detail else ""
                print(f"  {r.name:<{width}}  {r.status}{extra}")
            bad = first_failure(res)
            if bad:
                print(f"  first violated identity: {bad.name}")
        counts = {s: sum(r.status == s for _, res in rows for r in res) for s in (PASS, FAIL, SKIP)}
        print(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped")

    _emit(obj, args.format, table)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_hamming(args) -> int:
    obj_in = _read_json(args.code)
    if not isinstance(obj_in, dict):
        raise UsageError(f"{args.code}: expected a JSON object")
    try:
        C = block_code_from_json(obj_in)
    except (ValueError, TypeError, IndexError) as exc:
        raise UsageError(f"{args.code}: {exc}") from None
    w = generalized_hamming_weights(C)
    dd = hamming_dual_distance(C)
    i0 = minimal_bmd_index_hamming(C)
    per_i = []
    for i in range(1, C.k + 1):
        per_i.append({"i": i, "d_i": w[i], "BMD": is_iBMD_hamming(C, i), "MDS": is_iMDS(C, i)})
    closed = []
    if i0 is not None:
        for j in range(i0, C.k + 1):
            closed.append({
                "j": j,
                "b": [rational_json(closed_form_b(C, j, u)) for u in range(C.n - w[j] + 1)],
                "A": [rational_json(closed_form_A(C, j, x)) for x in range(C.n + 1)],
                "A_direct": [rational_json(x) for x in hamming_distribution(C, j)],
            })
    obj = {
        "q": C.q, "n": C.n, "k": C.k,
        "in_stated_regime": C.in_stated_regime,
        "weights": list(w), "dual_distance": dd,
        "per_i": per_i, "minimal_bmd_index": i0, "closed_forms": closed,
    }

    def table():
        print(f"[{C.n},{C.k}] code over F_{C.q}   d(dual) = {dd}")
        if not C.in_stated_regime:
            print("  note: q = 2 is outside the stated regime (q >= 3)")
        print(f"  weights d_0..d_k = {_seq(w)}")
        for row in per_i:
            print(f"  i={row['i']}: d_i={row['d_i']}  BMD={row['BMD']}  MDS={row['MDS']}")
        print(f"  minimal BMD index = {i0}")
        for row in closed:
            print(f"  j={row['j']}: b = ({', '.join(map(str, row['b']))})  A = ({', '.join(map(str, row['A']))})")

    _emit(obj, args.format, table)
    agree = all(r["BMD"] == r["MDS"] for r in per_i) and all(r["A"] == r["A_direct"] for r in closed)
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_reference(args) -> int:
    if not 0 <= args.tau < args.m:
        raise UsageError(f"--tau {args.tau} outside [0, {args.m - 1}]")
    ref = bmd_reference(args.tau, args.j, args.q, args.m, args.n, args.order)
    obj = ref.to_json()

    def table():
        print(f"tau = {ref.tau}   j = {ref.j}   q = {args.q}   m = {args.m}   n = {args.n}")
        print(f"  Z = {ref.Z}")
        print(f"  P = {ref.P}")
        for r, M in enumerate(ref.M):
            print(f"  M_{ref.tau},{r} = {M}")

    _emit(obj, args.format, table)
    return EXIT_OK


def cmd_phi(args) -> int:
    coeffs = phi(args.n, args.q)
    obj = {"n": args.n, "q": args.q, "coeffs": [c.to_json() for c in coeffs]}

    def table():
        for t, c in enumerate(coeffs):
            print(f"  T^{t}: {c}")

    _emit(obj, args.format, table)
    return EXIT_OK


def cmd_bell(args) -> int:
    if args.a < 0 or (args.b is not None and args.b < 0):
        raise UsageError("--a and --b must be non-negative")
    if args.b is None:
        terms = bell_full_monomials(args.a)
    else:
        terms = bell_partial_monomials(args.a, args.b)
    obj = {"a": args.a, "b": args.b,
           "terms": [{"exponents": list(e), "coeff": c} for e, c in sorted(terms.items())]}

    def table():
        name = f"P_{args.a}" if args.b is None else f"P_{args.a},{args.b}"
        print(f"{name} = {format_monomials(terms)}")

    _emit(obj, args.format, table)
    return EXIT_OK


def cmd_macwilliams(args) -> int:
    C = _load_code(args.code)
    n, m, k, q = C.n, C.m, C.k, C.q
    if not 0 <= args.i <= k:
        raise UsageError(f"--i {args.i} outside [0, {k}]")
    TD = moment_table(C.dual, args.i + 1)
    TC = moment_table(C, args.i + 1)
    recon = moments_of_dual_to_primal(TD, n, m, k, args.i, q)
    back = primal_to_dual_moments(TC, n, m, k, q)
    ok = recon == TC[args.i] and back == TD
    obj = {
        "i": args.i,
        "dual_moments": [[rational_json(x) for x in row] for row in TD],
        "reconstructed": [rational_json(x) for x in recon],
        "direct": [rational_json(x) for x in TC[args.i]],
        "inverse_matches_dual": back == TD,
    }

    def table():
        for j, row in enumerate(TD):
            print(f"  B^({j})(C-perp) = {_seq(row)}")
        print(f"  B^({args.i})(C) from dual = {_seq(recon)}")
        print(f"  B^({args.i})(C) direct    = {_seq(TC[args.i])}")
        print(f"  inverse transform matches dual: {back == TD}")

    _emit(obj, args.format, table)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_fixtures(args) -> int:
    if args.show:
        if args.show not in FIXTURE_NAMES:
            raise UsageError(f"unknown fixture '{args.show}'; choose from {', '.join(FIXTURE_NAMES)}")
        sys.stdout.write(fixture_path(args.show).read_text())
        return EXIT_OK
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        for name in FIXTURE_NAMES:
            (out / f"{name}.json").write_text(fixture_path(name).read_text())
        print(f"wrote {len(FIXTURE_NAMES)} fixtures to {out}")
        return EXIT_OK
    for name in FIXTURE_NAMES:
        print(name)
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rankzeta", description="Invariants of rank-metric codes.")
    parser.add_argument("--budget", type=float, default=None,
                        help="cap on every enumeration (overrides RANKZETA_BUDGET)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def fmt(p):
        p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("invariants", help="binomial moments, distributions, enumerators")
    p.add_argument("--code", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--i", type=int)
    g.add_argument("--all-i", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("zeta", help="zeta series, zeta polynomial, beta expansion")
    p.add_argument("--code", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--beta", action="store_true")
    p.add_argument("--beta-count", type=int, default=None,
                   help="number of beta coefficients (default n - d_i + 1)")
    p.add_argument("--times-phi", action="store_true", help="also print the coefficients of Z * phi_n")
    fmt(p)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("classify", help="BMD / MRD / QMRD classification")
    p.add_argument("--code", required=True)
    p.add_argument("--dual", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("oracle-check", help="cross-check fast formulas against brute force")
    p.add_argument("--code")
    p.add_argument("--random", nargs="+", metavar="KEY=VALUE")
    p.add_argument("--profile", help="stored invariants profile to verify")
    fmt(p)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("hamming", help="Hamming-metric block code analysis")
    p.add_argument("--code", required=True)
    fmt(p)
    p.set_defaults(func=cmd_hamming)

    p = sub.add_parser("reference", help="BMD reference series and M polynomials")
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=None)
    fmt(p)
    p.set_defaults(func=cmd_reference)

    p = sub.add_parser("phi", help="the phi_n generating polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("bell", help="ordinary Bell polynomials as monomials")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, default=None, help="partial polynomial P_{a,b}; omit for P_a")
    fmt(p)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("macwilliams", help="moments of C rebuilt from the dual")
    p.add_argument("--code", required=True)
    p.add_argument("--i", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_macwilliams)

    p = sub.add_parser("fixtures", help="list, show or export the bundled codes")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--show", metavar="NAME")
    g.add_argument("--export", metavar="DIR")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.budget is not None:
        if args.budget < 0:
            parser.error("--budget must be non-negative")
        budget.set_override(int(args.budget))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rankzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationBudgetError as exc:
        print(f"rankzeta: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (InternalConsistencyError, DegenerateReferenceError) as exc:
        print(f"rankzeta: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ValueError, ArithmeticError) as exc:
        print(f"rankzeta: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    finally:
        budget.set_override(None)


if __name__ == "__main__":
    sys.exit(main())
