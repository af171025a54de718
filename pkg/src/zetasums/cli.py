"""Command-line front end: single evaluations, identity sweeps, the
direct-vs-transformed benchmark, and coefficient/identity tables.

Exit codes: 0 all requested checks passed, 1 at least one identity or
benchmark comparison failed, 2 usage or domain error.
"""

import argparse
import json
import sys
import time

from .errors import DomainError, NoClosedFormError, TermBudgetError, ZetaSumsError
from .special import Tolerance, bernoulli_fraction
from .closed import (
    ZetaCombination,
    eulerian_polynomial,
    even_arg_moment_combination,
    faulhaber_coeffs,
    kappa_alt_combination,
    kappa_combination,
    moment_alt_combination,
    moment_combination,
    shifted_alt_combination,
    shifted_combination,
)
from .sums import Family, Method, Sign, StopRule, SumSpec, eval_direct
from .transforms import (
    choose_method,
    compare_methods,
    kappa_ab_alt_transformed,
    kappa_ab_transformed,
    s_pm_transformed,
)
from .catalog import IDENTITY_KEYS, check_identity, default_grid, resolve_key

# eval shares the benchmark's accuracy anchor; identity checks run tighter
_EVAL_DEFAULT_TOL = 1e-8
_IDENTITY_DEFAULT_TOL = 1e-10
_BENCH_DEFAULT_TOL = 1e-8


def _emit(text, output_path):
    if output_path:
        with open(output_path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _json_text(payload):
    return json.dumps(payload, sort_keys=True)


def _family(value):
    try:
        return Family(value)
    except ValueError:
        choices = ", ".join(f.value for f in Family)
        raise argparse.ArgumentTypeError(f"unknown family {value!r}; choose from {choices}")


def _sign(value):
    try:
        return Sign(value)
    except ValueError:
        raise argparse.ArgumentTypeError("sign must be plus or minus")


def _stop(value):
    try:
        return StopRule(value)
    except ValueError:
        raise argparse.ArgumentTypeError("stop must be earliest or term-floor")


def _positive_float(value):
    x = float(value)
    if not x > 0.0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _float_list(value):
    try:
        return [float(tok) for tok in value.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated floats")


def _grid_range(value):
    """Parse a lo:hi:step inclusive grid argument."""
    parts = value.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be lo:hi:step")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0.0 or hi < lo:
        raise argparse.ArgumentTypeError("grid needs step > 0 and hi >= lo")
    out = []
    k = 0
    eps = 1e-9 * max(1.0, abs(hi))
    while True:
        v = lo + k * step
        if v > hi + eps:
            break
        out.append(v)
        k += 1
    return out


# ---------------------------------------------------------------------------
# eval

_CLOSED_BUILDERS = {
    (Family.KAPPA, 0): lambda spec: kappa_combination(),
    (Family.KAPPA_ALT, 0): lambda spec: kappa_alt_combination(),
    (Family.SHIFTED, 0): lambda spec: shifted_combination(spec.a),
    (Family.SHIFTED_ALT, 0): lambda spec: shifted_alt_combination(spec.a),
}


def _closed_combination(spec):
    """ZetaCombination for the given SumSpec, or NoClosedFormError."""
    if spec.family is Family.MOMENT:
        return moment_combination(spec.m)
    if spec.family is Family.MOMENT_ALT:
        return moment_alt_combination(spec.m)
    if spec.family is Family.EVEN_ARG_MOMENT:
        return even_arg_moment_combination(spec.m)
    builder = _CLOSED_BUILDERS.get((spec.family, spec.m))
    if builder is None:
        raise NoClosedFormError(
            f"no closed form is available for family {spec.family.value}"
        )
    return builder(spec)


def _run_transformed(spec, stop):
    if spec.family is Family.GENERAL_AB:
        return kappa_ab_transformed(spec.s, spec.a, spec.b, spec.tol, stop=stop)
    if spec.family is Family.GENERAL_AB_ALT:
        return kappa_ab_alt_transformed(spec.s, spec.a, spec.b, spec.tol, stop=stop)
    if spec.family is Family.EXP_WEIGHTED:
        return s_pm_transformed(
            spec.s, spec.a, spec.b, spec.c, spec.sign, spec.tol, stop=stop
        )
    raise DomainError(
        f"no transformation is available for family {spec.family.value}"
    )


def cmd_eval(args):
    spec = SumSpec(
        family=args.family,
        s=args.s,
        m=args.m,
        a=args.a,
        b=args.b,
        c=args.c,
        sign=args.sign,
        tol=Tolerance(args.tol),
    )
    method = args.method
    if method == "auto":
        try:
            _closed_combination(spec)
            method = "closed"
        except NoClosedFormError:
            if spec.family in (Family.GENERAL_AB, Family.GENERAL_AB_ALT, Family.EXP_WEIGHTED):
                method = (
                    "transformed"
                    if choose_method(spec) is Method.TRANSFORMED
                    else "direct"
                )
            else:
                method = "direct"

    if method == "closed":
        combo = _closed_combination(spec)
        value, bound = combo.evaluate_with_bound(spec.s, spec.tol)
        record = {
            "value": value,
            "terms_used": len(combo.terms),
            "tail_bound": bound,
            "method": Method.CLOSED_FORM.value,
        }
    elif method == "transformed":
        r = _run_transformed(spec, args.stop)
        record = {
            "value": r.value,
            "terms_used": r.terms_used,
            "tail_bound": r.tail_bound,
            "method": r.method.value,
        }
    else:
        r = eval_direct(spec, stop=args.stop)
        record = {
            "value": r.value,
            "terms_used": r.terms_used,
            "tail_bound": r.tail_bound,
            "method": r.method.value,
        }

    if args.format == "json":
        _emit(_json_text(record), args.output)
    else:
        _emit(
            "value       {value:.10g}\n"
            "terms_used  {terms_used}\n"
            "tail_bound  {tail_bound:.10g}\n"
            "method      {method}".format(**record),
            args.output,
        )
    return 0


# ---------------------------------------------------------------------------
# identity-check

def _identity_line(rep):
    status = "PASS" if rep.passed else "FAIL"
    pstr = " ".join(f"{k}={v}" for k, v in rep.params.items())
    return (
        f"{status} {rep.identity} {pstr} "
        f"lhs={rep.lhs_value:.10g} rhs={rep.rhs_value:.10g} "
        f"abs_diff={rep.abs_diff:.10g} budget={rep.budget:.10g}"
    )


def cmd_identity_check(args):
    tol = Tolerance(args.tol)
    reports = []
    if args.identity == "all":
        if args.grid != "default":
            raise DomainError("identity-check all requires --grid default")
        keys = list(IDENTITY_KEYS)
    else:
        keys = [resolve_key(args.identity)]

    for key in keys:
        if args.grid == "default":
            points = default_grid(key)
        else:
            if args.s is None:
                raise DomainError(
                    "identity-check needs --s (or --grid default for the stock sweep)"
                )
            point = {"s": args.s}
            for name in ("a", "b", "c"):
                val = getattr(args, name)
                if val is not None:
                    point[name] = val
            if args.sign is not None:
                point["sign"] = args.sign
            points = [point]
        for point in points:
            reports.append(check_identity(key, tol=tol, **point))

    n_fail = sum(1 for r in reports if not r.passed)
    if args.format == "json":
        _emit(_json_text([r.to_json_dict() for r in reports]), args.output)
    else:
        lines = [_identity_line(r) for r in reports]
        lines.append(
            f"{len(reports) - n_fail}/{len(reports)} identities passed"
        )
        _emit("\n".join(lines), args.output)
    return 1 if n_fail else 0


# ---------------------------------------------------------------------------
# benchmark

def cmd_benchmark(args):
    tol = Tolerance(args.tol)
    rows = []
    any_fail = False
    for a in args.a_list:
        row = {"a": a}
        try:
            t0 = time.perf_counter()
            direct = eval_direct(
                SumSpec(family=Family.GENERAL_AB, s=args.s, a=a, b=args.b, tol=tol),
                stop=StopRule.TERM_FLOOR,
            )
            t1 = time.perf_counter()
            trans = kappa_ab_transformed(args.s, a, args.b, tol, stop=StopRule.TERM_FLOOR)
            t2 = time.perf_counter()
        except TermBudgetError as exc:
            row["status"] = "term-budget-exceeded"
            row["detail"] = str(exc)
            rows.append(row)
            continue
        agreement = abs(direct.value - trans.value)
        row["report"] = {
            "lhs_value": direct.value,
            "rhs_value": trans.value,
            "lhs_terms": direct.terms_used,
            "rhs_terms": trans.terms_used,
            "agreement": agreement,
            "speedup_estimate": direct.terms_used / trans.terms_used,
        }
        row["status"] = "ok" if agreement <= tol.abs_tol else "disagree"
        if row["status"] != "ok":
            any_fail = True
        row["_direct_ms"] = (t1 - t0) * 1e3
        row["_trans_ms"] = (t2 - t1) * 1e3
        rows.append(row)

    if args.format == "json":
        payload = [
            {k: v for k, v in row.items() if not k.startswith("_")} for row in rows
        ]
        _emit(_json_text(payload), args.output)
    elif args.format == "csv":
        lines = [
            "a,direct_terms,transformed_terms,agreement,speedup_estimate,"
            "direct_ms,transformed_ms,status"
        ]
        for row in rows:
            if "report" in row:
                rep = row["report"]
                lines.append(
                    f"{row['a']!r},{rep['lhs_terms']},{rep['rhs_terms']},"
                    f"{rep['agreement']!r},{rep['speedup_estimate']!r},"
                    f"{row['_direct_ms']:.3f},{row['_trans_ms']:.3f},{row['status']}"
                )
            else:
                lines.append(f"{row['a']!r},,,,,,,{row['status']}")
        _emit("\n".join(lines), args.output)
    else:
        lines = []
        for row in rows:
            if "report" in row:
                rep = row["report"]
                lines.append(
                    f"a={row['a']:g}: direct {rep['lhs_terms']} terms "
                    f"({row['_direct_ms']:.2f} ms), transformed {rep['rhs_terms']} terms "
                    f"({row['_trans_ms']:.2f} ms), agreement {rep['agreement']:.10g}, "
                    f"speedup {rep['speedup_estimate']:.1f}x [{row['status']}]"
                )
            else:
                lines.append(f"a={row['a']:g}: {row['status']} ({row['detail']})")
        _emit("\n".join(lines), args.output)
    return 1 if any_fail else 0


# ---------------------------------------------------------------------------
# table

def _coeff_rows(family, m_max):
    if family == "eulerian":
        rows = []
        for m in range(1, m_max + 1):
            coeffs = eulerian_polynomial(m)
            rows.append(
                {"m": m, "offset": coeffs.offset,
                 "coefficients": [str(f) for f in coeffs.as_fractions()]}
            )
        return rows
    if family == "faulhaber":
        rows = []
        for m in range(0, m_max + 1):
            coeffs = faulhaber_coeffs(m)
            rows.append(
                {"m": m, "offset": coeffs.offset,
                 "coefficients": [str(f) for f in coeffs.as_fractions()]}
            )
        return rows
    if family == "bernoulli":
        return [{"n": n, "value": str(bernoulli_fraction(n))} for n in range(0, m_max + 1)]
    raise DomainError("table --family must be eulerian, faulhaber, or bernoulli")


def cmd_table(args):
    if (args.family_table is None) == (args.identity is None):
        raise DomainError("table needs exactly one of --identity or --family")

    if args.family_table is not None:
        rows = _coeff_rows(args.family_table, args.m_max)
        if args.format == "json":
            _emit(_json_text({"family": args.family_table, "rows": rows}), args.output)
        elif args.format == "csv":
            if args.family_table == "bernoulli":
                lines = ["n,value"] + [f"{r['n']},{r['value']}" for r in rows]
            else:
                lines = ["m,offset,coefficients"] + [
                    "{m},{offset},{c}".format(
                        m=r["m"], offset=r["offset"], c=" ".join(r["coefficients"])
                    )
                    for r in rows
                ]
            _emit("\n".join(lines), args.output)
        else:
            lines = []
            for r in rows:
                if args.family_table == "bernoulli":
                    lines.append(f"B_{r['n']} = {r['value']}")
                else:
                    lines.append(
                        f"m={r['m']} offset={r['offset']}: "
                        + ", ".join(r["coefficients"])
                    )
            _emit("\n".join(lines), args.output)
        return 0

    key = resolve_key(args.identity)
    if (args.s_grid is None) == (args.c_grid is None):
        raise DomainError("table --identity needs exactly one of --s-grid or --c-grid")
    tol = Tolerance(args.tol)
    reports = []
    if args.s_grid is not None:
        sweep_name = "s"
        for s in args.s_grid:
            point = {"s": s}
            for name in ("a", "b", "c"):
                val = getattr(args, name)
                if val is not None:
                    point[name] = val
            if args.sign is not None:
                point["sign"] = args.sign
            reports.append((s, check_identity(key, tol=tol, **point)))
    else:
        sweep_name = "c"
        if args.s is None:
            raise DomainError("table --c-grid needs a fixed --s")
        for c in args.c_grid:
            point = {"s": args.s, "c": c}
            for name in ("a", "b"):
                val = getattr(args, name)
                if val is not None:
                    point[name] = val
            if args.sign is not None:
                point["sign"] = args.sign
            reports.append((c, check_identity(key, tol=tol, **point)))

    any_fail = any(not rep.passed for _, rep in reports)
    if args.format == "json":
        payload = [
            {"identity": rep.identity, sweep_name: x, "lhs": rep.lhs_value,
             "rhs": rep.rhs_value, "abs_diff": rep.abs_diff,
             "pass": rep.passed}
            for x, rep in reports
        ]
        _emit(_json_text(payload), args.output)
    elif args.format == "csv":
        lines = [f"identity,{sweep_name},lhs,rhs,abs_diff,pass"]
        for x, rep in reports:
            lines.append(
                f"{rep.identity},{x!r},{rep.lhs_value!r},{rep.rhs_value!r},"
                f"{rep.abs_diff!r},{str(rep.passed).lower()}"
            )
        _emit("\n".join(lines), args.output)
    else:
        lines = [_identity_line(rep) for _, rep in reports]
        _emit("\n".join(lines), args.output)
    return 1 if any_fail else 0


# ---------------------------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="zetasums",
        description="Certified evaluation and cross-validation of zeta-family sums.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one family sum")
    p_eval.add_argument("--family", type=_family, required=True)
    p_eval.add_argument("--s", type=float, required=True)
    p_eval.add_argument("--m", type=int, default=0)
    p_eval.add_argument("--a", type=_positive_float, default=1.0)
    p_eval.add_argument("--b", type=_positive_float, default=1.0)
    p_eval.add_argument("--c", type=float, default=0.0)
    p_eval.add_argument("--sign", type=_sign, default=Sign.PLUS)
    p_eval.add_argument("--tol", type=_positive_float, default=_EVAL_DEFAULT_TOL)
    p_eval.add_argument(
        "--method", choices=("auto", "direct", "closed", "transformed"), default="auto"
    )
    p_eval.add_argument("--stop", type=_stop, default=StopRule.EARLIEST)
    p_eval.add_argument("--format", choices=("text", "json"), default="text")
    p_eval.add_argument("--output", default=None)
    p_eval.set_defaults(run=cmd_eval)

    p_id = sub.add_parser("identity-check", help="verify a two-route identity")
    p_id.add_argument("identity", help="catalog key, alias, or 'all'")
    p_id.add_argument("--s", type=float, default=None)
    p_id.add_argument("--a", type=_positive_float, default=None)
    p_id.add_argument("--b", type=_positive_float, default=None)
    p_id.add_argument("--c", type=float, default=None)
    p_id.add_argument("--sign", type=_sign, default=None)
    p_id.add_argument("--tol", type=_positive_float, default=_IDENTITY_DEFAULT_TOL)
    p_id.add_argument("--grid", choices=("default",), default=None)
    p_id.add_argument("--format", choices=("text", "json"), default="text")
    p_id.add_argument("--output", default=None)
    p_id.set_defaults(run=cmd_identity_check)

    p_bench = sub.add_parser(
        "benchmark", help="direct vs transformed term counts and timings"
    )
    p_bench.add_argument("--s", type=float, default=4.0)
    p_bench.add_argument("--b", type=_positive_float, default=1.0)
    p_bench.add_argument("--tol", type=_positive_float, default=_BENCH_DEFAULT_TOL)
    p_bench.add_argument("--a-list", type=_float_list, default=[0.1, 0.01])
    p_bench.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_bench.add_argument("--output", default=None)
    p_bench.set_defaults(run=cmd_benchmark)

    p_table = sub.add_parser("table", help="identity sweeps and coefficient tables")
    p_table.add_argument("--identity", default=None)
    p_table.add_argument(
        "--family", dest="family_table",
        choices=("eulerian", "faulhaber", "bernoulli"), default=None,
    )
    p_table.add_argument("--m-max", type=int, default=6)
    p_table.add_argument("--s-grid", type=_grid_range, default=None)
    p_table.add_argument("--c-grid", type=_grid_range, default=None)
    p_table.add_argument("--s", type=float, default=None)
    p_table.add_argument("--a", type=_positive_float, default=None)
    p_table.add_argument("--b", type=_positive_float, default=None)
    p_table.add_argument("--c", type=float, default=None)
    p_table.add_argument("--sign", type=_sign, default=None)
    p_table.add_argument("--tol", type=_positive_float, default=_IDENTITY_DEFAULT_TOL)
    p_table.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_table.add_argument("--output", default=None)
    p_table.set_defaults(run=cmd_table)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except ZetaSumsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
