"""Command-line interface.

Every subcommand first builds a JSON-ready payload (optionally served from the
on-disk cache) and then renders it as a table or as JSON, so cached and fresh
runs print identical bytes.

Exit code 2 signals a usage error. Exit code 1 signals a domain error or a
verification mismatch.
"""

from __future__ import annotations

import argparse
import contextlib
import hashlib
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import __version__
from .cache import ResultCache, canonical_key
from .crosscheck import verify_model
from .decomp import connected_counts, derivative_coeffs
from .diagnostics import gargantuan_check
from .errors import InvalidParameterError, SetSeqError, UnknownModelError
from .expansion import (
    evaluate_at,
    exact_probability,
    inv_n_series,
    leading_term_report,
    series_to_json,
    term_list,
    term_list_to_json,
)
from .models import BUILTIN_IDS, DEFAULT_PARAMS, builtin, custom_from_file, parse_params

SEQUENCE_ORDER = 12
EXPANSION_ORDER = 4


class UsageError(Exception):
    pass


def _rat(x) -> dict:
    x = Fraction(x)
    return {"numerator": str(x.numerator), "denominator": str(x.denominator)}


def _unrat(doc) -> Fraction:
    return Fraction(int(doc["numerator"]), int(doc["denominator"]))


def _parse_range(text):
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A..B") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _resolve_model(args):
    if args.custom:
        model = custom_from_file(args.custom)
        digest = hashlib.sha256(repr(model.form.values).encode()).hexdigest()[:16]
        return model, f"custom:{model.id}:p{model.period}:{digest}"
    if not args.model:
        raise UsageError("--model or --custom is required")
    params = parse_params(args.param)
    if args.model not in BUILTIN_IDS:
        raise UnknownModelError(f"unknown model {args.model!r}; choose from {', '.join(BUILTIN_IDS)}")
    merged = dict(DEFAULT_PARAMS.get(args.model, {}))
    merged.update(params)
    model = builtin(args.model, merged)
    return model, model.key


def _sizes(args, model):
    if args.at is not None:
        return [args.at]
    if args.range is not None:
        lo, hi = _parse_range(args.range)
        return [n for n in range(lo, hi + 1) if n % model.period == 0]
    return []


# payload builders ---------------------------------------------------------


def _payload_coeffs(model, order):
    seq = model.counting_sequence(order)
    return {"terms": [{"n": n, "value": str(a)} for n, a in enumerate(seq.terms)]}


def _payload_connected(model, order):
    seq = connected_counts(model, order)
    return {"terms": [{"n": n, "value": str(c)} for n, c in enumerate(seq.terms)]}


def _payload_derivative(model, order):
    derived = derivative_coeffs(model, order)
    d = derived.d_rational
    return {
        "interpretation": derived.interpretation,
        "integral": derived.derivative is not None,
        "terms": [{"n": n, "delta": _rat(derived.delta[n]), "d": _rat(d[n])} for n in range(order + 1)],
    }


def _payload_expand(model, r, sizes):
    terms = term_list(model, r)
    doc = term_list_to_json(terms)
    doc["evaluations"] = [{"n": n, "value": _rat(evaluate_at(terms, n))} for n in sizes]
    return doc


def _payload_series(model, r):
    doc = series_to_json(inv_n_series(model, r))
    lead = leading_term_report(model)
    doc["leading"] = {
        "order": lead["order"],
        "lattice_coefficient": _rat(lead["lattice_coefficient"]),
        "size_coefficient": _rat(lead["size_coefficient"]),
    }
    return doc


def _payload_exact(model, sizes):
    return {"values": [{"n": n, "value": _rat(exact_probability(model, n))} for n in sizes]}


def _payload_diagnose(model, window, r_max):
    seq = model.counting_sequence(window[1] * model.period)
    return gargantuan_check(seq, window, r_max).to_json()


# rendering ----------------------------------------------------------------


def _decimal_text(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(28, digits + len(str(abs(x.numerator) // x.denominator)) + 5)
        value = Decimal(x.numerator) / Decimal(x.denominator)
        return format(value, f".{digits}f")


def _fmt(value, digits):
    if isinstance(value, dict) and "numerator" in value:
        x = _unrat(value)
        text = str(x)
        if digits is not None and x.denominator != 1:
            text += f"  ~{_decimal_text(x, digits)}"
        return text
    return str(value)


def _table(headers, rows):
    cols = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cols) for i in range(len(headers))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in cols[1:]:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _render_table(command, doc, digits):
    out = [f"# {command}: {doc['model']}" if "model" in doc else f"# {command}"]
    if digits is not None:
        out.append(f"# values after '~' are rounded to {digits} decimal places for display only")
    if command in ("coeffs", "connected"):
        out.append(_table(["n", "value"], [[t["n"], t["value"]] for t in doc["terms"]]))
    elif command == "derivative":
        if not doc["interpretation"]:
            out.append("# no combinatorial interpretation claimed for these coefficients")
        rows = [[t["n"], _fmt(t["delta"], digits), _fmt(t["d"], digits)] for t in doc["terms"]]
        out.append(_table(["n", "delta_n = d_n/n!", "d_n"], rows))
    elif command == "expand":
        out.append(f"# convention: {doc['convention']}")
        rows = [[t["k"], _fmt(t["coefficient"], None), t["factor"]] for t in doc["terms"]]
        out.append(_table(["k", "coefficient", "factor"], rows))
        if doc["evaluations"]:
            out.append(_table(["n", "1 - sum_k term_k"], [[e["n"], _fmt(e["value"], digits)] for e in doc["evaluations"]]))
    elif command == "series":
        out.append(f"# P ~ 1 - sum_j e_j / n^j   ({doc['convention']})")
        rows = [[c["order"], _fmt({k: c[k] for k in ("numerator", "denominator")}, digits)] for c in doc["coefficients"]]
        out.append(_table(["j", "e_j"], rows))
    elif command == "exact":
        out.append(_table(["n", "c_n/a_n"], [[v["n"], _fmt(v["value"], digits)] for v in doc["values"]]))
    elif command == "diagnose":
        out.append(f"verdict: {doc['verdict']}")
        out.extend(f"  - {r}" for r in doc["reasons"])
        rows = [[row["n"], _fmt_plain(row["value"], digits)] for row in doc["condition_i"]]
        out.append(_table(["n", "b_{n-1}/b_n"], rows))
    elif command == "verify":
        rows = [[res["model"], c["quantity"], c["n"], c["expected"] or "-", c["computed"], c["status"]]
                for res in doc["results"] for c in res["checks"]]
        out.append(_table(["model", "quantity", "n", "oracle", "computed", "status"], rows))
        out.append("all matched" if doc["ok"] else "MISMATCH")
    elif command == "models":
        rows = [[m["id"], m["period"], m["ratio_kind"], m["seq_class_known"], m["oracle"] or "-", m["description"]] for m in doc["models"]]
        out.append(_table(["id", "period", "ratio", "seq class", "oracle", "description"], rows))
    return "\n".join(out)


def _fmt_plain(text, digits):
    x = Fraction(text)
    return f"{x}  ~{_decimal_text(x, digits)}" if digits is not None and x.denominator != 1 else str(x)


# commands -----------------------------------------------------------------


def _cmd_models(args):
    models = []
    for mid in BUILTIN_IDS:
        m = builtin(mid, DEFAULT_PARAMS.get(mid))
        models.append({
            "id": m.key,
            "period": m.period,
            "ratio_kind": m.ratio_kind.value,
            "seq_class_known": m.seq_class_known,
            "oracle": m.oracle_id,
            "description": m.description,
        })
    return {"models": models}, True


def _cmd_computation(args):
    model, mkey = _resolve_model(args)
    cache = ResultCache(args.cache_dir, enabled=not args.no_cache)
    command = args.command
    if command in ("expand", "series"):
        r = EXPANSION_ORDER if args.order is None else args.order
    else:
        r = SEQUENCE_ORDER if args.order is None else args.order
    if r < 0:
        raise UsageError("order must be non-negative")
    sizes = _sizes(args, model) if command in ("expand", "exact") else []
    if command == "exact" and not sizes:
        raise UsageError("exact needs --at N or --range A..B")

    if command == "coeffs":
        build, cargs = (lambda: _payload_coeffs(model, r)), {"order": r}
    elif command == "connected":
        build, cargs = (lambda: _payload_connected(model, r)), {"order": r}
    elif command == "derivative":
        build, cargs = (lambda: _payload_derivative(model, r)), {"order": r}
    elif command == "expand":
        build, cargs = (lambda: _payload_expand(model, r, sizes)), {"r": r, "sizes": sizes}
    elif command == "series":
        build, cargs = (lambda: _payload_series(model, r)), {"r": r}
    elif command == "exact":
        build, cargs = (lambda: _payload_exact(model, sizes)), {"sizes": sizes}
    elif command == "diagnose":
        window = _parse_range(args.window)
        build, cargs = (lambda: _payload_diagnose(model, window, args.r_max)), {
            "window": list(window), "r_max": args.r_max}
    else:  # pragma: no cover
        raise UsageError(command)

    payload = cache.fetch(canonical_key(command, mkey, cargs), build)
    doc = {"command": command, "model": model.key, **cargs, **payload}
    return doc, True


def _check_json(c):
    return {
        "quantity": c.quantity,
        "n": c.n,
        "expected": None if c.expected is None else str(c.expected),
        "computed": str(c.computed),
        "status": c.status,
    }


def _cmd_verify(args, stderr):
    if args.model or args.custom:
        models = [_resolve_model(args)[0]]
    else:
        models = [m for m in (builtin(i, DEFAULT_PARAMS.get(i)) for i in BUILTIN_IDS) if m.oracle_id]
    results = []
    ok = True
    for model in models:
        checks = verify_model(model, args.max_n)
        if not checks:
            raise SetSeqError(f"{model.key} has no oracle")
        bad = next((c for c in checks if not c.ok), None)
        results.append({"model": model.key, "ok": bad is None, "checks": [_check_json(c) for c in checks]})
        if bad is not None:
            print(f"setseq: MISMATCH {model.key} {bad.quantity} n={bad.n}: "
                  f"oracle {bad.expected}, computed {bad.computed}", file=stderr)
            ok = False
            break
    doc = {"command": "verify", "max_n": args.max_n, "ok": ok, "results": results}
    if len(models) == 1:
        doc["model"] = models[0].key
    return doc, ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="builtin model id (see `setseq models`)")
    common.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                        help="model parameter, repeatable (e.g. d=2, D=3)")
    common.add_argument("--custom", metavar="PATH", help="JSON file with a custom counting sequence")
    common.add_argument("-r", "--order", type=int, default=None,
                        help=f"series order / number of terms (default {SEQUENCE_ORDER}, "
                             f"{EXPANSION_ORDER} for expand and series)")
    common.add_argument("--format", choices=["table", "json"], default="table")
    common.add_argument("--decimal", type=int, default=None, metavar="K",
                        help="also show rationals rounded to K decimal places (display only)")
    common.add_argument("--cache-dir", default=None, help="result cache directory")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")

    parser = argparse.ArgumentParser(
        prog="setseq", description="Exact SET/SEQ calculus and connectivity asymptotics for labeled classes."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("models", parents=[common], help="list builtin models")
    sub.add_parser("coeffs", parents=[common], help="counts a_n")
    sub.add_parser("connected", parents=[common], help="connected counts c_n")
    sub.add_parser("derivative", parents=[common], help="derivative coefficients d_n")
    for name, text in (("expand", "asymptotic term list"), ("exact", "exact probability c_n/a_n")):
        p = sub.add_parser(name, parents=[common], help=text)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--at", type=int, metavar="N", help="evaluate at size N")
        g.add_argument("--range", metavar="A..B", help="evaluate at every lattice size in A..B")
    sub.add_parser("series", parents=[common], help="expansion in powers of 1/n")
    p = sub.add_parser("verify", parents=[common], help="compare with brute-force enumeration")
    p.add_argument("--max-n", type=int, default=5)
    p = sub.add_parser("diagnose", parents=[common], help="gargantuan-condition diagnostics")
    p.add_argument("--window", default="5..24", metavar="A..B")
    p.add_argument("--r-max", type=int, default=3)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "models":
            doc, ok = _cmd_models(args)
            doc = {"command": "models", **doc}
        elif args.command == "verify":
            doc, ok = _cmd_verify(args, stderr)
        else:
            doc, ok = _cmd_computation(args)
    except (UsageError, UnknownModelError, InvalidParameterError) as exc:
        parser.print_usage(stderr)
        print(f"setseq: error: {exc}", file=stderr)
        return 2
    except SetSeqError as exc:
        print(f"setseq: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.format == "json":
        stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write(_render_table(args.command, doc, args.decimal) + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())
