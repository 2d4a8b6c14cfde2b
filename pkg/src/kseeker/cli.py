"""Command-line front end.  Output is JSON with sorted keys (or CSV); exit codes
are 0 on success, 1 on a failed assertion and 2 on a usage error."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .bent import HypothesisError, equivalence_scan, is_regular_bent
from .cyclotomic import special_value, special_value_norm, special_value_product
from .fields import FieldError, load_field, make_field
from .kloosterman import DEFAULT_DIGITS, expansion_from_gauss, profile
from .padic import digits, special_value_expansion, zeta_expansion, zeta_sum_expansion
from .special import search_special, subfield_case_analysis

MAX_DIGITS = DEFAULT_DIGITS


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _precision(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_DIGITS:
        raise argparse.ArgumentTypeError(f"precision must lie in 1..{MAX_DIGITS}, got {n}")
    return n


def _workers(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("worker count must be >= 1")
    return n


def _field_args(sp):
    sp.add_argument("--p", type=int)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--modulus", type=_int_list, help="c0,...,cm, low degree first")
    sp.add_argument("--field-file", help="JSON field spec {p, m, modulus}")


def _output_args(sp):
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output", help="write here instead of stdout")
    sp.add_argument("--timing", action="store_true", help="include wall-clock seconds (not deterministic)")


def _get_field(args):
    if args.field_file:
        return load_field(args.field_file)
    if args.p is None:
        raise UsageError("give --p (and --m, --modulus) or --field-file")
    return make_field(args.p, args.m, args.modulus)


def _parse_bs(text: str | None):
    if text is None or text == "all":
        return None
    return _int_list(text)


# -- commands ----------------------------------------------------------------

def cmd_field(args):
    fs = _get_field(args)
    if args.save:
        Path(args.save).write_text(json.dumps(fs.to_dict(), sort_keys=True) + "\n")
    return {**fs.to_dict(), "q": fs.q, "generator": fs.generator,
            "generator_coeffs": fs.coeffs(fs.generator)}, True


def _element_from_args(fs, args) -> int:
    if args.a_exp is not None and args.a is not None:
        raise UsageError("give only one of --a-exp and --a")
    if args.a is not None:
        return fs.element(args.a)
    if args.a_exp is None:
        raise UsageError("give --a-exp or --a")
    if args.a_exp in ("0-vector", "zero"):
        return 0
    try:
        k = int(args.a_exp)
    except ValueError:
        raise UsageError(f"--a-exp must be an integer or '0-vector', got {args.a_exp!r}")
    return fs.gen_pow(k % fs.order)


def cmd_ksum(args):
    fs = _get_field(args)
    a = _element_from_args(fs, args)
    prof = profile(fs, a, args.digits)
    out = prof.to_dict(fs)
    ok = True
    if args.check:
        gauss = expansion_from_gauss(fs, a, args.digits).residues()
        agree = gauss == prof.digits.residues()
        out["checks"] = {"gauss": "ok" if agree else f"mismatch {gauss}"}
        ok = agree
    return out, ok


def cmd_expand_zeta(args):
    e = zeta_expansion(args.p, args.N)
    d = digits(e, args.N)
    return {"p": args.p, "N": args.N, "digits": d.residues(), "signed_digits": d.signed(),
            "element": e.to_dict()}, True


def cmd_special_expand(args):
    e = special_value_expansion(args.p, args.b, args.N)
    s = zeta_sum_expansion(args.p, args.b, args.N)
    return {"p": args.p, "b": args.b % args.p, "N": args.N,
            "value": special_value(args.p, args.b).to_list(),
            "digits": digits(e, args.N).residues(),
            "zeta_sum_digits": digits(s, args.N).residues(),
            "element": e.to_dict()}, True


def cmd_search(args):
    fs = _get_field(args)
    rep = search_special(fs, _parse_bs(args.b), use_filter=args.filter,
                         restrict=args.restrict, workers=args.workers)
    return rep.to_dict(timing=args.timing), True


def cmd_subfield(args):
    return subfield_case_analysis(args.p, args.m), True


def cmd_bent_scan(args):
    s = equivalence_scan(args.p, args.m, args.t, args.variant, _parse_bs(args.b),
                         workers=args.workers)
    out = s.to_dict(timing=args.timing)
    ok = not s.disagreements and s.parseval_failures == 0 and s.norm_failures == 0
    return out, ok


def cmd_bent_check(args):
    fs_n = make_field(args.p, 2 * args.m)
    a = fs_n.gen_pow(args.a_exp % fs_n.order)
    rep = is_regular_bent(fs_n, a, args.b, args.t)
    return rep.to_dict(), rep.regular == rep.kloosterman_side


def cmd_product_check(args):
    value, expected = special_value_product(args.p, allow_small=args.allow_small)
    return {"p": args.p, "norm": special_value_norm(args.p), "product_mod_p2": value,
            "expected_mod_p2": expected, "holds": value == expected}, value == expected


def cmd_verify_paper(args):
    from . import acceptance

    acceptance.warm_up()
    ids = args.only.split(",") if args.only else None
    unknown = [i for i in ids or () if i not in acceptance.CRITERIA]
    if unknown:
        raise UsageError(f"unknown criterion {', '.join(unknown)}")
    results = acceptance.run(ids, extended=args.extended)
    rows = [{"id": r.id, "title": r.title, "status": "pass" if r.passed else "fail",
             "limit_s": r.limit, "detail": r.detail, **({"seconds": round(r.seconds, 3)} if args.timing else {})}
            for r in results]
    failed = [r.id for r in results if not r.passed]
    return {"criteria": rows, "failed": failed}, not failed


COMMANDS = {
    "field": cmd_field, "ksum": cmd_ksum, "expand-zeta": cmd_expand_zeta,
    "special-expand": cmd_special_expand, "search": cmd_search,
    "subfield-analysis": cmd_subfield, "bent-scan": cmd_bent_scan, "bent-check": cmd_bent_check,
    "product-check": cmd_product_check, "verify-paper": cmd_verify_paper,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kseeker", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", help="build a field and print its spec")
    _field_args(sp)
    sp.add_argument("--save", help="write the field spec JSON here")
    _output_args(sp)

    sp = sub.add_parser("ksum", help="Kloosterman sum profile of one element")
    _field_args(sp)
    sp.add_argument("--a-exp", help="a = g^k, or '0-vector' for a = 0")
    sp.add_argument("--a", type=_int_list, help="a as coefficients c0,...,c(m-1)")
    sp.add_argument("--digits", type=_precision, default=DEFAULT_DIGITS)
    sp.add_argument("--check", choices=("gauss",))
    _output_args(sp)

    sp = sub.add_parser("expand-zeta", help="pi-adic digits of zeta")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--N", type=_precision, default=DEFAULT_DIGITS)
    _output_args(sp)

    sp = sub.add_parser("special-expand", help="pi-adic digits of 1 - 2/(zeta^b + zeta^-b)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--b", type=int, default=1)
    sp.add_argument("--N", type=_precision, default=DEFAULT_DIGITS)
    _output_args(sp)

    sp = sub.add_parser("search", help="exhaustive special-value search")
    _field_args(sp)
    sp.add_argument("--b", default="all", help="'all' or a comma list")
    sp.add_argument("--filter", action=argparse.BooleanOptionalAction, default=False)
    sp.add_argument("--restrict", type=int, help="only a in the subfield F_(p^s)")
    sp.add_argument("--workers", type=_workers)
    _output_args(sp)

    sp = sub.add_parser("subfield-analysis", help="exact algebra for the F_(p^2) case")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, default=2)
    _output_args(sp)

    sp = sub.add_parser("bent-scan", help="regular bent vs Kloosterman condition, all a and b")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--variant", type=int, choices=(1, 2))
    sp.add_argument("--b", default="all")
    sp.add_argument("--workers", type=_workers)
    _output_args(sp)

    sp = sub.add_parser("bent-check", help="one f_(a,b,t)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--a-exp", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    _output_args(sp)

    sp = sub.add_parser("product-check", help="product of the special values mod p^2")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--allow-small", action="store_true")
    _output_args(sp)

    sp = sub.add_parser("verify-paper", help="run acceptance criteria AC1..AC10")
    sp.add_argument("--only", help="comma list of criterion IDs")
    sp.add_argument("--extended", action="store_true", help="include the slower optional cases")
    _output_args(sp)
    sp.set_defaults(format=None)  # plain table unless a format is asked for
    return ap


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    else:
        rows.append((prefix, json.dumps(value, sort_keys=True)))


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    rows = []
    _flatten("", result, rows)
    w.writerows(rows)
    return buf.getvalue()


def _table(result: dict) -> str:
    lines = [f"{r['id']:<5} {r['status']:<4}  {r['title']}: {r['detail']}" for r in result["criteria"]]
    if result["failed"]:
        lines.append("FAILED: " + ", ".join(result["failed"]))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, ok = COMMANDS[args.command](args)
    except (UsageError, FieldError, HypothesisError, ValueError) as exc:
        print(f"kseeker {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"kseeker {args.command}: assertion failed: {exc}", file=sys.stderr)
        return 1
    text = _table(result) if args.format is None else render(result, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
