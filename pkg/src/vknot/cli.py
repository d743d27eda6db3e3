"""Command-line front end.

Subcommands map one-to-one onto library operation families; every
command produces deterministic plain text (or JSON with ``--json``).
Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .alexander import alexander_poly, elementary_divisor, jacobian_braid, jacobian_gauss
from .braid import (
    BraidWord,
    braid_from_code,
    closure,
    parse_braid,
    periodic_braid_from_code,
    word_to_text,
)
from .circulant import verify_conjugation_identities
from .errors import VknotError, ZeroPolynomialError
from .gauss import all_periods, chord_index, parse_gauss, to_text
from .laurent import parse_poly, poly_to_text
from .murasugi import (
    congruence_check,
    exclude_periods,
    run_table,
    read_table,
    write_report,
)
from .parity import project, stable_project, writhe_poly
from .vburau import h_hat, h_poly, q_span


def _out(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _cmd_parse(args) -> int:
    d = parse_gauss(args.code)
    _out(
        args,
        {"code": to_text(d), "crossings": d.n, "writhe": d.writhe()},
        f"{to_text(d) or '(empty)'}  crossings={d.n} writhe={d.writhe()}",
    )
    return 0


def _cmd_index(args) -> int:
    d = parse_gauss(args.code)
    indices = [chord_index(d, i) for i in range(d.n)]
    _out(
        args,
        {"indices": indices, "periods": all_periods(d)},
        "indices: "
        + (" ".join(str(i) for i in indices) or "(none)")
        + f"  periods: {all_periods(d) or '-'}",
    )
    return 0


def _cmd_project(args) -> int:
    d = parse_gauss(args.code)
    out = stable_project(d) if args.stable else project(d)
    _out(args, {"code": to_text(out), "crossings": out.n}, to_text(out) or "(empty)")
    return 0


def _cmd_writhe(args) -> int:
    d = parse_gauss(args.code)
    w = writhe_poly(d)
    _out(args, {"writhe_poly": poly_to_text(w)}, poly_to_text(w))
    return 0


def _cmd_closure(args) -> int:
    w = parse_braid(args.braid, args.strands)
    d = closure(w)
    _out(args, {"code": to_text(d)}, to_text(d) or "(empty)")
    return 0


def _cmd_braid(args) -> int:
    d = parse_gauss(args.code)
    w = braid_from_code(d)
    _out(args, {"word": word_to_text(w), "strands": w.k}, f"{word_to_text(w)}  (on {w.k} strands)")
    return 0


def _cmd_braid_periodic(args) -> int:
    d = parse_gauss(args.code)
    w = periodic_braid_from_code(d, args.q)
    _out(
        args,
        {"word": word_to_text(w), "strands": w.k, "q": args.q},
        f"{word_to_text(w)}  (on {w.k} strands; closure of its {args.q}-th power)",
    )
    return 0


def _resolve_input(args):
    if args.braid is not None:
        return parse_braid(args.braid, args.strands)
    return parse_gauss(args.code)


def _cmd_alex(args) -> int:
    obj = _resolve_input(args)
    delta = alexander_poly(obj)
    payload = {"delta": poly_to_text(delta)}
    lines = [poly_to_text(delta)]
    if args.ell:
        mat = jacobian_braid(obj) if isinstance(obj, BraidWord) else jacobian_gauss(obj)
        for ell in args.ell:
            d = elementary_divisor(mat, ell, args.mod)
            payload[f"divisor_{ell}"] = poly_to_text(d)
            lines.append(f"divisor {ell}: {poly_to_text(d)}")
    if args.matrix:
        mat = jacobian_braid(obj) if isinstance(obj, BraidWord) else jacobian_gauss(obj)
        payload["matrix"] = [[poly_to_text(e) for e in row] for row in mat.entries]
        lines.append("rows: " + " ".join(mat.rows))
        lines.append("cols: " + " ".join(mat.cols))
        for row in mat.entries:
            lines.append("\t".join(poly_to_text(e) for e in row))
    _out(args, payload, "\n".join(lines))
    return 0


def _cmd_vbraid_alex(args) -> int:
    w = parse_braid(args.braid, args.strands)
    h = h_poly(w)
    hh = h_hat(w)
    payload = {"H": str(h), "Hhat": str(hh)}
    lines = [f"H    = {h}", f"Hhat = {hh}"]
    if not h.is_zero():
        payload["q_span"] = q_span(h)
        lines.append(f"q-span = {q_span(h)}")
    for p in args.mod or ():
        try:
            s = q_span(h, p)
            payload[f"q_span_mod_{p}"] = s
            lines.append(f"q-span mod {p} = {s}")
        except ZeroPolynomialError:
            payload[f"q_span_mod_{p}"] = None
            lines.append(f"q-span mod {p}: reduction is zero")
    _out(args, payload, "\n".join(lines))
    return 0


def _cmd_circulant_verify(args) -> int:
    res = verify_conjugation_identities(args.p, args.r)
    ok = all(res.values())
    _out(
        args,
        {"p": args.p, "r": args.r, **res, "pass": ok},
        "\n".join(f"{k}: {'pass' if v else 'FAIL'}" for k, v in res.items()),
    )
    return 0 if ok else 1


def _cmd_murasugi_check(args) -> int:
    beta = parse_braid(args.braid, args.strands)
    rep = congruence_check(beta, args.p, args.r)
    payload = {
        "p": rep.p,
        "r": rep.r,
        "delta_K": poly_to_text(rep.delta_k),
        "delta_quotient": poly_to_text(rep.delta_quotient),
        "f": poly_to_text(rep.f),
        "divisibility": rep.divisibility,
        "congruence_strict": rep.congruence_strict,
        "congruence_units": rep.congruence_units,
        "pass": rep.passed,
    }
    text = (
        f"Delta_K       = {poly_to_text(rep.delta_k)}\n"
        f"Delta_quotient= {poly_to_text(rep.delta_quotient)}\n"
        f"f             = {poly_to_text(rep.f)}\n"
        f"part 1 (integral divisibility): {'pass' if rep.divisibility else 'FAIL'}\n"
        f"part 2 mod {rep.p} (units +-t^k): {'pass' if rep.congruence_strict else 'FAIL'}\n"
        f"part 2 mod {rep.p} (all units):   {'pass' if rep.congruence_units else 'FAIL'}"
    )
    _out(args, payload, text)
    return 0 if rep.passed else 1


def _cmd_periods(args) -> int:
    delta = parse_poly(args.delta)
    rep = exclude_periods(
        delta,
        args.horizon,
        v_bound=args.v_bound,
        hhat_nonzero_mod=tuple(args.hhat_nonzero or ()),
    )
    payload = {
        "delta": poly_to_text(rep.delta),
        "horizon": rep.horizon,
        "excluded": {e.period: e.rule for e in rep.excluded},
        "not_excluded": list(rep.not_excluded),
        "notes": list(rep.notes),
    }
    if not rep.excluded:
        text = "no periods excluded"
    else:
        lines = [
            f"{e.period}: {e.rule}"
            + (f" (via divisor {e.via})" if e.via != e.period else "")
            + f" -- {e.detail}"
            for e in rep.excluded
        ]
        lines.append(
            "not excluded up to "
            f"{rep.horizon}: {', '.join(map(str, rep.not_excluded)) or 'none'}"
        )
        lines.extend(rep.notes)
        text = "\n".join(lines)
    _out(args, payload, text)
    return 0


def _cmd_table(args) -> int:
    rows = read_table(args.infile)
    results = run_table(rows, horizon=args.horizon)
    if args.report:
        write_report(results, args.report)
    bad = [r for r in results if r.status != "ok"]
    payload = {
        "rows": len(results),
        "ok": len(results) - len(bad),
        "flagged": {r.name: list(r.flags) for r in bad},
    }
    lines = [f"{r.name}\t{r.status}\t{';'.join(r.flags) or '-'}" for r in results]
    lines.append(f"{len(results) - len(bad)}/{len(results)} rows clean")
    _out(args, payload, "\n".join(lines))
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="vknot",
        description="Alexander-type invariants and period exclusion for virtual knots",
    )
    ap.add_argument("--version", action="version", version=f"vknot {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--json", action="store_true", help="machine readable output")
        p.set_defaults(func=fn)
        return p

    p = add("parse", _cmd_parse, help="parse and echo a Gauss code")
    p.add_argument("code")
    p = add("index", _cmd_index, help="chord indices and detected periods")
    p.add_argument("code")
    p = add("project", _cmd_project, help="Manturov projection of a code")
    p.add_argument("code")
    p.add_argument("--stable", action="store_true", help="iterate to the fixed point")
    p = add("writhe", _cmd_writhe, help="writhe polynomial of a code")
    p.add_argument("code")
    p = add("closure", _cmd_closure, help="Gauss code of a braid closure")
    p.add_argument("braid")
    p.add_argument("--strands", type=int, default=None)
    p = add("braid", _cmd_braid, help="braiding algorithm for a knot code")
    p.add_argument("code")
    p = add("braid-periodic", _cmd_braid_periodic, help="equivariant braiding")
    p.add_argument("code")
    p.add_argument("--q", type=int, required=True)
    p = add("alex", _cmd_alex, help="Alexander polynomial and elementary divisors")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--braid")
    g.add_argument("--code")
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--ell", type=int, action="append", help="also print this divisor")
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--matrix", action="store_true", help="dump the Jacobian")
    p = add("vbraid-alex", _cmd_vbraid_alex, help="three-variable polynomials of a braid")
    p.add_argument("braid")
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--mod", type=int, action="append")
    p = add("circulant-verify", _cmd_circulant_verify, help="conjugation identities mod p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = add("murasugi-check", _cmd_murasugi_check, help="periodicity congruence for a braid")
    p.add_argument("--braid", required=True)
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = add("periods", _cmd_periods, help="period exclusion from a polynomial")
    p.add_argument("--delta", required=True)
    p.add_argument("--horizon", type=int, default=12)
    p.add_argument("--v-bound", type=int, default=None)
    p.add_argument("--hhat-nonzero", type=int, action="append",
                   help="prime with a certified nonzero reduction of Hhat")
    p = add("table", _cmd_table, help="batch run over a knot table file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--report", default=None)
    p.add_argument("--horizon", type=int, default=27)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VknotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
