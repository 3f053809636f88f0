"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a verify
check did not pass.  Out of scope: any network service, interactive shell
or persistence beyond the files the user names.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds as B
from . import verify as V
from .chern import (
    Ch2,
    ChernChar,
    chi,
    classify_membership,
    delta,
    euler_pairing,
    hilbert_poly,
    make,
    make2,
)
from .destab import (
    CenterAtMost,
    FilterSet,
    LargerThan,
    LeftOfVertical,
    MustCrossLine,
    RegionSpec,
    enumerate_candidate_walls,
)
from .errors import LatticeViolation, ParseError, TiltwallError
from .render import render_walls_svg
from .walls import Semicircle, beta_pm, q_wall, wall_between

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


# --------------------------------------------------------------------------
# parsing


def _rational(tok: str, pos: int, text: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"entry {pos} of {text!r}: {tok.strip()!r} is not a rational") from None


def parse_character(text: str):
    """Parse "r,c,d,e", "r,c,d" or "r,c" (rationals as p/q)."""
    body = text.strip().strip("()[]")
    toks = [t for t in body.split(",")]
    if not 2 <= len(toks) <= 4 or any(not t.strip() for t in toks):
        raise ParseError(f"{text!r}: expected 2 to 4 comma-separated entries")
    vals = [_rational(t, i + 1, text) for i, t in enumerate(toks)]
    for i in (0, 1):
        if vals[i].denominator != 1:
            raise ParseError(f"entry {i + 1} of {text!r} must be an integer")
    r, c = int(vals[0]), int(vals[1])
    try:
        if len(vals) == 4:
            return make(r, c, vals[2], vals[3])
        if len(vals) == 3:
            return make2(r, c, vals[2])
    except LatticeViolation as exc:
        raise LatticeViolation(f"{text!r}: {exc}") from None
    return (r, c)


def _need(v, kinds, what: str):
    if not isinstance(v, kinds):
        raise ParseError(f"{what} needs a {'full' if kinds is ChernChar else 'longer'} character")
    return v


def parse_region(specs: Sequence[str], v) -> RegionSpec:
    out = []
    for spec in specs:
        head, _, arg = spec.partition(":")
        head = head.strip().lower()
        if head == "left":
            out.append(LeftOfVertical())
        elif head == "cross":
            if arg.strip() == "beta-":
                out.append(MustCrossLine(beta_pm(v)[0]))
            else:
                out.append(MustCrossLine(_rational(arg, 1, spec)))
        elif head in ("larger", "larger-eq"):
            parts = arg.split(":")
            if len(parts) != 2:
                raise ParseError(f"{spec!r}: expected larger:S:RHO2")
            W = Semicircle(_rational(parts[0], 1, spec), _rational(parts[1], 2, spec))
            out.append(LargerThan(W, inclusive=head == "larger-eq"))
        elif head in ("qwall", "qwall-eq"):
            W = q_wall(_need(v, ChernChar, "qwall region"))
            out.append(LargerThan(W, inclusive=head == "qwall-eq"))
        elif head == "center-max":
            out.append(CenterAtMost(_rational(arg, 1, spec)))
        else:
            raise ParseError(f"unknown region {spec!r}")
    return RegionSpec(tuple(out))


def parse_filters(text: Optional[str], e_budget: Optional[str]) -> FilterSet:
    eb = _rational(e_budget, 1, e_budget) if e_budget is not None else None
    if text is None or text == "all":
        return FilterSet(e_budget=eb)
    names = [t.strip() for t in text.split(",") if t.strip() and t.strip() != "none"]
    try:
        return FilterSet.only(*names, e_budget=eb)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# --------------------------------------------------------------------------
# output


def _s(x) -> str:
    return str(x)


class Emitter:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, command: list[str], payload, text: str, warnings=()) -> None:
        if self.as_json:
            rec = {"command": command, "result": payload, "warnings": list(warnings)}
            self.stream.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
        else:
            for w in warnings:
                self.stream.write(f"warning: {w}\n")
            self.stream.write(text.rstrip("\n") + "\n")


# --------------------------------------------------------------------------
# commands


def _cmd_chern(a, em: Emitter) -> int:
    cmd = ["chern", a.action]
    if a.action == "validate":
        v = _parse_loose(a.v)
        rep = classify_membership(v)
        payload = {
            "in_ch_le1": rep.in_ch_le1,
            "in_ch_le2": rep.in_ch_le2,
            "in_ch": rep.in_ch,
            "violated_rules": list(rep.violated_rules),
        }
        text = "\n".join(f"{k}: {val}" for k, val in payload.items())
        em.emit(cmd, payload, text)
        return EXIT_OK
    v = parse_character(a.v)
    if a.action == "chi":
        val = chi(_need(v, ChernChar, "chi"))
        em.emit(cmd, {"chi": _s(val)}, f"chi = {val}")
    elif a.action == "pair":
        w = _need(parse_character(a.w), ChernChar, "pair")
        val = euler_pairing(_need(v, ChernChar, "pair"), w)
        em.emit(cmd, {"chi": _s(val)}, f"chi(v, w) = {val}")
    elif a.action == "delta":
        val = delta(_need(v, (ChernChar, Ch2), "delta"))
        em.emit(cmd, {"delta": _s(val)}, f"Delta = {val}")
    elif a.action == "hilbert":
        P = hilbert_poly(_need(v, ChernChar, "hilbert"))
        co = [_s(x) for x in P.coeffs()]
        em.emit(cmd, {"coefficients": co}, f"P(m) = {co[0]} m^3 + {co[1]} m^2 + {co[2]} m + {co[3]}")
    return EXIT_OK


def _parse_loose(text: str):
    """Entries only; lattice rules are reported rather than enforced."""
    body = text.strip().strip("()[]")
    toks = body.split(",")
    if not 2 <= len(toks) <= 4:
        raise ParseError(f"{text!r}: expected 2 to 4 comma-separated entries")
    return [_rational(t, i + 1, text) for i, t in enumerate(toks)]


def _cmd_walls(a, em: Emitter) -> int:
    v = _need(parse_character(a.v), (ChernChar, Ch2), "walls")
    cmd = ["walls", a.action]
    if a.action == "between":
        w = _need(parse_character(a.w), (ChernChar, Ch2), "walls between")
        W = wall_between(v, w)
        em.emit(cmd, W.to_dict(), str(W))
    elif a.action == "q":
        W = q_wall(_need(v, ChernChar, "walls q"))
        em.emit(cmd, W.to_dict(), str(W))
    elif a.action == "beta":
        lo, hi = beta_pm(v)
        em.emit(cmd, {"beta_minus": str(lo), "beta_plus": str(hi)},
                f"beta_- = {lo}\nbeta_+ = {hi}")
    return EXIT_OK


def _cmd_destab(a, em: Emitter) -> int:
    v = _need(parse_character(a.v), (ChernChar, Ch2), "destab enum")
    region = parse_region(a.region or ["left"], v)
    filters = parse_filters(a.filters, a.e_budget)
    res = enumerate_candidate_walls(v, region, filters, max_rank=a.max_rank)
    lines = [f"region: {region}", f"rank cutoff: {res.rank.bound} "
             f"({'certified' if res.certified else 'not certified'})"]
    for c in res:
        b = "" if c.budget is None else f"  budget {c.budget}"
        lines.append(f"{c.locus}  sub {c.sub}  quot {c.quot}{b}")
    if not len(res):
        lines.append("no candidate walls")
    em.emit(["destab", "enum"], res.to_dict(), "\n".join(lines), res.warnings)
    return EXIT_OK


def _cmd_bounds(a, em: Emitter) -> int:
    cmd = ["bounds", a.action]
    if a.action == "d":
        val = B.bound_D(int(a.r), int(a.c))
        em.emit(cmd, val.to_dict(), f"D({a.r},{a.c}) = {val}")
    elif a.action == "e":
        d = _rational(a.d, 3, a.d)
        val = B.bound_E(int(a.r), int(a.c), d)
        em.emit(cmd, val.to_dict(), f"E({a.r},{a.c},{d}) = {val}")
    elif a.action == "extremal":
        d = _rational(a.d, 3, a.d)
        entry = B.extremal_walls(int(a.r), int(a.c), d)
        if isinstance(entry, B.Unknown):
            em.emit(cmd, entry.to_dict(), str(entry))
        else:
            lines = [f"e = {entry.e}"] + [
                f"{w.locus}: " + " | ".join(str(f) for f in w.factors) for w in entry.walls
            ]
            if entry.note:
                lines.append(entry.note)
            em.emit(cmd, entry.to_dict(), "\n".join(lines))
    elif a.action == "exists":
        v = _need(parse_character(a.r), ChernChar, "bounds exists")
        ans = B.exists_2gieseker(v)
        payload = ans.to_dict() if isinstance(ans, B.Unknown) else {"exists": ans}
        em.emit(cmd, payload, str(ans))
    return EXIT_OK


def _cmd_verify(a, em: Emitter) -> int:
    if a.list:
        rows = V.list_checks()
        em.emit(["verify", "list"], [{"name": n, "citation": c} for n, c in rows],
                "\n".join(f"{n}  -- {c}" for n, c in rows))
        return EXIT_OK
    names = None if a.name in (None, "all") else [a.name]
    if names:
        results = [V.run_check(names[0])]
    else:
        results = V.run_all()
    worst = EXIT_OK
    for r in results:
        if r.status != V.PASS:
            worst = EXIT_VERIFY
        text = f"{r.status.upper():12s} {r.name}"
        if r.status != V.PASS:
            bad = [it for it in r.items if not it["ok"]]
            text += "".join(
                f"\n    {it['label']}: expected {it['expected']}, got {it['computed']}" for it in bad
            )
            text += "".join(f"\n    {n}" for n in r.notes if not bad)
        em.emit(["verify", r.name], r.to_dict(), text)
    if not em.as_json:
        n_ok = sum(r.status == V.PASS for r in results)
        em.stream.write(f"{n_ok}/{len(results)} checks passed\n")
    return worst


def _cmd_plot(a, em: Emitter) -> int:
    v = _need(parse_character(a.v), (ChernChar, Ch2), "plot")
    if a.region:
        region = parse_region(a.region, v)
    elif isinstance(v, ChernChar) and delta(v) > 0:
        region = RegionSpec.of(LargerThan(q_wall(v), inclusive=True))
    else:
        region = RegionSpec.of(LeftOfVertical())
    eb = v.e if isinstance(v, ChernChar) else None
    if delta(v) == 0 and not a.region:
        # Delta = 0 objects have no walls at all
        res, loci = None, []
    else:
        res = enumerate_candidate_walls(v, region, FilterSet(e_budget=eb))
        loci = res.loci()
    svg = render_walls_svg(v, loci)
    with open(a.svg, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    em.emit(["plot"], {"file": a.svg, "walls": [w.to_dict() for w in loci]},
            f"wrote {a.svg} with {len(loci)} wall(s)", res.warnings if res else [])
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


_NEGATIVE = re.compile(r"^-\d+$|^-\d*\.\d+$|^-\d+/\d+$")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-5/2" through as a positional value
        self._negative_number_matcher = _NEGATIVE

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tiltwall", description="Exact wall computations for tilt stability on P^3.")
    p.add_argument("--json", action="store_true", help="emit JSON lines")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    ch = sub.add_parser("chern", help="Chern character arithmetic")
    ch.add_argument("action", choices=["validate", "chi", "pair", "delta", "hilbert"])
    ch.add_argument("v", help='character, e.g. "3,-1,-1/2,-1/6"')
    ch.add_argument("w", nargs="?", help="second character for pair")

    wl = sub.add_parser("walls", help="numerical walls")
    wl.add_argument("action", choices=["between", "q", "beta"])
    wl.add_argument("v")
    wl.add_argument("w", nargs="?")

    ds = sub.add_parser("destab", help="candidate destabilizing sub-characters")
    ds.add_argument("action", choices=["enum"])
    ds.add_argument("v")
    ds.add_argument("--region", action="append",
                    help="left | cross:B | cross:beta- | larger[-eq]:S:RHO2 | qwall[-eq] | center-max:C")
    ds.add_argument("--filters", help="comma list of filters, 'all' or 'none'")
    ds.add_argument("--e-budget", dest="e_budget")
    ds.add_argument("--max-rank", dest="max_rank", type=int)

    bd = sub.add_parser("bounds", help="the functions D and E")
    bd.add_argument("action", choices=["d", "e", "extremal", "exists"])
    bd.add_argument("r", help="rank (or a full character for exists)")
    bd.add_argument("c", nargs="?")
    bd.add_argument("d", nargs="?")

    vf = sub.add_parser("verify", help="run reproduction checks")
    vf.add_argument("name", nargs="?", default="all")
    vf.add_argument("--list", action="store_true")

    pl = sub.add_parser("plot", help="SVG wall diagram")
    pl.add_argument("v")
    pl.add_argument("--svg", required=True)
    pl.add_argument("--region", action="append")

    for sp in (ch, wl, ds, bd, vf, pl):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return p


_DISPATCH = {
    "chern": _cmd_chern,
    "walls": _cmd_walls,
    "destab": _cmd_destab,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    em = Emitter(bool(getattr(a, "json", False)))
    if a.group == "bounds" and a.action in ("d", "e", "extremal"):
        need = 2 if a.action == "d" else 3
        if a.c is None and "," in a.r:
            # accept "r,c,d" as a single argument too
            parts = a.r.split(",") + [None, None]
            a.r, a.c, a.d = parts[0], parts[1], parts[2] if need == 3 else None
            if len([x for x in parts if x is not None]) != need:
                parser.error(f"bounds {a.action} takes {need} arguments")
        got = [x for x in (a.r, a.c, a.d) if x is not None]
        if len(got) != need:
            parser.error(f"bounds {a.action} takes {need} arguments")
        try:
            int(a.r), int(a.c)
        except ValueError:
            parser.error("rank and c must be integers")
    if a.group in ("chern", "walls") and a.action in ("pair", "between") and a.w is None:
        parser.error(f"{a.group} {a.action} needs two characters")
    try:
        return _DISPATCH[a.group](a, em)
    except (ParseError, LatticeViolation) as exc:
        sys.stderr.write(f"tiltwall: parse error: {exc}\n")
        return EXIT_PARSE
    except V.UnknownCheck as exc:
        sys.stderr.write(f"tiltwall: {exc}\n")
        return EXIT_PARSE
    except (TiltwallError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"tiltwall: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
