"""Command-line front end.

Exit codes: 0 success / claim holds, 1 a claim fails, 2 usage error,
3 internal error. ``--json`` prints exactly one JSON document.
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import census, spectra, theorems
from .errors import ChainSpecError, ChainStringError, InvalidRangeError, PreconditionViolatedError
from .matrices import degree_list, degree_sequence, matrix_to_json, quotient_adjacency, quotient_seidel
from .roots import DEFAULT_WIDTH
from .strings import ChainString, canonical_form, parse_chain_string, random_chain_string, reverse_complement
from .tridiag import tridiag_det_closed, tridiag_det_recurrence

log = logging.getLogger("chainspec")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _rational(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    return v


def _positive_rational(text: str) -> Fraction:
    v = _rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--precision", type=int, default=4, metavar="DIGITS",
                        help="decimal places for irrational values (default 4)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed used when a string argument is given as random:N:H")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes")
    common.add_argument("--width", type=_positive_rational, default=DEFAULT_WIDTH, metavar="RATIONAL",
                        help="root isolation width (default 1/1000000)")

    p = _Parser(prog="chainspec", description="Exact spectra of chain graphs.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (
        ("spectrum", "adjacency spectrum"),
        ("seidel", "Seidel spectrum"),
        ("quotient", "quotient matrices and their spectra"),
        ("degrees", "degree sequence"),
        ("canon", "canonical form"),
    ):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("string", help='block notation "0^1 1^2", raw bits "011", or random:N:H')

    sp = sub.add_parser("cospectral-pair", help="build the h=2 cospectral pair", parents=[common])
    for a in ("a1", "a2", "a3", "a4"):
        sp.add_argument(a, type=int)

    sp = sub.add_parser("verify", help="check one claim (or all) on a string", parents=[common])
    sp.add_argument("claim", help="claim id or 'all': " + ", ".join(theorems.CLAIMS))
    sp.add_argument("string")

    sp = sub.add_parser("census", help="cospectral census for all n <= N", parents=[common])
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--out", default=None, help="append-only JSON-lines log (resumable)")
    sp.add_argument("--kind", choices=("adjacency", "seidel", "both"), default="adjacency",
                    help="which cospectrality to pair on (default adjacency)")

    sp = sub.add_parser("ms-gap", help="strings with h+1 < M_S < 2h", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h", type=int, required=True)

    sp = sub.add_parser("dk", help="tridiagonal determinant D_k(c)", parents=[common])
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--c", type=_rational, required=True)
    return p


def _string_arg(text: str, seed: int) -> ChainString:
    if text.startswith("random:"):
        try:
            _, n, h = text.split(":")
            return random_chain_string(int(n), int(h), seed)
        except ValueError as exc:
            raise UsageError(f"bad random spec {text!r}; expected random:N:H ({exc})")
    return parse_chain_string(text)


def _spectrum_doc(g: ChainString, spec: spectra.Spectrum, places: int) -> dict:
    return {
        "string": str(g),
        "n": g.n,
        "h": g.h,
        "char_poly": spec.char_poly.to_json(),
        "spectrum": spec.to_json(places),
        "inertia": list(spectra.inertia_of(spec).as_tuple()),
        "distinct": spectra.distinct_count(spec),
    }


def _spectrum_text(title: str, doc: dict, spec: spectra.Spectrum, places: int) -> str:
    return (
        f"{title} of {doc['string']} (n={doc['n']}, h={doc['h']})\n"
        f"char poly: {spec.char_poly}\n"
        f"spectrum:  {spec.render(places)}\n"
        f"inertia:   {tuple(doc['inertia'])}\n"
        f"distinct:  {doc['distinct']}\n"
    )


def _report_text(rep: theorems.TheoremReport) -> str:
    checks = rep.witness.get("checks", {})
    failed = [k for k, v in checks.items() if not v]
    extra = f" (failed: {', '.join(failed)})" if failed else ""
    return f"{rep.claim_id:24s} {rep.verdict.value}{extra}"


def _dispatch(args) -> tuple[int, object, str]:
    """Return (exit code, JSON document, text rendering)."""
    places = args.precision
    cmd = args.command

    if cmd in ("spectrum", "seidel"):
        g = _string_arg(args.string, args.seed)
        fn = spectra.adjacency_spectrum if cmd == "spectrum" else spectra.seidel_spectrum
        spec = fn(g, args.width)
        doc = _spectrum_doc(g, spec, places)
        doc["kind"] = "adjacency" if cmd == "spectrum" else "seidel"
        title = "adjacency spectrum" if cmd == "spectrum" else "Seidel spectrum"
        return 0, doc, _spectrum_text(title, doc, spec, places)

    if cmd == "quotient":
        g = _string_arg(args.string, args.seed)
        doc = {"string": str(g), "n": g.n, "h": g.h}
        text = []
        for key, m in (("adjacency", quotient_adjacency(g)), ("seidel", quotient_seidel(g))):
            spec = spectra.spectrum_of(m, args.width)
            doc[key] = {"matrix": matrix_to_json(m), "char_poly": spec.char_poly.to_json(),
                        "spectrum": spec.to_json(places)}
            rows = "\n".join("  " + " ".join(f"{int(v):>4d}" for v in row) for row in m)
            text.append(f"quotient {key} matrix:\n{rows}\n  char poly: {spec.char_poly}\n"
                        f"  spectrum:  {spec.render(places)}")
        return 0, doc, "\n".join(text) + "\n"

    if cmd == "degrees":
        g = _string_arg(args.string, args.seed)
        seq = degree_sequence(g)
        degs = degree_list(g)
        doc = {"string": str(g), "degrees": degs,
               "multiset": [[d, seq[d]] for d in sorted(seq)]}
        return 0, doc, f"degrees of {g}: ({', '.join(map(str, degs))})\n"

    if cmd == "canon":
        g = _string_arg(args.string, args.seed)
        c = canonical_form(g)
        doc = {"string": str(g), "bits": g.bits, "reverse_complement": str(reverse_complement(g)),
               "canonical": str(c), "canonical_bits": c.bits}
        return 0, doc, f"{c}\n"

    if cmd == "cospectral-pair":
        try:
            g, h, rep = theorems.construct_cospectral_pair(args.a1, args.a2, args.a3, args.a4)
        except PreconditionViolatedError as exc:
            raise UsageError(str(exc))
        doc = rep.to_json()
        spec = spectra.adjacency_spectrum(g, args.width)
        doc["spectrum"] = spec.to_json(places)
        w = rep.witness
        text = (
            f"G = {w['G']}\nH = {w['H']}\n"
            f"cospectral:  {w['checks']['cospectral']}\n"
            f"isomorphic:  {w['isomorphic']}\n"
            f"degrees G:   ({', '.join(map(str, w['degrees_G']))})\n"
            f"degrees H:   ({', '.join(map(str, w['degrees_H']))})\n"
            f"spectrum:    {spec.render(places)}\n"
            f"verdict:     {rep.verdict.value}\n"
        )
        return (0 if rep.holds else 1), doc, text

    if cmd == "verify":
        g = _string_arg(args.string, args.seed)
        try:
            reports = theorems.run_claims(g, args.claim)
        except KeyError as exc:
            raise UsageError(str(exc.args[0]))
        failed = any(r.verdict == theorems.Verdict.FAILS for r in reports)
        doc = {"string": str(g), "reports": [r.to_json() for r in reports]}
        text = f"claims on {g}\n" + "\n".join(_report_text(r) for r in reports) + "\n"
        return (1 if failed else 0), doc, text

    if cmd == "census":
        res = census.conjecture_census(args.n_max, jobs=args.jobs, log_path=args.out, matrix_kind=args.kind)
        adj = [p for p in res.pairs if p["kind"] == "adjacency"]
        doc = {"n_max": args.n_max, "records": len(res.records), "pairs": res.pairs}
        lines = [f"census n <= {args.n_max}: {len(res.records)} canonical strings, "
                 f"{len(adj)} adjacency pairs, {len(res.pairs) - len(adj)} Seidel pairs"]
        lines += [f"  [{p['kind']}] {p['G']}  ~  {p['H']}  ({p['family']})" for p in res.pairs]
        return 0, doc, "\n".join(lines) + "\n"

    if cmd == "ms-gap":
        try:
            found = census.find_ms_gap_examples(args.n, args.h)
        except InvalidRangeError as exc:
            raise UsageError(str(exc))
        items, lines = [], []
        for g in found:
            spec = spectra.seidel_spectrum(g, args.width)
            items.append({"string": str(g), "blocks": list(g.blocks),
                          "ms": spectra.distinct_count(spec), "spectrum": spec.to_json(places)})
            lines.append(f"{g}  M_S={spectra.distinct_count(spec)}  {spec.render(places)}")
        doc = {"n": args.n, "h": args.h, "examples": items}
        return 0, doc, "\n".join(lines) + ("\n" if lines else "")

    if cmd == "dk":
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        rec = tridiag_det_recurrence(args.k, args.c)
        closed = tridiag_det_closed(args.k, args.c)
        doc = {"k": args.k, "c": str(args.c), "recurrence": str(rec), "closed_form": str(closed),
               "agree": rec == closed}
        return 0, doc, f"D_{args.k}({args.c}) = {rec} (closed form {closed})\n"

    raise UsageError(f"unknown command {cmd!r}")


def execute(argv: Sequence[str]) -> tuple[int, str]:
    """Run one invocation; returns (exit code, standard-output text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2, ""
    except SystemExit as exc:  # --help
        return int(exc.code or 0), ""
    try:
        code, doc, text = _dispatch(args)
    except (UsageError, ChainStringError, InvalidRangeError) as exc:
        print(f"chainspec {args.command}: {exc}", file=sys.stderr)
        return 2, ""
    except ChainSpecError as exc:
        print(f"chainspec {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3, ""
    except Exception as exc:  # noqa: BLE001 - contract maps anything unexpected to 3
        log.exception("internal error")
        print(f"chainspec {args.command}: internal error: {exc}", file=sys.stderr)
        return 3, ""
    if args.json:
        return code, json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return code, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("CHAINSPEC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code, out = execute(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(buf.getvalue())
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
