"""Command-line interface: ``birkhoff <command> ...``.

Exit codes: 0 on success (or a true verdict), 1 when a verdict or sweep
fails, 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import BirkhoffError, ParseError
from .fields import DEFAULT_PRIME, is_odd_prime, make_field
from .geometry import VerifyConfig, verify_irreducibility
from .modules import build_canonical_module, ext1_dim, hom_dim, is_gorenstein_projective
from .pairs import PartitionPair, canonical_decomposition, decomposition_dot
from . import suites

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _field(args):
    if args.field == "prime" and not is_odd_prime(args.prime):
        raise UsageError(f"--prime {args.prime} is not an odd prime")
    return make_field(args.field, args.prime)


def _pair(text, m):
    return PartitionPair.parse(text, m)


# ---------------------------------------------------------------------------
# commands; each returns (exit code, rendered output)


def cmd_decompose(args):
    pair = _pair(args.pair, args.m)
    dec = canonical_decomposition(pair.p, pair.q)
    if args.output == "dot":
        return EXIT_OK, decomposition_dot(dec)
    if args.output == "json":
        return EXIT_OK, _dump({
            "m": args.m,
            "pair": str(pair),
            "summands": [str(s) for s in dec.summands],
        })
    return EXIT_OK, "".join(f"{s}\n" for s in dec.summands)


def cmd_module(args):
    pair = _pair(args.pair, args.m)
    M = build_canonical_module(pair.p, pair.q, _field(args))
    data = {"pair": str(pair)}
    data.update(M.to_json())
    data["gorenstein_projective"] = is_gorenstein_projective(M)
    if args.output == "json":
        return EXIT_OK, _dump(data)
    lines = [f"pair {pair}  m={M.m}  d0={M.d0}  d1={M.d1}  "
             f"gorenstein_projective={str(data['gorenstein_projective']).lower()}"]
    for key in ("M0", "M1", "h"):
        lines.append(f"{key}:")
        lines.extend("  " + " ".join(row) for row in data[key])
    return EXIT_OK, "\n".join(lines) + "\n"


def _two_modules(args):
    fld = _field(args)
    a, b = _pair(args.pair_a, args.m), _pair(args.pair_b, args.m)
    return a, b, build_canonical_module(a.p, a.q, fld), build_canonical_module(b.p, b.q, fld)


def cmd_hom(args):
    a, b, A, B = _two_modules(args)
    vals = {"hom_ab": hom_dim(A, B), "hom_ba": hom_dim(B, A)}
    if args.output == "json":
        return EXIT_OK, _dump({"a": str(a), "b": str(b), **vals})
    return EXIT_OK, f"dim Hom(A, B) = {vals['hom_ab']}\ndim Hom(B, A) = {vals['hom_ba']}\n"


def cmd_ext(args):
    a, b, A, B = _two_modules(args)
    vals = {"ext1_ab": ext1_dim(A, B), "ext1_ba": ext1_dim(B, A)}
    if args.output == "json":
        return EXIT_OK, _dump({"a": str(a), "b": str(b), **vals})
    return EXIT_OK, f"dim Ext1(A, B) = {vals['ext1_ab']}\ndim Ext1(B, A) = {vals['ext1_ba']}\n"


def cmd_verify(args):
    _field(args)
    cfg = VerifyConfig(field=args.field, prime=args.prime, samples=args.samples,
                       seed=args.seed, iso_retries=args.retries)
    cert = verify_irreducibility(args.m, args.d0, args.d1, cfg)
    code = EXIT_OK if cert.verdict else EXIT_FALSE
    if args.output == "json":
        return code, _dump(cert.to_json())
    if args.output == "dot":
        return code, cert.to_dot()
    data = cert.to_json()
    lines = [f"m={cert.m} d0={cert.d0} d1={cert.d1}",
             f"maximal pair {data['maximal_pair']} dim={data['maximal_dim']} "
             f"unique={str(cert.unique_max).lower()}"]
    for s in data["strata"]:
        lines.append(f"  {s['pair']:<24} dim={s['stratum_dim']:<4} orbit={s['orbit_dim']:<4} "
                     f"dense={str(s['dense_in_stratum']).lower()} "
                     f"hom_order={str(s['hom_order']).lower()} "
                     f"samples={str(s['samples_isomorphic']).lower()} "
                     f"reached={str(s['reached']).lower()}")
    lines.append(f"edges: {len(cert.edges)}  unreached: {len(data['unreached'])}")
    lines.append(f"verdict: {str(cert.verdict).lower()}")
    return code, "\n".join(lines) + "\n"


def cmd_sweep(args):
    results = []
    for suite in suites.SUITES:
        if args.suite and suite.suite_name not in args.suite:
            continue
        res = suite(args.m_max, args.d_max)
        logging.getLogger(__name__).info("%s: %d cases in %.2fs", res.name, res.checked, res.elapsed)
        results.append(res)
    ok = all(r.passed for r in results)
    code = EXIT_OK if ok else EXIT_FALSE
    if args.output == "json":
        return code, _dump({
            "m_max": args.m_max,
            "d_max": args.d_max,
            "suites": [{"name": r.name, "checked": r.checked, "passed": r.passed,
                        "failures": r.failures} for r in results],
            "passed": ok,
        })
    lines = []
    for r in results:
        lines.append(f"{r.name:<20} {r.checked:>6} checked  {'pass' if r.passed else 'FAIL'}")
        lines.extend(f"    {f}" for f in r.failures)
    lines.append(f"overall: {'pass' if ok else 'FAIL'}")
    return code, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("rational", "prime"), default="rational")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=8)
    common.add_argument("--output", choices=("text", "json", "dot"), default="text")
    common.add_argument("--out-file", default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="birkhoff",
        description="Modules over K[X]/(X^m) of the A2 quiver: canonical forms, "
                    "Hom/Ext and irreducibility evidence.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="canonical decomposition of a pair")
    p.add_argument("pair", help='pair as "p1,p2,...|q1,q2,..."')
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("module", parents=[common], help="canonical module of a pair")
    p.add_argument("pair")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_module)

    for name, fn, what in (("hom", cmd_hom, "Hom"), ("ext", cmd_ext, "Ext^1")):
        p = sub.add_parser(name, parents=[common], help=f"dimensions of {what} both ways")
        p.add_argument("pair_a")
        p.add_argument("pair_b")
        p.add_argument("--m", type=int, required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", parents=[common], help="irreducibility certificate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--retries", type=int, default=32, help="isomorphism search attempts")
    p.set_defaults(func=cmd_verify, field="prime")

    p = sub.add_parser("sweep", parents=[common], help="run the invariant suites over a grid")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.add_argument("--suite", action="append", choices=[s.suite_name for s in suites.SUITES],
                   help="restrict to the named suite (repeatable)")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    for name in ("m", "d0", "d1", "m_max", "d_max", "samples"):
        val = getattr(args, name, None)
        if val is not None and val < (1 if name == "m" else 0):
            print(f"error: --{name.replace('_', '-')} out of range: {val}", file=sys.stderr)
            return EXIT_USAGE
    try:
        code, text = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BirkhoffError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out_file:
        with open(args.out_file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
