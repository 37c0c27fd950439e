"""Command-line interface.

Exit codes: 0 success, 1 a hypothesis of the requested operation fails,
2 malformed input.  Payloads go to stdout as JSON; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from pdskit.construct import latin_square_lines, paley, trivial_pds
from pdskit.errors import HypothesisError, InconsistencyError
from pdskit.existence import classify_order
from pdskit.group import parse_group
from pdskit.pds import (
    SubsetInGroup,
    character_verify,
    classify,
    is_paley_type,
    is_regular,
    is_trivial,
    parse_subset,
)
from pdskit.restrict import check_certificate, paley_nonexistence_witness, restrict_and_verify
from pdskit.search import paley_search

log = logging.getLogger("pdskit")


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_subset(text: str) -> SubsetInGroup:
    """Subset text, or ``-`` for a JSON object with keys group and ranks on stdin."""
    if text == "-":
        doc = json.load(sys.stdin)
        try:
            return SubsetInGroup.from_ranks(parse_group(str(doc["group"])), doc["ranks"])
        except (KeyError, TypeError):
            raise ValueError("stdin JSON needs keys 'group' and 'ranks'") from None
    return parse_subset(text)


def verification_json(D: SubsetInGroup) -> dict:
    rep = classify(D)
    regular = is_regular(D)
    out = {
        **D.to_json(),
        "is_pds": rep.is_pds,
        "v": D.group.order,
        "k": D.size,
        "lambda": None,
        "mu": None,
        "beta": None,
        "delta_sq": None,
        "regular": regular,
        "trivial": is_trivial(D),
        "paley_type": False,
        "character_check": "not_applicable",
    }
    if rep.is_pds:
        out.update(rep.params.to_json())
        out["paley_type"] = regular and is_paley_type(rep.params)
        if regular:
            out["character_check"] = character_verify(D, rep.params).status
    else:
        ce = rep.counterexample
        out["counterexample"] = {
            "element": list(ce.element),
            "rank": D.group.rank(ce.element),
            "count": ce.count,
            "expected": ce.expected,
            "in_subset": ce.in_subset,
        }
    return out


def cmd_construct(args: argparse.Namespace) -> int:
    if args.kind == "paley":
        D = paley(args.q)
        spec = {"kind": "paley", "q": args.q}
    elif args.kind == "lines":
        D = latin_square_lines(args.n, args.r)
        spec = {"kind": "lines", "n": args.n, "r": args.r}
    else:
        G = parse_group(args.group)
        D = trivial_pds(G, primes=args.primes)
        spec = {"kind": "trivial", "group": G.descriptor(), "primes": sorted(args.primes)}
    rep = classify(D)
    _emit({**D.to_json(), "text": D.to_text(), "construction": spec, "params": rep.params.to_json() if rep.is_pds else None})
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    _emit(verification_json(_read_subset(args.subset)))
    return 0


def cmd_restrict(args: argparse.Namespace) -> int:
    D = _read_subset(args.subset)
    rep = restrict_and_verify(D, args.primes)
    _emit({**D.to_json(), **rep.to_json()})
    return 0


def cmd_nonexistence(args: argparse.Namespace) -> int:
    cert = paley_nonexistence_witness(args.v)
    out: dict = {"v": args.v, "certificate": None}
    if cert is not None:
        out["certificate"] = cert.to_json()
        out["failed_checks"] = check_certificate(cert)
    _emit(out)
    return 0


def _orders(text: str) -> list[int]:
    if ".." in text:
        lo, hi = (int(s) for s in text.split("..", 1))
        if lo > hi:
            raise ValueError(f"empty range {text!r}")
        return [v for v in range(max(lo, 3), hi + 1) if v % 2 == 1]
    return [int(text)]


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        orders = _orders(args.order)
    except ValueError:
        raise ValueError(f"malformed order or range {args.order!r}") from None
    for v in orders:
        _emit(classify_order(v).to_json())
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    G = parse_group(args.group)
    outcome = paley_search(G, limit=args.limit, prune=not args.no_prune, bound=args.bound, workers=args.workers)
    for D in outcome.results:
        _emit({**D.to_json(), "text": D.to_text()})
    _emit({"summary": {"group": G.descriptor(), "count": len(outcome.results), "nodes": outcome.nodes, "pruned": outcome.pruned}})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdskit", description="Partial difference sets in finite abelian groups.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a PDS")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("paley", help="nonzero squares of GF(q)")
    k.add_argument("q", type=int)
    k = kinds.add_parser("lines", help="union of r lines y = a x in Z_n x Z_n")
    k.add_argument("n", type=int)
    k.add_argument("r", type=int)
    k = kinds.add_parser("trivial", help="Hall subgroup minus the identity")
    k.add_argument("group", help='cyclic orders, e.g. "3,15"')
    k.add_argument("--primes", type=_int_list, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="classify a subset")
    p.add_argument("subset", help='e.g. "5:[1,4]", or - for JSON on stdin')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("restrict", help="restrict a PDS to a Hall subgroup")
    p.add_argument("subset")
    p.add_argument("--primes", type=_int_list, required=True)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("nonexistence", help="nonexistence certificate for an odd square order")
    p.add_argument("v", type=int)
    p.set_defaults(func=cmd_nonexistence)

    p = sub.add_parser("classify", help="existence verdict for odd orders")
    p.add_argument("order", help="odd v, or a range lo..hi (odd values only)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", help="exhaustive Paley-type search")
    p.add_argument("group")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--bound", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (HypothesisError, InconsistencyError) as exc:
        print(f"pdskit: {exc}", file=sys.stderr)
        return 1
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"pdskit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
