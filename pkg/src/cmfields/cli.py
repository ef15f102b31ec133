"""Command line front end: classify, verify, explore.

Exit codes are 0 (success / all checks passed), 1 (a verification check
failed), 2 (usage or input error). JSON output always has sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .cartan import CartanParams, CmOrder, c_eps, c_eps_prime, c_matrix, cartan_subgroup
from .classifier import NON_ABELIAN_UNSPECIFIED, GeneralCM, J1728, JZero, classify
from .modmat import (
    GroupTooLargeError,
    abelian_invariants,
    element_order,
    group_closure,
    is_abelian,
)
from .verifier import ALL_CHECK_IDS, run_suite

#: explore builds whole groups by enumeration; past this level that is no
#: longer interactive, and the sweeps in `verify` cover large levels anyway.
_EXPLORE_LEVEL_CAP = 128

_CLASSIFY_ALL_LEVELS = range(2, 13)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmfields",
        description="classification and exhaustive verification of abelian "
        "division fields of CM elliptic curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="classify the division field of one curve at one level"
    )
    p_classify.add_argument("--jzero", type=int, metavar="D", help="y^2 = x^3 + D (j = 0)")
    p_classify.add_argument("--j1728", type=int, metavar="A", help="y^2 = x^3 + Ax (j = 1728)")
    p_classify.add_argument("--disc", type=int, metavar="DK", help="fundamental discriminant")
    p_classify.add_argument("--conductor", type=int, default=1, metavar="F", help="order conductor")
    p_classify.add_argument(
        "--n",
        required=True,
        metavar="N",
        help="level (1-12), or 'all' for levels 2-12; everything reduces to divisors of 12",
    )
    p_classify.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--suite", default="all", choices=("all",) + ALL_CHECK_IDS)
    p_verify.add_argument("--n-max", type=int, default=None, help="override sweep level bound")
    p_verify.add_argument("--p-max", type=int, default=None, help="override oracle prime bound")
    p_verify.add_argument("--out", metavar="PATH", help="also write the report as JSON")
    p_verify.add_argument("--figures", metavar="DIR", help="render report figures into DIR")

    p_explore = sub.add_parser(
        "explore", help="build one Cartan-type group at a chosen level and inspect it"
    )
    p_explore.add_argument("--delta", type=int, required=True, help="delta numerator")
    p_explore.add_argument("--delta-den", type=int, default=1, help="delta denominator (1, 4, 8)")
    p_explore.add_argument("--phi", type=int, required=True)
    p_explore.add_argument("--n", type=int, required=True, help=f"level, at most {_EXPLORE_LEVEL_CAP}")
    p_explore.add_argument(
        "--adjoin",
        choices=("c1", "ceps-minus", "cprime"),
        help="adjoin a reflection to the group",
    )
    p_explore.add_argument(
        "--generators",
        metavar="PAIRS",
        help="semicolon-separated Cartan coordinates 'a,b;a,b;...' to generate from "
        "instead of the full Cartan subgroup",
    )
    p_explore.add_argument("--json", action="store_true", help="emit JSON instead of text")
    return parser


def _classify_curve(args: argparse.Namespace):
    picked = [name for name in ("jzero", "j1728", "disc") if getattr(args, name) is not None]
    if len(picked) != 1:
        raise ValueError("pick exactly one of --jzero, --j1728, --disc")
    if args.jzero is not None:
        return JZero(args.jzero)
    if args.j1728 is not None:
        return J1728(args.j1728)
    return GeneralCM(CmOrder(args.disc, args.conductor))


def _classification_payload(curve, n: int) -> dict:
    result = classify(curve, n)
    return {
        "abelian": result.abelian,
        "structure": result.structure,
        "cyclotomic": result.cyclotomic,
    }


def _classification_line(curve, n: int) -> str:
    result = classify(curve, n)
    if not result.abelian:
        if result.structure == NON_ABELIAN_UNSPECIFIED:
            return f"n={n}: non-abelian"
        return f"n={n}: non-abelian ({result.structure})"
    line = f"n={n}: abelian, structure {result.structure_text()}"
    if result.cyclotomic:
        line += "; equal to the cyclotomic field"
    return line


def cmd_classify(args: argparse.Namespace) -> int:
    curve = _classify_curve(args)
    if args.n == "all":
        levels = list(_CLASSIFY_ALL_LEVELS)
        if args.json:
            payload = [dict(_classification_payload(curve, n), n=n) for n in levels]
            print(json.dumps(payload, sort_keys=True))
        else:
            for n in levels:
                print(_classification_line(curve, n))
        return 0
    try:
        n = int(args.n)
    except ValueError:
        raise ValueError(f"--n must be an integer or 'all', got {args.n!r}") from None
    if not 1 <= n <= 12:
        raise ValueError(f"--n must be in [1, 12] (or 'all'), got {n}")
    if args.json:
        print(json.dumps(_classification_payload(curve, n), sort_keys=True))
    else:
        print(_classification_line(curve, n))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_suite(args.suite, n_max=args.n_max, p_max=args.p_max)
    print(report.render_text())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(report.to_dict(), handle, sort_keys=True, indent=2)
            handle.write("\n")
    if args.figures:
        from .figures import render_report_figures

        for path in render_report_figures(report, args.figures):
            print(f"# wrote {path}")
    return 0 if report.all_passed else 1


def _parse_generator_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"generator {chunk!r} is not of the form 'a,b'")
        pairs.append((int(parts[0]), int(parts[1])))
    if not pairs:
        raise ValueError("--generators given but no pairs parsed")
    return pairs


def cmd_explore(args: argparse.Namespace) -> int:
    if not 1 <= args.n <= _EXPLORE_LEVEL_CAP:
        raise ValueError(f"--n must be in [1, {_EXPLORE_LEVEL_CAP}], got {args.n}")
    params = CartanParams(args.delta, args.delta_den, args.phi)
    n = args.n
    reflection = None
    if args.adjoin == "c1":
        reflection = c_eps(params, 1, n)
    elif args.adjoin == "ceps-minus":
        reflection = c_eps(params, -1, n)
    elif args.adjoin == "cprime":
        reflection = c_eps_prime(1, n)

    if args.generators is not None:
        mats = [c_matrix(params, a, b, n) for a, b in _parse_generator_pairs(args.generators)]
        if reflection is not None:
            mats.append(reflection)
        group = group_closure(mats, modulus=n)
    else:
        cartan = cartan_subgroup(params, n)
        if reflection is not None:
            group = group_closure(list(cartan.sorted_elements()) + [reflection])
        else:
            group = cartan

    abelian = is_abelian(group)
    invariants = abelian_invariants(group) if abelian else None
    order_counts: dict[int, int] = {}
    for m in group.sorted_elements():
        k = element_order(m)
        order_counts[k] = order_counts.get(k, 0) + 1

    if args.json:
        payload = {
            "n": n,
            "order": group.order,
            "abelian": abelian,
            "invariants": invariants,
            "order_counts": {str(k): v for k, v in sorted(order_counts.items())},
            "elements": [list(m.encode()) for m in group.sorted_elements()],
        }
        print(json.dumps(payload, sort_keys=True))
        return 0
    print(f"level {n}, delta {args.delta}/{args.delta_den} = {params.delta_mod(n)} mod {n}, phi {args.phi % n}")
    print(f"order {group.order}")
    if abelian:
        print(f"abelian: yes, invariants {invariants}")
    else:
        print("abelian: no")
    counts = ", ".join(f"{k}: {v}" for k, v in sorted(order_counts.items()))
    print(f"element orders: {counts}")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"classify": cmd_classify, "verify": cmd_verify, "explore": cmd_explore}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, GroupTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
