"""Command-line front end.

Subcommands: mobius (all computations of the Mobius number side by side),
nbb-bases (enumerate NBB bases of the adjoined bound, optionally against
the sparse-set prediction), verify (the full claim suite as text or JSON),
hasse (DOT or JSON diagram export), fib (polynomial table).

Exit status 0 means every requested computation agreed, 1 means some
claim or identity failed, 2 means the request itself was invalid.
"""

from __future__ import annotations

import argparse
import json
import sys

from .families import (
    BOTTOM_LABEL,
    build_family,
    mobius_summary,
    predicted_nbb_bases,
    verify_all,
)
from .fibpoly import fib_poly, h_poly
from .nbb import nbb_bases_of

DEFAULT_MAX_N = {"A": 10, "B": 9, "C": 10}


def _json_dumps(data) -> str:
    return json.dumps(data, ensure_ascii=False, separators=(",", ": "), indent=2)


def _parse_n_range(text: str) -> tuple[int, int]:
    """Accept '6' or '3..9'."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _check_bounds(parser, family: str, n_hi: int, force: bool):
    bound = DEFAULT_MAX_N[family]
    if n_hi > bound and not force:
        parser.error(
            f"n={n_hi} exceeds the default bound {bound} for family {family}; "
            "pass --force to spend the time and memory anyway"
        )


def cmd_mobius(parser, args) -> int:
    try:
        n_lo, n_hi = _parse_n_range(args.n)
    except ValueError:
        parser.error(f"cannot parse --n {args.n!r}")
    if n_lo < 1 or n_hi < n_lo:
        parser.error("n range must be positive and increasing")
    _check_bounds(parser, args.family, n_hi, args.force)
    rows = []
    all_agree = True
    for n in range(n_lo, n_hi + 1):
        summary = mobius_summary(n, families=(args.family,))
        all_agree &= summary["agree"]
        rows.append(summary)
    if args.format == "json":
        print(_json_dumps({"rows": rows, "family": args.family}))
    else:
        for s in rows:
            out_of_range = "out of range (n<3)"
            sparse = out_of_range if s["sparse_sum"] is None else s["sparse_sum"]
            fib = out_of_range if s["fib_eval"] is None else s["fib_eval"]
            status = "agree" if s["agree"] else "MISMATCH"
            print(
                f"n={s['n']}: recurrence {s['oracle'][args.family]}, "
                f"nbb {s['nbb'][args.family]}, sparse sum {sparse}, "
                f"F_(n-2)(-1) {fib} -> {status}"
            )
    return 0 if all_agree else 1


def cmd_nbb_bases(parser, args) -> int:
    n = args.n
    if n < 1:
        parser.error("n must be positive")
    _check_bounds(parser, args.family, n, args.force)
    fam = build_family(args.family, n)
    bases = nbb_bases_of(fam.canonical_order, fam.nbb_target)
    listed = [fam.canonical_order.labels(b.atoms) for b in bases]
    side = "atoms" if args.family == "B" else "coatoms"
    target = "1̂" if args.family == "B" else BOTTOM_LABEL
    predicted = None
    match = None
    if n >= 3:
        predicted = [list(b) for b in predicted_nbb_bases(args.family, n)]
        match = {frozenset(b) for b in listed} == {frozenset(b) for b in predicted}
    if args.format == "json":
        print(
            _json_dumps(
                {
                    "family": args.family,
                    "n": n,
                    "side": side,
                    "order": [fam.nbb_lattice.labels[a] for a in fam.canonical_order.sequence],
                    "bases": listed,
                    "predicted": predicted,
                    "match": match,
                }
            )
        )
    else:
        print(f"NBB bases of {target} in family {args.family}, n={n} ({side}):")
        for b in listed:
            print("  " + " ".join(b))
        if not listed:
            print("  (none)")
        if predicted is None:
            print("prediction unavailable (n<3)")
        else:
            print("prediction: " + ("match" if match else "MISMATCH"))
            if args.predict:
                for b in predicted:
                    print("  " + " ".join(b))
    if match is False:
        return 1
    return 0


def cmd_verify(parser, args) -> int:
    if args.max_n < 1:
        parser.error("--max-n must be positive")
    # family B grows fastest, so its bound is the binding one
    if args.max_n > DEFAULT_MAX_N["B"] and not args.force:
        parser.error(
            f"--max-n {args.max_n} exceeds the default bound {DEFAULT_MAX_N['B']}; "
            "pass --force to run anyway"
        )
    claims = verify_all(args.max_n, args.seed)
    ok = all(c.passed for c in claims)
    if args.format == "json":
        print(_json_dumps({"claims": [c.to_json_dict() for c in claims], "seed": args.seed}))
    else:
        for c in claims:
            state = "PASS" if c.passed else "FAIL"
            extra = "" if c.witness is None else f"  [{c.witness}]"
            print(f"{state} {c.id} family={c.family} n={c.n}{extra}")
        print(f"{sum(c.passed for c in claims)}/{len(claims)} claims pass")
    return 0 if ok else 1


def cmd_hasse(parser, args) -> int:
    if args.n < 1:
        parser.error("n must be positive")
    _check_bounds(parser, args.family, args.n, args.force)
    fam = build_family(args.family, args.n)
    if args.format == "json":
        text = _json_dumps(fam.lattice.poset.to_json_dict()) + "\n"
    else:
        text = fam.lattice.poset.to_dot()
    if args.output is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"cannot write {args.output}: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_fib(parser, args) -> int:
    if args.n < 1:
        parser.error("n must be positive")
    f = fib_poly(args.n)
    h = h_poly(args.n)
    same = f == h
    if args.format == "json":
        data = {
            "n": args.n,
            "fib": list(f.coeffs),
            "sparse_generating": list(h.coeffs),
            "equal": same,
        }
        if args.eval is not None:
            data["eval_at"] = args.eval
            data["value"] = f.eval(args.eval)
        print(_json_dumps(data))
    else:
        print(f"F_{args.n}(q) = {f}")
        print(f"H_{args.n}(q) = {h}")
        print("H = F" if same else "H != F")
        if args.eval is not None:
            print(f"F_{args.n}({args.eval}) = {f.eval(args.eval)}")
    return 0 if same else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobiuslat",
        description="Mobius numbers of pattern-avoidance and composition lattices",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family(p):
        p.add_argument("--family", choices=("A", "B", "C"), required=True)
        p.add_argument(
            "--force",
            action="store_true",
            help="allow n beyond the default safety bound (slow, memory-hungry)",
        )

    p = sub.add_parser("mobius", help="compare every computation of the Mobius number")
    add_family(p)
    p.add_argument("--n", required=True, help="a size like 6, or a range like 3..9")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_mobius)

    p = sub.add_parser("nbb-bases", help="enumerate NBB bases of the adjoined bound")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--predict", action="store_true", help="show the sparse-set prediction")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_nbb_bases)

    p = sub.add_parser("verify", help="run the whole claim suite")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hasse", help="export a Hasse diagram")
    add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("fib", help="print the polynomial table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eval", type=int, help="also evaluate at this integer")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_fib)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    raise SystemExit(main())
