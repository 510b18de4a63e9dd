"""Command-line front end: every computation and verification as a
reproducible command with text/JSON/CSV/DOT output.

Exit codes: 0 success, 1 assertion or cross-route mismatch, 2 size guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chains as ch
from . import lattice as lat
from . import series as ser
from . import stirling as st
from . import wpartition as wp

GUARD_EXIT = 2
FAIL_EXIT = 1


def _emit(text: str, args) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _guard(args) -> int | None:
    return None if not getattr(args, "force", False) else 10 ** 12


def _jdump(obj) -> str:
    return json.dumps(obj, indent=2)


# ---------------------------------------------------------------------------

def cmd_count(args) -> int:
    n, k = args.n, args.k
    estimate = sum(st.T_def(n, k, r) for r in range(n + 1))
    limit = _guard(args) or lat.DEFAULT_GUARD
    if estimate > limit:
        print(f"guard: {estimate} elements over limit {limit}", file=sys.stderr)
        return GUARD_EXIT
    everything = wp.enumerate_all(n, k)
    counts = {}
    for pi in everything:
        r = len(pi.layers[0])
        counts[r] = counts.get(r, 0) + 1
    rs = [args.r] if args.r is not None else sorted(counts)
    bad = [(r, counts.get(r, 0), st.T_def(n, k, r))
           for r in rs if counts.get(r, 0) != st.T_def(n, k, r)]
    if bad:
        for r, got, want in bad:
            print(f"mismatch at r={r}: enumerated {got}, T(n,k,r) {want}",
                  file=sys.stderr)
        return FAIL_EXIT
    if args.format == "json":
        _emit(_jdump({"n": n, "k": k,
                      "counts": {str(r): counts.get(r, 0) for r in rs},
                      "total": sum(counts.get(r, 0) for r in rs)}), args)
    elif args.format == "csv":
        lines = ["r,count"] + [f"{r},{counts.get(r, 0)}" for r in rs]
        _emit("\n".join(lines), args)
    else:
        parts = [f"r={r}:{counts.get(r, 0)}" for r in rs]
        if len(rs) > 1:
            parts.append(f"total {sum(counts.get(r, 0) for r in rs)}")
        _emit(", ".join(parts), args)
    return 0


def _table_rows(kind: str, n_max: int, k: int) -> list[list[int]]:
    """Triangle rows n = 1..n_max, entries r = 1..n, checked against the
    independent series route."""
    if kind in ("T", "t"):
        series = (ser.exp_k_xy if kind == "T" else ser.log_k_xy)(k, n_max)
        direct = st.T_def if kind == "T" else st.t_def
        second = st.T_rec_split if kind == "T" else st.t_rec_split
    elif kind == "S":
        series = ser.exp_k_xy(1, n_max)
        direct, second = st.stirling2, None
    else:  # s
        series = ser.log_k_xy(1, n_max)
        direct, second = st.stirling1, None
    rows = []
    for n in range(1, n_max + 1):
        row = []
        for r in range(1, n + 1):
            v = direct(n, k, r) if kind in ("T", "t") else direct(n, r)
            c = series.coefficient(n, r)
            if c != v or (second is not None and second(n, k, r) != v):
                raise AssertionError(
                    f"route mismatch for {kind}({n},{k},{r}): def {v}, series {c}")
            row.append(v)
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    if args.kind == "bell":
        values = [st.bell(n) for n in range(args.n_max + 1)]
        if args.format == "json":
            _emit(_jdump({"kind": "bell", "values": values}), args)
        elif args.format == "csv":
            _emit("\n".join(f"{n},{v}" for n, v in enumerate(values)), args)
        else:
            _emit(", ".join(map(str, values)), args)
        return 0
    try:
        rows = _table_rows(args.kind, args.n_max, args.k)
    except AssertionError as exc:
        print(str(exc), file=sys.stderr)
        return FAIL_EXIT
    if args.format == "json":
        _emit(_jdump({"kind": args.kind, "k": args.k, "rows": rows}), args)
    elif args.format == "csv":
        _emit("\n".join(",".join(map(str, row)) for row in rows), args)
    else:
        _emit("\n".join(", ".join(map(str, row)) for row in rows), args)
    return 0


def cmd_series(args) -> int:
    fn = ser.exp_k_xy if args.which == "exp" else ser.log_k_xy
    rows = fn(args.k, args.order).rows_int()
    if args.format == "json":
        _emit(_jdump({"which": args.which, "k": args.k, "order": args.order,
                      "rows": rows}), args)
    elif args.format == "csv":
        _emit("\n".join(",".join(map(str, row)) for row in rows), args)
    else:
        _emit("\n".join(", ".join(map(str, row)) for row in rows), args)
    return 0


def cmd_mobius(args) -> int:
    n, k = args.n, args.k
    values = {}
    try:
        if args.method in ("closed", "all"):
            values["closed"] = lat.mobius_closed_form(n, k)
        if args.method in ("recursive", "chains", "all"):
            poset = lat.build_poset(n, k, guard=_guard(args))
            if args.method in ("recursive", "all"):
                values["recursive"] = poset.mobius_recursive(
                    poset.bottom_idx, poset.top_idx)
            if args.method in ("chains", "all"):
                values["chains"] = poset.mobius_via_chains()
    except lat.GuardExceeded as exc:
        print(str(exc), file=sys.stderr)
        return GUARD_EXIT
    if len(set(values.values())) > 1:
        print(f"mobius methods disagree: {values}", file=sys.stderr)
        return FAIL_EXIT
    if args.method == "all":
        _emit("\n".join(f"{m}: {v}" for m, v in sorted(values.items())), args)
    else:
        _emit(str(next(iter(values.values()))), args)
    return 0


def _poly_str(coeffs: list[int]) -> str:
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if c == 0:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        mag = "" if abs(c) == 1 and d > 0 else str(abs(c))
        text = mag + mono
        if not terms:
            terms.append(("-" if c < 0 else "") + text)
        else:
            terms.append(("-" if c < 0 else "+") + text)
    return "".join(terms) if terms else "0"


def cmd_charpoly(args) -> int:
    n, k = args.n, args.k
    coeffs = lat.char_poly_product(n, k)
    estimate = sum(st.T_def(n, k, r) for r in range(n + 1)) + 1
    limit = _guard(args) or lat.DEFAULT_GUARD
    if estimate <= limit:
        summed = lat.char_poly_summation(n, k)
        if summed != coeffs:
            print(f"characteristic polynomial routes disagree: "
                  f"summation {summed}, product {coeffs}", file=sys.stderr)
            return FAIL_EXIT
    factors = "".join("x" if root == 0 else f"(x-{root})"
                      for root in lat.char_poly_roots(n, k))
    text = f"{factors} = {_poly_str(coeffs)}"
    if args.format == "json":
        _emit(_jdump({"n": n, "k": k, "roots": lat.char_poly_roots(n, k),
                      "coefficients": coeffs, "display": text}), args)
    else:
        _emit(text, args)
    return 0


def cmd_hasse(args) -> int:
    try:
        poset = lat.build_poset(args.n, args.k, guard=_guard(args))
    except lat.GuardExceeded as exc:
        print(str(exc), file=sys.stderr)
        return GUARD_EXIT
    _emit(lat.hasse_dot(poset), args)
    return 0


def cmd_chains(args) -> int:
    try:
        poset = lat.build_poset(args.n, args.k, guard=_guard(args))
    except lat.GuardExceeded as exc:
        print(str(exc), file=sys.stderr)
        return GUARD_EXIT
    if args.filter == "decreasing":
        listing = list(poset.decreasing_chains(poset.bottom_idx, poset.top_idx))
    else:
        listing = list(poset.maximal_chains(poset.bottom_idx, poset.top_idx))
        if args.filter == "rising":
            listing = [c for c in listing if poset.is_rising(c)]
    if args.format == "json":
        _emit(_jdump({"n": args.n, "k": args.k, "filter": args.filter,
                      "count": len(listing),
                      "chains": [[str(l) for l in c] for c in listing]}), args)
    else:
        lines = [" ".join(str(l) for l in c) for c in listing]
        lines.append(f"total {len(listing)}")
        _emit("\n".join(lines), args)
    return 0


def _lbt_dot(trees: list) -> str:
    lines = ["digraph trees {", "  node [shape=circle];"]
    for t_idx, tree in enumerate(trees):
        counter = [0]

        def walk(node, parent_name):
            name = f"t{t_idx}n{counter[0]}"
            counter[0] += 1
            label = "*" if node.value is None else f"{node.value}_{node.sub}"
            lines.append(f'  {name} [label="{label}"];')
            if parent_name:
                lines.append(f"  {parent_name} -> {name};")
            if not node.is_leaf:
                walk(node.left, name)
                walk(node.right, name)

        lines.append(f"  subgraph cluster_{t_idx} {{")
        walk(tree, "")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_trees(args) -> int:
    trees = ch.enumerate_lbt(args.n, args.k)
    if args.format == "dot":
        _emit(_lbt_dot(trees), args)
    elif args.format == "text":
        lines = [json.dumps(t.to_nested()) for t in trees]
        lines.append(f"total {len(trees)}")
        _emit("\n".join(lines), args)
    else:
        _emit(_jdump({"n": args.n, "k": args.k, "count": len(trees),
                      "trees": [t.to_nested() for t in trees]}), args)
    return 0


# ---------------------------------------------------------------------------
# verification suites

def _verify_el(n: int, k: int, guard) -> list[dict]:
    poset = lat.build_poset(n, k, guard=guard)
    return [poset.verify_el()]


def _verify_structure(n: int, k: int, guard) -> list[dict]:
    poset = lat.build_poset(n, k, guard=guard)
    checks = lat.structural_checks(poset)
    expected = k * n * (n - 1) // 2
    got = len(wp.atoms(n, k))
    checks.append({"check": "atom_count",
                   "status": "pass" if got == expected else "fail",
                   "witnesses": [] if got == expected else
                   [{"expected": expected, "got": got}]})
    return checks


def _verify_bijections(n: int, k: int, guard) -> list[dict]:
    checks = []

    bad = []
    for pi in wp.enumerate_all(n, k):
        if wp.from_rooted_tree(wp.to_rooted_tree(pi)) != pi:
            bad.append({"pi": wp.one_line_print(pi), "issue": "rooted-tree round trip"})
        if wp.edge_set_inverse(wp.edge_set(pi), n, k) != pi:
            bad.append({"pi": wp.one_line_print(pi), "issue": "edge-set round trip"})
        if wp.one_line_parse(wp.one_line_print(pi), n, k) != pi:
            bad.append({"pi": wp.one_line_print(pi), "issue": "one-line round trip"})
    checks.append({"check": "partition_round_trips",
                   "status": "pass" if not bad else "fail", "witnesses": bad})

    if n >= 2:
        poset = lat.build_poset(n, k, guard=guard)
        chains_list = list(poset.decreasing_chains(poset.bottom_idx, poset.top_idx))
        bad = []
        for labels in chains_list:
            tree = ch.chain_to_lbt(labels, n, k)
            if ch.lbt_to_chain(tree, k) != labels:
                bad.append({"chain": [str(l) for l in labels],
                            "issue": "chain/tree round trip"})
            elif ch.lbt_check(tree, n, k):
                bad.append({"chain": [str(l) for l in labels],
                            "issue": f"invalid tree: {ch.lbt_check(tree, n, k)}"})
        trees = ch.enumerate_lbt(n, k)
        if len(trees) != len(chains_list):
            bad.append({"issue": "tree count != decreasing chain count",
                        "trees": len(trees), "chains": len(chains_list)})
        checks.append({"check": "chain_tree_round_trips",
                       "status": "pass" if not bad else "fail", "witnesses": bad})
    return checks


def cmd_verify(args) -> int:
    n, k, guard = args.n, args.k, _guard(args)
    checks: list[dict] = []
    try:
        if args.suite in ("el", "all"):
            checks += _verify_el(n, k, guard)
        if args.suite in ("structure", "all"):
            checks += _verify_structure(n, k, guard)
        if args.suite in ("bijections", "all"):
            checks += _verify_bijections(n, k, guard)
    except lat.GuardExceeded as exc:
        print(str(exc), file=sys.stderr)
        return GUARD_EXIT
    _emit(_jdump({"n": n, "k": k, "suite": args.suite, "checks": checks}), args)
    return FAIL_EXIT if any(c["status"] == "fail" for c in checks) else 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wplat",
        description="Exact computations on the lattice of weighted partitions")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write output to a file")
        p.add_argument("--force", action="store_true",
                       help="override the poset size guard")
        return p

    p = add("count", cmd_count, help="per-rank element counts, two routes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = add("table", cmd_table, help="number triangles with cross-checks")
    p.add_argument("--kind", choices=["T", "t", "s", "S", "bell"], required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = add("series", cmd_series, help="iterated exp/log series coefficients")
    p.add_argument("--which", choices=["exp", "log"], required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = add("mobius", cmd_mobius, help="Möbius function of the lattice")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["recursive", "chains", "closed", "all"],
                   default="all")

    p = add("charpoly", cmd_charpoly, help="characteristic polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("hasse", cmd_hasse, help="Hasse diagram as DOT")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("chains", cmd_chains, help="maximal chains of the full interval")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--filter", choices=["all", "rising", "decreasing"],
                   default="all")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("trees", cmd_trees, help="labeled binary trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")

    p = add("verify", cmd_verify, help="verification suites, JSON report")
    p.add_argument("--suite", choices=["el", "structure", "bijections", "all"],
                   default="all")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
