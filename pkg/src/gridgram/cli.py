"""Command-line surface: validation, expansion, point queries, reductions,
corpus generation, and benchmarking.

Conventions: stdout carries only data (one value per query line, CSV for
bench, grammar/matrix files); diagnostics go to stderr. Exit codes: 0 on
success, 1 on a domain error, 2 on a usage error. Every command is
deterministic given its flags and seed (bench timing columns excepted).

The expansion cap defaults to 2**26 cells and can be overridden by the
GG_CAP_CELLS environment variable or the --cap-cells flag (flag wins).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import time

from . import access1d, access2d, gen, oracle, reductions
from .errors import GrammarError, ParseError, PositionOutOfRange
from .slg import DEFAULT_CAP, dump_slg1, expand1, parse_slg1, slg_to_slp, validate_slg1
from .slg2d import (
    dump_matrix,
    dump_slg2,
    expand2,
    parse_slg2,
    slg2_to_slp2,
    validate_slg2,
)


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _load_grammar(path):
    """Load either grammar format by peeking the header token."""
    text = _read(path)
    head = text.lstrip().split(None, 1)
    kind = head[0] if head else ""
    if kind == "SLG1":
        return parse_slg1(text)
    if kind == "SLG2":
        return parse_slg2(text)
    raise ParseError(f"{path}: expected an SLG1 or SLG2 file, found {kind!r}")


def _cap(args):
    if getattr(args, "cap_cells", None):
        return args.cap_cells
    env = os.environ.get("GG_CAP_CELLS")
    if env:
        return int(env)
    return DEFAULT_CAP


def _pick_tau(args, n):
    if args.tau is not None:
        return args.tau
    return access1d.optimal_tau(n, args.epsilon)


def _pick_tau2(args, n):
    if args.tau is not None:
        return args.tau
    return access2d.optimal_tau2(n, args.epsilon)


# -- commands -----------------------------------------------------------------

def cmd_validate(args):
    from .slg import Slg1

    g = _load_grammar(args.path)
    if isinstance(g, Slg1):
        g = validate_slg1(g)
        print(f"ok n={g._lens[g.start]}")
    else:
        g = validate_slg2(g)
        print(f"ok rows={g._rows[g.start]} cols={g._cols[g.start]}")
    return 0


def cmd_expand(args):
    from .slg import Slg1

    g = _load_grammar(args.path)
    cap = _cap(args)
    if isinstance(g, Slg1):
        text = expand1(validate_slg1(g), cap=cap)
        _write(args.out, " ".join(str(v) for v in text) + "\n")
    else:
        m = expand2(validate_slg2(g), cap=cap)
        _write(args.out, dump_matrix(m))
    return 0


def cmd_access(args):
    from .slg import Slg1

    g = _load_grammar(args.path)
    failed = False
    if isinstance(g, Slg1):
        slp = slg_to_slp(validate_slg1(g, allow_empty=True))
        ix = access1d.build_index1(slp, _pick_tau(args, slp._lens[slp.start]))
        reference = expand1(slp, cap=_cap(args)) if args.verify else None
        for q in args.coords:
            try:
                i = int(q.replace(",", " ").split()[0])
                code = access1d.access1(ix, i)
            except (PositionOutOfRange, ValueError, IndexError) as e:
                print("ERR")
                print(f"query {q!r}: {e}", file=sys.stderr)
                failed = True
                continue
            if reference is not None and reference[i - 1] != code:
                raise AssertionError(f"verify mismatch at {i}")
            print(code)
    else:
        slp = slg2_to_slp2(validate_slg2(g))
        n = max(slp._rows[slp.start], slp._cols[slp.start])
        ix = access2d.build_index2(slp, _pick_tau2(args, n))
        reference = expand2(slp, cap=_cap(args)) if args.verify else None
        for q in args.coords:
            try:
                parts = q.replace(",", " ").split()
                i, j = int(parts[0]), int(parts[1])
                code = access2d.access2(ix, i, j)
            except (PositionOutOfRange, ValueError, IndexError) as e:
                print("ERR")
                print(f"query {q!r}: {e}", file=sys.stderr)
                failed = True
                continue
            if reference is not None and reference.get(i, j) != code:
                raise AssertionError(f"verify mismatch at ({i},{j})")
            print(code)
    return 1 if failed else 0


def cmd_ov(args):
    if args.ov_cmd == "gen":
        rng_inst = gen._rng(args.seed)
        vecs = tuple(tuple(rng_inst.randrange(2) for _ in range(args.d))
                     for _ in range(args.n))
        _write(args.out, reductions.dump_ov(reductions.OvInstance(vecs)))
        return 0
    inst = reductions.parse_ov(_read(args.path))
    if args.ov_cmd == "uniform":
        _write(args.out, reductions.dump_ov(reductions.uniform_ov(inst)))
        return 0
    if args.ov_cmd == "solve":
        print(oracle.ov_brute(inst.vectors))
        return 0
    # reduce
    pm = reductions.ov_to_pm(inst)
    _write(args.pattern_out, "".join(str(b) for b in pm.pattern.cells) + "\n")
    _write(args.grammar_out, dump_slg2(pm.grammar))
    from .slg2d import grammar_size2
    print(f"n={pm.n} d={pm.d} l={pm.l} size={grammar_size2(pm.grammar)}", file=sys.stderr)
    return 0


def _query_1d(args, cap):
    g = slg_to_slp(validate_slg1(_load_grammar(args.path), allow_empty=True))
    name, qargs = args.query, [int(a) for a in args.args]
    if name == "rank":
        j, c = qargs
        if not args.via:
            return oracle.rank(expand1(g, cap=cap), j, c)
        if args.via != "line-sum":
            raise ParseError(f"rank supports --via line-sum, not {args.via!r}")
        reduced, amap = reductions.alphabet_reduce(g)
        marking = expand2(reductions.mark_grammar(reduced, len(amap)), cap=cap)
        provider = lambda e_r, e_c, l: oracle.line_sum(marking, e_r, e_c, l)
        return reductions.rank_via_line_sum(provider, amap, j, c)
    if name == "occurs":
        b, e, c = qargs
        if not args.via:
            return oracle.occurs(expand1(g, cap=cap), b, e, c)
        if args.via != "square-all-zero":
            raise ParseError(f"occurs supports --via square-all-zero, not {args.via!r}")
        reduced, amap = reductions.alphabet_reduce(g)
        n = reduced._lens[reduced.start]
        marking = expand2(reductions.ext_mark_grammar(reduced, len(amap)), cap=cap)
        provider = lambda e_r, e_c, l: oracle.square_all_zero(marking, e_r, e_c, l)
        return reductions.occurs_via_square_all_zero(provider, amap, b, e, c, n)
    raise ParseError(f"unknown 1D query {name!r}")


def _query_2d(args, cap):
    g = validate_slg2(_load_grammar(args.path))
    m = expand2(g, cap=cap)
    name = args.query
    if name == "row-pattern":
        pat = [int(ch) for ch in args.args[0]]
        return oracle.row_pattern_occurs(m, pat)
    qargs = [int(a) for a in args.args]
    if name == "sum":
        return oracle.sum_rect(m, *qargs)
    if name == "line-sum":
        return oracle.line_sum(m, *qargs)
    if name == "all-zero":
        return oracle.all_zero(m, *qargs)
    if name == "square-all-zero":
        if not args.via:
            return oracle.square_all_zero(m, *qargs)
        if args.via != "square-lce":
            raise ParseError(f"square-all-zero supports --via square-lce, not {args.via!r}")
        padded, make_adapter = reductions.square_all_zero_via_square_lce(g)
        pm = expand2(padded, cap=max(cap, 2 * m.rows * m.cols))
        provider = lambda br, bc, br2, bc2: oracle.square_lce(pm, br, bc, br2, bc2)
        return make_adapter(provider)(*qargs)
    if name == "equal":
        return oracle.equal_rect(m, *qargs)
    if name == "square-lce":
        if not args.via:
            return oracle.square_lce(m, *qargs)
        if args.via != "line-lce":
            raise ParseError(f"square-lce supports --via line-lce, not {args.via!r}")
        provider = lambda br, bc, br2, bc2, l: oracle.line_lce(m, br, bc, br2, bc2, l)
        return reductions.square_lce_via_line_lce(provider, m.rows, m.cols, *qargs)
    if name == "line-lce":
        if not args.via:
            return oracle.line_lce(m, *qargs)
        if args.via != "equality":
            raise ParseError(f"line-lce supports --via equality, not {args.via!r}")
        provider = lambda br, bc, br2, bc2, h, w: oracle.equal_rect(m, br, bc, br2, bc2, h, w)
        return reductions.line_lce_via_equality(provider, m.rows, m.cols, *qargs)
    raise ParseError(f"unknown 2D query {name!r}")


def cmd_query(args):
    cap = _cap(args)
    if args.query in ("rank", "occurs"):
        print(_query_1d(args, cap))
    else:
        print(_query_2d(args, cap))
    return 0


def cmd_reduce(args):
    from .slg import Slg1

    g = _load_grammar(args.path)
    if args.kind in ("mark", "extmark"):
        if not isinstance(g, Slg1):
            raise ParseError("mark/extmark need an SLG1 input")
        slp = slg_to_slp(validate_slg1(g, allow_empty=True))
        sigma = args.sigma or slp.alphabet_size
        build = reductions.mark_grammar if args.kind == "mark" else reductions.ext_mark_grammar
        out = build(slp, sigma)
        _write(args.out, dump_slg2(out))
        from .slg import grammar_size1
        from .slg2d import grammar_size2
        in_size, out_size = grammar_size1(slp), grammar_size2(out)
        print(f"size={out_size} input={in_size} sigma={sigma} "
              f"ratio={out_size / (in_size + sigma):.2f}", file=sys.stderr)
        return 0
    # pad
    if isinstance(g, Slg1):
        raise ParseError("pad needs an SLG2 input")
    _write(args.out, dump_slg2(reductions.pad_with_zero_block(validate_slg2(g))))
    return 0


def cmd_bench(args):
    from .slg import Slg1

    g = _load_grammar(args.path)
    rng = gen._rng(args.seed)
    taus = [int(t) for t in args.tau_list.split(",")]
    rows = ["tau,entries,bytes,build_ms,mean_query_ns,loop_iterations_mean"]
    if isinstance(g, Slg1):
        slp = slg_to_slp(validate_slg1(g, allow_empty=True))
        n = slp._lens[slp.start]
        queries = [rng.randint(1, n) for _ in range(args.reps)]
        for tau in taus:
            t0 = time.perf_counter()
            ix = access1d.build_index1(slp, tau)
            build_ms = (time.perf_counter() - t0) * 1e3
            with tempfile.NamedTemporaryFile(delete=False) as tmp:
                access1d.dump_index1(ix, tmp.name)
                nbytes = os.path.getsize(tmp.name)
            os.unlink(tmp.name)
            t0 = time.perf_counter()
            total_steps = 0
            for q in queries:
                total_steps += access1d.access1_traced(ix, q)[1]
            query_ns = (time.perf_counter() - t0) * 1e9 / max(1, len(queries))
            rows.append(f"{tau},{ix.entry_count()},{nbytes},{build_ms:.3f},"
                        f"{query_ns:.0f},{total_steps / max(1, len(queries)):.2f}")
    else:
        slp = slg2_to_slp2(validate_slg2(g))
        r, c = slp._rows[slp.start], slp._cols[slp.start]
        queries = [(rng.randint(1, r), rng.randint(1, c)) for _ in range(args.reps)]
        for tau in taus:
            t0 = time.perf_counter()
            ix = access2d.build_index2(slp, tau)
            build_ms = (time.perf_counter() - t0) * 1e3
            with tempfile.NamedTemporaryFile(delete=False) as tmp:
                access2d.dump_index2(ix, tmp.name)
                nbytes = os.path.getsize(tmp.name)
            os.unlink(tmp.name)
            t0 = time.perf_counter()
            total_steps = 0
            for qi, qj in queries:
                total_steps += access2d.access2_traced(ix, qi, qj)[1]
            query_ns = (time.perf_counter() - t0) * 1e9 / max(1, len(queries))
            rows.append(f"{tau},{ix.entry_count()},{nbytes},{build_ms:.3f},"
                        f"{query_ns:.0f},{total_steps / max(1, len(queries)):.2f}")
    print("\n".join(rows))
    return 0


def cmd_gen(args):
    if args.kind == "slp1":
        g = gen.random_slp1(args.seed, args.rules, sigma=args.sigma, max_len=args.max_len)
        _write(args.out, dump_slg1(g))
    elif args.kind == "slg1":
        g = gen.random_slg1(args.seed, args.rules, sigma=args.sigma, max_len=args.max_len)
        _write(args.out, dump_slg1(g))
    elif args.kind == "slp2":
        g = gen.random_slp2(args.seed, args.rules, sigma=args.sigma, max_cells=args.max_cells)
        _write(args.out, dump_slg2(g))
    else:
        g = gen.random_slg2(args.seed, args.rules, sigma=args.sigma, max_cells=args.max_cells)
        _write(args.out, dump_slg2(g))
    return 0


# -- argument wiring ----------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="gridgram",
        description="grammar-compressed 1D/2D strings: access indexes and reductions")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check a grammar file")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("expand", help="decompress a grammar file")
    p.add_argument("path")
    p.add_argument("-o", "--out", default="-")
    p.add_argument("--cap-cells", type=int, default=None)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("access", help="point queries through the bookmark index")
    p.add_argument("path")
    p.add_argument("coords", nargs="+", metavar="COORD",
                   help="position i (1D) or i,j (2D), one result line each")
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--verify", action="store_true",
                   help="cross-check against full expansion (under the cap)")
    p.add_argument("--cap-cells", type=int, default=None)
    p.set_defaults(fn=cmd_access)

    p = sub.add_parser("ov", help="orthogonal-vectors pipelines")
    ovsub = p.add_subparsers(dest="ov_cmd", required=True)
    q = ovsub.add_parser("gen", help="random instance")
    q.add_argument("n", type=int)
    q.add_argument("d", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("-o", "--out", default="-")
    q = ovsub.add_parser("uniform", help="equalize ones counts")
    q.add_argument("path")
    q.add_argument("-o", "--out", default="-")
    q = ovsub.add_parser("reduce", help="emit pattern + grammar instance")
    q.add_argument("path")
    q.add_argument("-p", "--pattern-out", required=True)
    q.add_argument("-g", "--grammar-out", required=True)
    q = ovsub.add_parser("solve", help="brute-force answer")
    q.add_argument("path")
    p.set_defaults(fn=cmd_ov)

    p = sub.add_parser("query", help="run a query (oracle, or --via an adapter chain)")
    p.add_argument("path")
    p.add_argument("query", choices=["rank", "occurs", "sum", "line-sum", "all-zero",
                                     "square-all-zero", "equal", "square-lce",
                                     "line-lce", "row-pattern"])
    p.add_argument("args", nargs="+")
    p.add_argument("--via", default=None,
                   help="adapter chain: line-sum | square-all-zero | square-lce | "
                        "line-lce | equality")
    p.add_argument("--cap-cells", type=int, default=None)
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("reduce", help="write a constructed grammar")
    p.add_argument("kind", choices=["mark", "extmark", "pad"])
    p.add_argument("path")
    p.add_argument("out")
    p.add_argument("--sigma", type=int, default=None)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("bench", help="index build/query measurements as CSV")
    p.add_argument("path")
    p.add_argument("--tau-list", default="2,3,8")
    p.add_argument("--reps", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("gen", help="seeded random grammar files")
    p.add_argument("kind", choices=["slp1", "slg1", "slp2", "slg2"])
    p.add_argument("--rules", type=int, required=True)
    p.add_argument("--sigma", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=int, default=1 << 14)
    p.add_argument("--max-cells", type=int, default=1 << 16)
    p.add_argument("-o", "--out", default="-")
    p.set_defaults(fn=cmd_gen)

    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except GrammarError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
