"""1D bookmark index: hook contract, boundary mappings, query equivalence."""

import random

import pytest

from gridgram import (
    PositionOutOfRange,
    PreconditionViolated,
    Slp1,
    access1,
    access1_traced,
    build_index1,
    ceil_log,
    dump_index1,
    exp_len,
    expand1,
    hook_offset1,
    left_map,
    load_index1,
    optimal_tau,
    right_map,
    validate_slp1,
)
from gridgram.errors import RangeError
from gridgram.gen import random_slp1
from conftest import expand_all_1d


def test_ceil_log():
    assert ceil_log(1, 2) == 0
    assert ceil_log(2, 2) == 1
    assert ceil_log(5, 2) == 3
    assert ceil_log(9, 3) == 2
    assert ceil_log(81, 3) == 4


def test_optimal_tau_clamps():
    assert optimal_tau(1) == 2
    assert optimal_tau(2 ** 16) == 16
    assert optimal_tau(2 ** 16, epsilon=0.5) == 4


def test_hook_full_window_straddles_split(abab):
    bm = hook_offset1(abab, 0, 0, 4)
    assert (bm.hook, bm.offset) == (0, 0)


def test_hook_examples(abab):
    assert hook_offset1(abab, 0, 1, 3) == hook_offset1(abab, 0, 1, 3)
    bm = hook_offset1(abab, 0, 1, 3)
    assert (bm.hook, bm.offset) == (0, 1)
    bm = hook_offset1(abab, 0, 0, 1)
    assert (bm.hook, bm.offset) == (2, 0)


def test_hook_rejects_bad_window(abab):
    with pytest.raises(RangeError):
        hook_offset1(abab, 0, 2, 2)
    with pytest.raises(RangeError):
        hook_offset1(abab, 0, 0, 5)


def _hook_by_definition(g, nid, b, e):
    """Direct recursive transcription of the hook/offset definitions; the
    independent route against the iterative implementation."""
    m = exp_len(g, nid)
    if m == 1:
        return (nid, 0)
    x, y = g.rules[nid]
    l = exp_len(g, x)
    if b < l < e:
        return (nid, b)
    if e <= l:
        return _hook_by_definition(g, x, b, e)
    return _hook_by_definition(g, y, b - l, e - l)


def test_hook_matches_recursive_definition():
    rng = random.Random(19)
    for seed in range(15):
        g = random_slp1(seed + 900, 14, sigma=3, max_len=128)
        for _ in range(250):
            nid = rng.randrange(len(g.rules))
            m = exp_len(g, nid)
            b = rng.randrange(m)
            e = rng.randint(b + 1, m)
            bm = hook_offset1(g, nid, b, e)
            assert (bm.hook, bm.offset) == _hook_by_definition(g, nid, b, e)


def test_hook_window_equality_exhaustive_small():
    """Window relocation: w(b..e] reappears at the offset inside the hook,
    width-1 windows land on literals, wider ones straddle the hook's split."""
    for seed in range(12):
        g = random_slp1(seed + 100, 18, sigma=3, max_len=64)
        exps = expand_all_1d(g)
        for nid in range(len(g.rules)):
            w = exps[nid]
            m = len(w)
            for b in range(m):
                for e in range(b + 1, m + 1):
                    bm = hook_offset1(g, nid, b, e)
                    h = exps[bm.hook]
                    assert w[b:e] == h[bm.offset:bm.offset + (e - b)]
                    assert bm.offset <= b
                    if e - b == 1:
                        assert exp_len(g, bm.hook) == 1
                    else:
                        x, _ = g.rules[bm.hook]
                        l = exp_len(g, x)
                        assert bm.offset < l < bm.offset + (e - b)


def test_index_single_literal():
    g = validate_slp1(Slp1([0], 1, 0))
    ix = build_index1(g, 2)
    assert ix.levels == 0
    assert set(ix.left) == {(0, 0, 0)} and ix.left[(0, 0, 0)] == (0, 0)
    assert ix.right[(0, 0, 0)] == (0, 0)


def test_index_abab_entry(abab):
    ix = build_index1(abab, 2)
    assert ix.left[(0, 1, 1)] == (1, 0)


def test_index_entry_count_bound():
    g = random_slp1(4, 10, sigma=2, max_len=16)
    ix = build_index1(g, 2)
    assert ix.entry_count() <= 2 * 10 * 2 * (ix.levels + 1)


def test_index_rejects_tau_below_two(abab):
    with pytest.raises(PreconditionViolated):
        build_index1(abab, 1)


def test_left_map_examples(abab):
    ix = build_index1(abab, 2)
    assert left_map(ix, 0, 0, 2) == (3, 1, "L")     # reads 'b'
    assert left_map(ix, 0, 1, 3) == (2, 1, "R")     # reads 'a'
    g1 = validate_slp1(Slp1([0], 1, 0))
    ixs = build_index1(g1, 2)
    assert left_map(ixs, 0, 0, 1) == (0, 1, "L")


def test_right_map_examples(abab):
    ix = build_index1(abab, 2)
    g1 = validate_slp1(Slp1([0], 1, 0))
    ixs = build_index1(g1, 2)
    assert right_map(ixs, 0, 0, 1) == (0, 1, "L")
    t, d, side = right_map(ix, 0, 0, 1)             # Exp(S)[4] = 'b'
    assert abab.rules[t] == 1 and d == 1
    t, d, side = right_map(ix, 0, 1, 3)             # Exp(S)[2] = 'b'
    assert abab.rules[t] == 1 and d == 1


def test_map_precondition_checks(abab):
    ix = build_index1(abab, 2)
    with pytest.raises(PreconditionViolated):
        left_map(ix, 0, 0, 5)
    with pytest.raises(PreconditionViolated):
        left_map(ix, 0, 0, 3)   # delta > tau**(p+1)
    with pytest.raises(PreconditionViolated):
        right_map(ix, 0, 0, 0)


def test_map_contraction_property():
    rng = random.Random(13)
    for seed in range(10):
        g = random_slp1(seed + 300, 20, sigma=3, max_len=512)
        for tau in (2, 3):
            ix = build_index1(g, tau)
            for _ in range(200):
                t = rng.randrange(len(g.rules))
                m = exp_len(g, t)
                p = rng.randint(0, ix.levels)
                delta = rng.randint(1, min(m, ix.pows[p + 1]))
                for fn in (left_map, right_map):
                    t2, d2, side = fn(ix, t, p, delta)
                    assert 1 <= d2 <= exp_len(g, t2)
                    assert d2 <= ix.pows[p]
                    if p == 0:
                        assert exp_len(g, t2) == 1


def test_map_access_semantics_random():
    """left/right map outputs address the same symbol, checked on the
    naive expansion via side-based indexing."""
    rng = random.Random(17)
    for seed in range(10):
        g = random_slp1(seed + 400, 16, sigma=3, max_len=256)
        exps = expand_all_1d(g)
        for tau in (2, 3):
            ix = build_index1(g, tau)
            for _ in range(300):
                t = rng.randrange(len(g.rules))
                m = len(exps[t])
                p = rng.randint(0, ix.levels)
                delta = rng.randint(1, min(m, ix.pows[p + 1]))
                for fn, side_in in ((left_map, "L"), (right_map, "R")):
                    before = exps[t][delta - 1] if side_in == "L" else exps[t][m - delta]
                    t2, d2, s2 = fn(ix, t, p, delta)
                    w2 = exps[t2]
                    after = w2[d2 - 1] if s2 == "L" else w2[len(w2) - d2]
                    assert before == after


def test_access_abab(abab):
    ix = build_index1(abab, 2)
    assert [access1(ix, i) for i in (1, 2, 3, 4)] == [0, 1, 0, 1]


def test_access_single_literal():
    g = validate_slp1(Slp1([0], 1, 0))
    ix = build_index1(g, 2)
    code, steps = access1_traced(ix, 1)
    assert code == 0 and steps == 1


def test_access_out_of_range(abab):
    ix = build_index1(abab, 2)
    with pytest.raises(PositionOutOfRange):
        access1(ix, 0)
    with pytest.raises(PositionOutOfRange):
        access1(ix, 5)


def test_access_random_30_rule_all_positions():
    g = random_slp1(77, 30, sigma=5, max_len=2048)
    text = expand1(g)
    for tau in (2, 3, 8):
        ix = build_index1(g, tau)
        want_steps = ix.levels + 1
        for i, want in enumerate(text, start=1):
            code, steps = access1_traced(ix, i)
            assert code == want
            assert steps == want_steps


def test_dump_load_roundtrip(tmp_path):
    g = random_slp1(5, 25, sigma=4, max_len=1024)
    ix = build_index1(g, 3)
    path = tmp_path / "index.aix1"
    dump_index1(ix, path)
    ix2 = load_index1(g, path)
    assert ix2.left == ix.left and ix2.right == ix.right
    text = expand1(g)
    for i in range(1, len(text) + 1):
        assert access1(ix2, i) == text[i - 1]


def test_load_rejects_bad_magic_and_mismatched_grammar(tmp_path):
    from gridgram.errors import ParseError

    g = random_slp1(5, 25, sigma=4, max_len=1024)
    ix = build_index1(g, 3)
    path = tmp_path / "index.aix1"
    dump_index1(ix, path)
    bad = tmp_path / "bad.aix1"
    bad.write_bytes(b"NOPE" + path.read_bytes()[4:])
    with pytest.raises(ParseError):
        load_index1(g, bad)
    other = random_slp1(6, 25, sigma=4, max_len=1024)
    with pytest.raises(ParseError):
        load_index1(other, path)
