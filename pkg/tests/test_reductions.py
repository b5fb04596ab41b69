"""Reduction constructions and query adapters against the naive oracles."""

import random

import pytest

from gridgram import (
    ExtRequiresLengthTwo,
    Matrix2D,
    NonUniformInstance,
    Slp1,
    dims,
    expand1,
    expand2,
    grammar_size1,
    grammar_size2,
    hconcat,
    validate_slp1,
)
from gridgram.errors import RangeError
from gridgram.gen import grammar_from_matrix, random_matrix, random_slp1, random_string
from gridgram.oracle import (
    equal_rect,
    line_lce,
    line_sum,
    occurs,
    ov_brute,
    rank,
    row_pattern_occurs,
    square_all_zero,
    square_lce,
)
from gridgram.reductions import (
    AlphabetMap,
    OvInstance,
    alphabet_reduce,
    dump_ov,
    ext_mark_all_chars,
    ext_mark_grammar,
    line_lce_via_equality,
    mark_all_chars,
    mark_char,
    mark_grammar,
    occurs_via_square_all_zero,
    ov_to_pm,
    pad_with_zero_block,
    parse_ov,
    rank_via_line_sum,
    square_all_zero_via_square_lce,
    square_lce_via_line_lce,
    uniform_ov,
)
from conftest import CountingProvider


# -- orthogonal vectors -------------------------------------------------------

def test_uniform_ov_formula():
    u = uniform_ov(OvInstance(((1, 0),)))
    assert u.vectors == ((1, 0, 1, 0, 0, 0), (1, 0, 0, 0, 1, 0))


def test_uniform_ov_counts_and_ones():
    inst = OvInstance(((1, 1, 0), (0, 0, 0), (1, 0, 1)))
    u = uniform_ov(inst)
    assert u.n == 2 * inst.n and u.d == 3 * inst.d
    assert all(sum(v) == inst.d for v in u.vectors)


def test_uniform_ov_preserves_answer():
    rng = random.Random(31)
    for _ in range(200):
        n, d = rng.randint(1, 10), rng.randint(1, 8)
        vecs = tuple(tuple(rng.randrange(2) for _ in range(d)) for _ in range(n))
        inst = OvInstance(vecs)
        assert ov_brute(vecs) == ov_brute(uniform_ov(inst).vectors)


def test_uniform_ov_exhaustive_tiny_instances():
    """Both directions of the answer-preservation claim over every instance
    with up to 3 vectors in up to 3 dimensions."""
    from itertools import combinations_with_replacement, product

    checked = 0
    for d in (1, 2, 3):
        space = list(product((0, 1), repeat=d))
        for n in (1, 2, 3):
            for vecs in combinations_with_replacement(space, n):
                inst = OvInstance(tuple(vecs))
                u = uniform_ov(inst)
                assert ov_brute(inst.vectors) == ov_brute(u.vectors)
                assert all(sum(v) == d for v in u.vectors)
                checked += 1
    assert checked == sum(
        len(list(combinations_with_replacement(range(2 ** d), n)))
        for d in (1, 2, 3) for n in (1, 2, 3))


def test_ov_to_pm_figure_instance(ov_figure_vectors):
    pm = ov_to_pm(OvInstance(ov_figure_vectors))
    assert pm.pattern.cells == [1, 0, 0, 1]
    t = expand2(pm.grammar)
    assert (t.rows, t.cols) == (5, 20)
    assert grammar_size2(pm.grammar) == 47
    assert grammar_size2(pm.grammar) == 2 + (pm.d + 1) * pm.n + (pm.l + 2) * pm.n
    assert row_pattern_occurs(t, pm.pattern) == 1


def test_ov_to_pm_figure_text_exact(ov_figure_vectors):
    """The worked example's full 5 x 20 text, frozen cell for cell."""
    pm = ov_to_pm(OvInstance(ov_figure_vectors))
    t = expand2(pm.grammar)
    want = ["11111101101110111101",
            "11011111110110011101",
            "10111011111110111001",
            "10111001101111111011",
            "11011101100111011111"]
    assert ["".join(str(v) for v in t.row(i)) for i in range(1, 6)] == want


def test_ov_to_pm_figure_zero_blocks(ov_figure_vectors):
    """The four highlighted all-zero runs sit exactly where the worked
    example places them: one per ordered orthogonal pair, inside the group
    of the left vector at the row of the right vector."""
    pm = ov_to_pm(OvInstance(ov_figure_vectors))
    t = expand2(pm.grammar)
    highlighted = [(4, 6), (5, 10), (2, 14), (3, 18)]  # (row, first zero col)
    for row, col in highlighted:
        assert t.get(row, col) == 0 and t.get(row, col + 1) == 0
        assert t.get(row, col - 1) == 1 and t.get(row, col + 2) == 1
    # pattern occurrences are exactly the highlighted spots
    spots = {(i, j) for i in range(1, t.rows + 1)
             for j in range(1, t.cols - 2)
             if [t.get(i, j + k) for k in range(4)] == [1, 0, 0, 1]}
    assert spots == {(r, c - 1) for (r, c) in highlighted}


def test_ov_to_pm_no_orthogonal_pair():
    pm = ov_to_pm(OvInstance(((1, 1), (1, 1))))
    assert row_pattern_occurs(expand2(pm.grammar), pm.pattern) == 0


def test_ov_to_pm_requires_uniform_ones():
    with pytest.raises(NonUniformInstance):
        ov_to_pm(OvInstance(((1, 0), (1, 1))))
    with pytest.raises(NonUniformInstance):
        ov_to_pm(OvInstance(((0, 0), (0, 0))))


def test_ov_to_pm_random_equivalence():
    rng = random.Random(37)
    for _ in range(60):
        n, d = rng.randint(1, 8), rng.randint(1, 6)
        vecs = tuple(tuple(rng.randrange(2) for _ in range(d)) for _ in range(n))
        inst = uniform_ov(OvInstance(vecs))
        pm = ov_to_pm(inst)
        assert dims(pm.grammar, pm.grammar.start) == (inst.n, (pm.l + 2) * inst.n)
        assert row_pattern_occurs(expand2(pm.grammar), pm.pattern) == ov_brute(vecs)


def _ov_text_direct(inst):
    """The target text assembled cell by cell from its definition: per vector,
    a ones column, the input-matrix columns at that vector's one-positions,
    then another ones column, all concatenated horizontally."""
    n = inst.n
    ones = Matrix2D(n, 1, [1] * n)
    col = lambda i: Matrix2D(n, 1, [vec[i] for vec in inst.vectors])
    acc = None
    for vec in inst.vectors:
        group = ones
        for i, b in enumerate(vec):
            if b:
                group = hconcat(group, col(i))
        group = hconcat(group, ones)
        acc = group if acc is None else hconcat(acc, group)
    return acc


def test_ov_to_pm_text_matches_direct_construction(ov_figure_vectors):
    rng = random.Random(29)
    instances = [OvInstance(ov_figure_vectors)]
    for _ in range(40):
        n, d = rng.randint(1, 7), rng.randint(1, 6)
        vecs = tuple(tuple(rng.randrange(2) for _ in range(d)) for _ in range(n))
        instances.append(uniform_ov(OvInstance(vecs)))
    for inst in instances:
        pm = ov_to_pm(inst)
        assert expand2(pm.grammar) == _ov_text_direct(inst)


def test_ov_file_roundtrip(ov_figure_vectors):
    inst = OvInstance(ov_figure_vectors)
    assert parse_ov(dump_ov(inst)) == inst


# -- marking matrices ---------------------------------------------------------

def test_mark_char_examples():
    assert mark_char([0, 1, 0], 0).cells == [1, 0, 1]
    assert mark_char([0, 1, 0], 1).cells == [0, 1, 0]
    assert mark_char([0, 1, 0], 7).cells == [0, 0, 0]


def test_mark_all_chars_example():
    assert mark_all_chars([0, 1, 0], 2).to_rows() == [[1, 0, 1], [0, 1, 0]]


def test_ext_mark_all_chars_example():
    assert ext_mark_all_chars([0, 1], 2).to_rows() == [[1, 0], [0, 0], [0, 1], [0, 0]]
    with pytest.raises(ExtRequiresLengthTwo):
        ext_mark_all_chars([0], 2)


def test_mark_all_chars_concatenation_identity():
    rng = random.Random(41)
    for _ in range(40):
        sigma = rng.randint(1, 6)
        t = random_string(rng.randrange(2**32), rng.randint(2, 30), sigma=sigma)
        cut = rng.randint(1, len(t) - 1)
        whole = mark_all_chars(t, sigma)
        parts = hconcat(mark_all_chars(t[:cut], sigma), mark_all_chars(t[cut:], sigma))
        assert whole == parts


def test_mark_grammar_ab():
    g = validate_slp1(Slp1([(1, 2), 0, 1], 2, 0))
    assert expand2(mark_grammar(g, 2)).to_rows() == [[1, 0], [0, 1]]


def test_ext_mark_grammar_ab():
    g = validate_slp1(Slp1([(1, 2), 0, 1], 2, 0))
    assert expand2(ext_mark_grammar(g, 2)).to_rows() == [[1, 0], [0, 0], [0, 1], [0, 0]]


def test_ext_mark_grammar_needs_length_two():
    g = validate_slp1(Slp1([0], 1, 0))
    with pytest.raises(ExtRequiresLengthTwo):
        ext_mark_grammar(g, 1)


def test_marking_grammars_random_equality_and_size():
    rng = random.Random(43)
    for _ in range(60):
        sigma = rng.randint(1, 8)
        g = random_slp1(rng.randrange(2**32), rng.randint(2, 25),
                        sigma=sigma, max_len=64)
        text = expand1(g)
        mg = mark_grammar(g, sigma)
        assert expand2(mg) == mark_all_chars(text, sigma)
        assert grammar_size2(mg) <= 6 * (grammar_size1(g) + sigma)
        if len(text) >= 2:
            eg = ext_mark_grammar(g, sigma)
            assert expand2(eg) == ext_mark_all_chars(text, sigma)
            assert grammar_size2(eg) <= 8 * (grammar_size1(g) + sigma)


def test_ext_mark_grammar_power_of_two_lengths():
    # n - 1 a power of two exercises the top of the doubling chain
    for n_exp in (1, 2, 3, 4):
        n = (1 << n_exp) + 1
        rules = [(i + 1, i + 2) for i in range(n - 2)] + [0, 0]
        # build a left chain of exactly n literals
        rules = []
        for i in range(n - 1):
            rules.append((n - 1 + i, i + 1) if i < n - 2 else (n - 1 + i, 2 * n - 2))
        rules.extend([0] * n)
        g = validate_slp1(Slp1(rules, 1, 0))
        text = expand1(g)
        assert len(text) == n
        eg = ext_mark_grammar(g, 1)
        assert expand2(eg) == ext_mark_all_chars(text, 1)


# -- alphabet reduction -------------------------------------------------------

def test_alphabet_reduce_example():
    # "acac" over a wide alphabet using codes {0, 2}
    g = validate_slp1(Slp1([(1, 1), (2, 3), 0, 2], 100, 0))
    reduced, amap = alphabet_reduce(g)
    assert amap.codes == (0, 2)
    assert reduced.alphabet_size == 2
    assert expand1(reduced) == [0, 1, 0, 1]


def test_alphabet_reduce_identity_on_dense():
    g = validate_slp1(Slp1([(1, 2), 0, 1], 2, 0))
    reduced, amap = alphabet_reduce(g)
    assert amap.codes == (0, 1)
    assert expand1(reduced) == expand1(g)


def test_alphabet_reduce_prunes_unreachable():
    g = validate_slp1(Slp1([(1, 2), 3, 5, 9], 10, 0))  # literal 9 unreachable
    reduced, amap = alphabet_reduce(g)
    assert amap.codes == (3, 5)
    assert len(reduced.rules) == 3


def test_alphabet_map_lookup():
    amap = AlphabetMap((2, 5, 9))
    assert 5 in amap and 4 not in amap
    assert amap.index_of(9) == 2 and amap.index_of(3) is None


def test_absent_code_answers_zero_without_provider():
    boom = CountingProvider(lambda *a: 1 / 0)
    assert rank_via_line_sum(boom, AlphabetMap((1, 3)), 5, 2) == 0
    assert occurs_via_square_all_zero(boom, AlphabetMap((1, 3)), 0, 4, 2, 5) == 0
    assert boom.calls == 0


# -- rank / occurrence adapters -----------------------------------------------

def test_rank_via_line_sum_example():
    text = [0, 1, 0]
    marking = mark_all_chars(text, 2)
    provider = lambda e_r, e_c, l: line_sum(marking, e_r, e_c, l)
    assert rank_via_line_sum(provider, None, 3, 0) == 2


def test_occurs_via_square_all_zero_example():
    text = [0, 1]
    marking = ext_mark_all_chars(text, 2)
    provider = lambda e_r, e_c, l: square_all_zero(marking, e_r, e_c, l)
    assert square_all_zero(marking, 4, 1, 1) == 1
    assert occurs_via_square_all_zero(provider, None, 0, 1, 1, 2) == 0
    assert occurs_via_square_all_zero(provider, None, 1, 1, 0, 2) == 0  # empty range


def test_rank_occurs_adapters_exhaustive_sweep():
    rng = random.Random(47)
    for _ in range(25):
        sigma = rng.randint(1, 8)
        n = rng.randint(2, 24)
        text = random_string(rng.randrange(2**32), n, sigma=sigma)
        marking = mark_all_chars(text, sigma)
        ext = ext_mark_all_chars(text, sigma)
        ls = CountingProvider(lambda e_r, e_c, l: line_sum(marking, e_r, e_c, l))
        saz = CountingProvider(lambda e_r, e_c, l: square_all_zero(ext, e_r, e_c, l))
        for c in range(sigma):
            for j in range(n + 1):
                before = ls.calls
                assert rank_via_line_sum(ls, None, j, c) == rank(text, j, c)
                assert ls.calls == before + 1
            for b in range(n + 1):
                for e in range(n + 1):
                    assert occurs_via_square_all_zero(saz, None, b, e, c, n) == \
                        occurs(text, b, e, c)


def test_adapters_through_alphabet_map_and_grammars():
    """Full chain: sparse-alphabet SLP -> alphabet reduction -> marking
    grammar -> oracle provider -> adapter answers = direct oracle answers."""
    rng = random.Random(53)
    for _ in range(12):
        g = random_slp1(rng.randrange(2**32), rng.randint(2, 15), sigma=60, max_len=48)
        text = expand1(g)
        sigma = 60
        reduced, amap = alphabet_reduce(g)
        marking = expand2(mark_grammar(reduced, len(amap)))
        ls = lambda e_r, e_c, l: line_sum(marking, e_r, e_c, l)
        n = len(text)
        ext = expand2(ext_mark_grammar(reduced, len(amap))) if n >= 2 else None
        saz = (lambda e_r, e_c, l: square_all_zero(ext, e_r, e_c, l)) if ext else None
        codes = set(text) | {0, 7, sigma - 1}
        for c in codes:
            for j in range(n + 1):
                assert rank_via_line_sum(ls, amap, j, c) == rank(text, j, c)
            if saz:
                for b in range(n + 1):
                    for e in range(b, n + 1):
                        assert occurs_via_square_all_zero(saz, amap, b, e, c, n) == \
                            occurs(text, b, e, c)


# -- LCE / all-zero adapter chains ---------------------------------------------

def test_square_lce_via_line_lce_example():
    m = Matrix2D(2, 2, [0, 1, 0, 1])
    provider = lambda br, bc, br2, bc2, l: line_lce(m, br, bc, br2, bc2, l)
    assert square_lce_via_line_lce(provider, 2, 2, 1, 1, 2, 1) == \
        square_lce(m, 1, 1, 2, 1) == 1


def test_line_lce_via_equality_identical_origins():
    m = Matrix2D(2, 3, [0, 1, 0, 1, 1, 0])
    provider = lambda br, bc, br2, bc2, h, w: equal_rect(m, br, bc, br2, bc2, h, w)
    assert line_lce_via_equality(provider, 2, 3, 1, 1, 1, 1, 2) == 3


def test_lce_adapters_random_sweep_with_call_counts():
    rng = random.Random(59)
    for _ in range(40):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        m = random_matrix(rng.randrange(2**32), r, c, sigma=2)
        n = max(r, c)
        budget = (n + 1).bit_length() + 1    # ceil(log2(n+1)) + 1 slack
        for b_r in range(1, r + 1):
            for b_c in range(1, c + 1):
                for b2_r in range(1, r + 1):
                    for b2_c in range(1, c + 1):
                        ll = CountingProvider(
                            lambda *a: line_lce(m, *a))
                        got = square_lce_via_line_lce(ll, r, c, b_r, b_c, b2_r, b2_c)
                        assert got == square_lce(m, b_r, b_c, b2_r, b2_c)
                        assert ll.calls <= budget
                        l = min(r - b_r + 1, r - b2_r + 1)
                        eq = CountingProvider(
                            lambda *a: equal_rect(m, *a))
                        got = line_lce_via_equality(eq, r, c, b_r, b_c, b2_r, b2_c, l)
                        assert got == line_lce(m, b_r, b_c, b2_r, b2_c, l)
                        assert eq.calls <= budget


def test_pad_with_zero_block_structure():
    m = Matrix2D(2, 3, [1, 0, 1, 0, 1, 1])
    g = grammar_from_matrix(m)
    padded = pad_with_zero_block(g)
    pm = expand2(padded)
    assert (pm.rows, pm.cols) == (2, 6)
    assert [row[:3] for row in pm.to_rows()] == m.to_rows()
    assert all(v == 0 for row in pm.to_rows() for v in row[3:])
    # padding adds only a logarithmic number of rules
    assert grammar_size2(padded) <= grammar_size2(g) + 4 * (
        m.rows.bit_length() + m.cols.bit_length()) + 6


def test_square_all_zero_via_square_lce_sweep():
    rng = random.Random(61)
    for _ in range(25):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        m = random_matrix(rng.randrange(2**32), r, c, sigma=2)
        g = grammar_from_matrix(m)
        padded, make_adapter = square_all_zero_via_square_lce(g)
        pm = expand2(padded)
        saz = make_adapter(lambda *a: square_lce(pm, *a))
        for e_r in range(r + 1):
            for e_c in range(c + 1):
                for l in range(min(e_r, e_c) + 1):
                    assert saz(e_r, e_c, l) == square_all_zero(m, e_r, e_c, l)


def test_composition_chain_occurs_down_to_equality():
    """occurs -> square all-zero -> square LCE (padded grammar) -> line LCE
    -> rectangle equality, every stage backed only by the stage below."""
    rng = random.Random(67)
    for _ in range(10):
        sigma = rng.randint(2, 5)
        g = random_slp1(rng.randrange(2**32), rng.randint(3, 12), sigma=sigma, max_len=20)
        text = expand1(g)
        n = len(text)
        if n < 2:
            continue
        reduced, amap = alphabet_reduce(g)
        ext_g = ext_mark_grammar(reduced, len(amap))
        padded, make_adapter = square_all_zero_via_square_lce(ext_g)
        pm = expand2(padded)
        pr, pc = pm.rows, pm.cols

        eq = lambda br, bc, br2, bc2, h, w: equal_rect(pm, br, bc, br2, bc2, h, w)
        ll = lambda br, bc, br2, bc2, l: line_lce_via_equality(eq, pr, pc, br, bc, br2, bc2, l)
        slce = lambda br, bc, br2, bc2: square_lce_via_line_lce(ll, pr, pc, br, bc, br2, bc2)
        saz = make_adapter(slce)

        for c in range(sigma + 2):
            for b in range(n + 1):
                for e in range(n + 1):
                    assert occurs_via_square_all_zero(saz, amap, b, e, c, n) == \
                        occurs(text, b, e, c)


def test_adapter_range_errors():
    m = Matrix2D(2, 2, [0, 0, 0, 0])
    provider = lambda *a: line_lce(m, *a)
    with pytest.raises(RangeError):
        square_lce_via_line_lce(provider, 2, 2, 0, 1, 1, 1)
    with pytest.raises(RangeError):
        line_lce_via_equality(lambda *a: 1, 2, 2, 1, 1, 1, 1, 5)
    with pytest.raises(RangeError):
        rank_via_line_sum(lambda *a: 0, None, -1, 0)
    with pytest.raises(RangeError):
        occurs_via_square_all_zero(lambda *a: 0, None, 0, 9, 0, 5)
