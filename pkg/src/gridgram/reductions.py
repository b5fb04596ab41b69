"""Constructive reductions between query families.

Contents:

  * orthogonal-vectors instance handling: uniformization to an equal number
    of ones per vector, and the instance builder that turns a uniform OV set
    into a single-row pattern plus a small 2D grammar whose expansion
    contains the pattern exactly when an orthogonal pair exists;
  * marking matrices: the sigma x n 0/1 matrix whose row c marks the
    occurrences of symbol c in a 1D string, the padded n*sigma x n variant,
    and grammar constructions producing both directly from a 1D SLP;
  * the alphabet reduction remapping a sparse alphabet onto a dense one;
  * query adapters: rank via line sum, symbol occurrence via square all-zero,
    square LCE via line LCE (binary search), line LCE via rectangle equality
    (binary search), and square all-zero via square LCE over a zero-padded
    grammar.

Adapters are written against plain callables ("providers") answering the
lower-level query, so the same code path runs over the naive oracle today
and over any future sublinear structure. All constructors are pure and the
adapters stateless; concurrent use is safe given concurrent-safe providers.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

from .errors import (
    ExtRequiresLengthTwo,
    NonUniformInstance,
    ParseError,
    RangeError,
)
from .slg import grammar_size1, validate_slp1
from .slg2d import Horiz, Matrix2D, Slg2, Vert, validate_slg2


# -- orthogonal vectors -------------------------------------------------------

@dataclass(frozen=True)
class OvInstance:
    """A set of equal-length 0/1 vectors."""

    vectors: tuple

    def __post_init__(self):
        vecs = tuple(tuple(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if not vecs:
            raise RangeError("instance must contain at least one vector")
        d = len(vecs[0])
        if d < 1:
            raise RangeError("vectors must have dimension >= 1")
        for v in vecs:
            if len(v) != d:
                raise RangeError("vectors must share one dimension")
            if any(b not in (0, 1) for b in v):
                raise RangeError("vector entries must be 0 or 1")

    @property
    def n(self):
        return len(self.vectors)

    @property
    def d(self):
        return len(self.vectors[0])

    def ones_counts(self):
        return [sum(v) for v in self.vectors]


@dataclass(frozen=True)
class PmInstance:
    """Pattern + grammar produced from a uniform OV instance.

    The pattern is the single row 1 0^l 1; the grammar expands to an
    n x (l+2)n matrix of vector-column groups, and the pattern occurs in it
    iff the source instance contains an orthogonal pair.
    """

    pattern: Matrix2D
    grammar: Slg2
    n: int
    d: int
    l: int


def uniform_ov(inst):
    """Rewrite an instance so every vector has exactly d ones (d' = 3d, 2n vectors).

    Each vector x with k ones maps to two vectors: x 1^(d-k) 0^(d+k) and
    x 0^d 1^(d-k) 0^k. An orthogonal pair exists in the output iff one exists
    in the input.
    """
    d = inst.d
    out = []
    for x in inst.vectors:
        k = sum(x)
        out.append(x + (1,) * (d - k) + (0,) * (d + k))
    for x in inst.vectors:
        k = sum(x)
        out.append(x + (0,) * d + (1,) * (d - k) + (0,) * k)
    return OvInstance(tuple(out))


def ov_to_pm(inst):
    """Build the pattern-matching instance for a uniform OV set.

    Requires every vector to contain the same number of ones l >= 1 (run
    uniform_ov first otherwise). The text is the horizontal concatenation,
    over vectors a_i, of a ones-column, then the columns of the input matrix
    selected at a_i's one-positions, then another ones-column. The grammar
    has one rule per input dimension (a column of the vector matrix), a
    ones-column rule, two literals, and the start rule spelling the column
    sequence; its size is exactly 2 + (d+1)n + (l+2)n.
    """
    counts = inst.ones_counts()
    l = counts[0]
    if any(c != l for c in counts):
        raise NonUniformInstance(f"ones counts differ: {sorted(set(counts))}")
    if l < 1:
        raise NonUniformInstance("vectors must contain at least one 1")

    n, d = inst.n, inst.d
    # ids: 0 start, 1 literal 0, 2 literal 1, 3..d+2 vector columns, d+3 ones column
    col_id = lambda i: 2 + i          # i in [1..d]
    ones_id = d + 3
    start_children = []
    for vec in inst.vectors:
        start_children.append(ones_id)
        start_children.extend(col_id(i + 1) for i, b in enumerate(vec) if b == 1)
        start_children.append(ones_id)

    rules = [None] * (d + 4)
    rules[0] = Vert(*start_children)
    rules[1] = 0
    rules[2] = 1
    for i in range(1, d + 1):
        rules[col_id(i)] = Horiz(*(1 + vec[i - 1] for vec in inst.vectors))
    rules[ones_id] = Horiz(*([2] * n))

    grammar = validate_slg2(Slg2(rules, 2, 0))
    pattern = Matrix2D(1, l + 2, [1] + [0] * l + [1])
    return PmInstance(pattern, grammar, n, d, l)


# -- OV file format (one 0/1 vector per line) ---------------------------------

def parse_ov(text):
    vecs = []
    for ln in text.splitlines():
        ln = ln.strip().replace(" ", "")
        if not ln:
            continue
        if any(ch not in "01" for ch in ln):
            raise ParseError(f"bad vector line: {ln!r}")
        vecs.append(tuple(int(ch) for ch in ln))
    if not vecs:
        raise ParseError("empty vector file")
    return OvInstance(tuple(vecs))


def dump_ov(inst):
    return "\n".join("".join(str(b) for b in v) for v in inst.vectors) + "\n"


# -- marking matrices ---------------------------------------------------------

def mark_char(t, a):
    """The 1 x n row marking the positions where t equals code a."""
    if a < 0:
        raise RangeError("codes are non-negative")
    return Matrix2D(1, len(t), [1 if v == a else 0 for v in t])


def mark_all_chars(t, sigma):
    """The sigma x n matrix stacking mark_char rows for c = 0..sigma-1."""
    n = len(t)
    if n < 1:
        raise RangeError("text must be nonempty")
    if any(not (0 <= v < sigma) for v in t):
        raise RangeError(f"text codes must lie in [0, {sigma})")
    flat = []
    for c in range(sigma):
        flat.extend(1 if v == c else 0 for v in t)
    return Matrix2D(sigma, n, flat)


def ext_mark_all_chars(t, sigma):
    """The n*sigma x n matrix interleaving each mark row with n-1 zero rows."""
    n = len(t)
    if n < 2:
        raise ExtRequiresLengthTwo("extended marking needs a text of length >= 2")
    if any(not (0 <= v < sigma) for v in t):
        raise RangeError(f"text codes must lie in [0, {sigma})")
    flat = []
    zeros = [0] * ((n - 1) * n)
    for c in range(sigma):
        flat.extend(1 if v == c else 0 for v in t)
        flat.extend(zeros)
    return Matrix2D(n * sigma, n, flat)


def mark_grammar(g, sigma):
    """A 2D grammar expanding to mark_all_chars(expand1(g), sigma).

    Structure mirrors the 1D grammar: every 1D variable gets a counterpart
    concatenating its children's marking matrices horizontally; a 1D literal
    with code c maps to the sigma x 1 column with the single 1 in row c + 1.
    The zero-columns above/below that 1 are built by a chain of prefix rules,
    one of which is empty. Output size is linear in |g| + sigma.
    """
    g = validate_slp1(g)
    if any(not (0 <= r < sigma) for r in g.rules if isinstance(r, int)):
        raise RangeError(f"grammar terminals must lie in [0, {sigma})")
    gv = len(g.rules)
    m0 = gv
    m1 = gv + 1
    z_id = lambda i: gv + 2 + i              # zero column of height i, i in [0..sigma)
    x_id = lambda c: gv + 2 + sigma + c      # marking column for code c

    rules = [None] * (gv + 2 + 2 * sigma)
    for nid, rule in enumerate(g.rules):
        if isinstance(rule, int):
            rules[nid] = Vert(x_id(rule))
        else:
            rules[nid] = Vert(rule[0], rule[1])
    rules[m0] = 0
    rules[m1] = 1
    rules[z_id(0)] = Horiz()
    for i in range(1, sigma):
        rules[z_id(i)] = Horiz(z_id(i - 1), m0)
    for c in range(sigma):
        rules[x_id(c)] = Horiz(z_id(c), m1, z_id(sigma - 1 - c))
    return validate_slg2(Slg2(rules, 2, g.start))


def ext_mark_grammar(g, sigma):
    """A 2D grammar expanding to ext_mark_all_chars(expand1(g), sigma).

    As mark_grammar, but each marking column is n*sigma tall: the n-1 zero
    rows below each 1 come from a doubling chain combined by the binary
    decomposition of n-1 (increasing powers).
    """
    g = validate_slp1(g)
    if any(not (0 <= r < sigma) for r in g.rules if isinstance(r, int)):
        raise RangeError(f"grammar terminals must lie in [0, {sigma})")
    n = g._lens[g.start]
    if n < 2:
        raise ExtRequiresLengthTwo("extended marking needs a text of length >= 2")

    num_z = (n - 1).bit_length()
    # the chain length is logarithmic, so it never dominates the grammar size
    assert num_z <= grammar_size1(g)
    powers = [p for p in range(num_z) if (n - 1) >> p & 1]

    gv = len(g.rules)
    m0 = gv
    m1 = gv + 1
    zpow_id = lambda i: gv + 2 + i              # zero column of height 2**i
    znm1 = gv + 2 + num_z                       # zero column of height n-1
    zn = znm1 + 1                               # zero column of height n
    zq_id = lambda i: zn + 1 + i                # zero column of height i*n, i in [0..sigma)
    x_id = lambda c: zn + 1 + sigma + c         # marking column for code c

    rules = [None] * (zn + 1 + 2 * sigma)
    for nid, rule in enumerate(g.rules):
        if isinstance(rule, int):
            rules[nid] = Vert(x_id(rule))
        else:
            rules[nid] = Vert(rule[0], rule[1])
    rules[m0] = 0
    rules[m1] = 1
    rules[zpow_id(0)] = Horiz(m0)
    for i in range(1, num_z):
        rules[zpow_id(i)] = Horiz(zpow_id(i - 1), zpow_id(i - 1))
    rules[znm1] = Horiz(*(zpow_id(p) for p in powers))
    rules[zn] = Horiz(znm1, m0)
    rules[zq_id(0)] = Horiz()
    for i in range(1, sigma):
        rules[zq_id(i)] = Horiz(zq_id(i - 1), zn)
    for c in range(sigma):
        rules[x_id(c)] = Horiz(zq_id(c), m1, znm1, zq_id(sigma - 1 - c))
    return validate_slg2(Slg2(rules, 2, g.start))


# -- alphabet reduction -------------------------------------------------------

@dataclass(frozen=True)
class AlphabetMap:
    """Sorted occurring codes plus the rank remapping they induce."""

    codes: tuple

    def __post_init__(self):
        codes = tuple(self.codes)
        object.__setattr__(self, "codes", codes)
        if any(codes[i] >= codes[i + 1] for i in range(len(codes) - 1)):
            raise RangeError("codes must be strictly increasing")

    def __contains__(self, c):
        i = bisect_left(self.codes, c)
        return i < len(self.codes) and self.codes[i] == c

    def index_of(self, c):
        """Dense code for c, or None when c never occurs."""
        i = bisect_left(self.codes, c)
        if i < len(self.codes) and self.codes[i] == c:
            return i
        return None

    def __len__(self):
        return len(self.codes)


def alphabet_reduce(g):
    """Remap the grammar onto the dense alphabet of codes it actually uses.

    Unused nonterminals are pruned; literal codes are replaced by their rank
    among the occurring codes. Queries against the original string translate
    through the returned map: a queried code that never occurs answers 0
    without consulting the new grammar at all.
    """
    g = validate_slp1(g)
    from .slg import _reachable, Slp1

    reach = _reachable(g, g.start)
    occurring = sorted({r for nid, r in enumerate(g.rules)
                        if reach[nid] and isinstance(r, int)})
    amap = AlphabetMap(tuple(occurring))
    fwd = {c: i for i, c in enumerate(occurring)}

    out_rules = []
    alias = {}
    for nid in reversed(g._topo):
        if not reach[nid]:
            continue
        rule = g.rules[nid]
        if isinstance(rule, int):
            out_rules.append(fwd[rule])
        else:
            out_rules.append((alias[rule[0]], alias[rule[1]]))
        alias[nid] = len(out_rules) - 1
    out = validate_slp1(Slp1(out_rules, max(1, len(occurring)), alias[g.start]))
    return out, amap


# -- adapters over query providers --------------------------------------------

def rank_via_line_sum(line_sum_provider, amap, j, c):
    """Rank on the original string through a line-sum provider.

    The provider must answer line-sum queries on the marking matrix of the
    (alphabet-reduced) string: provider(e_r, e_c, l). Pass amap=None when the
    provider already speaks the original alphabet. Exactly one provider call
    is issued, plus one alphabet-map lookup.
    """
    if j < 0:
        raise RangeError(f"rank prefix {j} must be >= 0")
    if amap is not None:
        k = amap.index_of(c)
        if k is None:
            return 0
        c = k
    return line_sum_provider(c + 1, j, j)


def occurs_via_square_all_zero(saz_provider, amap, b, e, c, n):
    """Symbol occurrence through a square-all-zero provider.

    The provider must answer square-all-zero queries on the extended marking
    matrix of the (alphabet-reduced) string of length n:
    provider(e_r, e_c, l). Empty ranges (b >= e) answer 0 before any lookup.

    The queried square has its top row on the mark row of code c (row
    c*n + 1) and bottom-right corner (c*n + (e-b), e): it equals the marks
    of (b..e] stacked on zero padding, so it is all zero exactly when the
    code never occurs in the range.
    """
    if not (0 <= b <= n and 0 <= e <= n):
        raise RangeError(f"occurs range {b}..{e} outside [0, {n}]")
    if b >= e:
        return 0
    if amap is not None:
        k = amap.index_of(c)
        if k is None:
            return 0
        c = k
    z = saz_provider(c * n + (e - b), e, e - b)
    return 1 - z


def square_lce_via_line_lce(line_lce_provider, rows, cols, b_r, b_c, b2_r, b2_c):
    """Square LCE by binary search over line LCE queries.

    Uses the equivalence: the square LCE is >= t iff the t-row line LCE is
    >= t. Issues at most ceil(log2(t_max + 1)) provider calls where t_max is
    the geometric cap from both origins.
    """
    if not (1 <= b_r <= rows and 1 <= b2_r <= rows
            and 1 <= b_c <= cols and 1 <= b2_c <= cols):
        raise RangeError("LCE origins outside the matrix")
    t_max = min(rows - b_r + 1, rows - b2_r + 1, cols - b_c + 1, cols - b2_c + 1)
    lo, hi = 0, t_max
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if line_lce_provider(b_r, b_c, b2_r, b2_c, mid) >= mid:
            lo = mid
        else:
            hi = mid - 1
    return lo


def line_lce_via_equality(eq_provider, rows, cols, b_r, b_c, b2_r, b2_c, l):
    """Line LCE by binary search over rectangle equality queries.

    Uses: the line LCE with height l is >= t iff the l x t rectangles at the
    two origins are equal. Same provider-call bound as the square search.
    """
    if l < 1:
        raise RangeError("line LCE height must be >= 1")
    if not (1 <= b_r <= rows and 1 <= b2_r <= rows
            and 1 <= b_c <= cols and 1 <= b2_c <= cols):
        raise RangeError("LCE origins outside the matrix")
    if b_r + l > rows + 1 or b2_r + l > rows + 1:
        raise RangeError("line LCE strip extends past the matrix")
    t_max = min(cols - b_c + 1, cols - b2_c + 1)
    lo, hi = 0, t_max
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if eq_provider(b_r, b_c, b2_r, b2_c, l, mid) == 1:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _zero_block_rules(rows, cols, zero_lit, next_id):
    """Rules for an all-zero rows x cols block, O(log rows + log cols) of them.

    Returns (rules_by_id dict, block_id). Builds a rows x 1 column by
    doubling, combines per the binary decomposition of rows, then widens to
    cols columns the same way.
    """
    rules = {}
    nid = next_id

    def fresh(rule):
        nonlocal nid
        rules[nid] = rule
        nid += 1
        return nid - 1

    # column of height `rows`
    pow_col = [zero_lit]
    for _ in range(1, rows.bit_length()):
        pow_col.append(fresh(Horiz(pow_col[-1], pow_col[-1])))
    parts = [pow_col[p] for p in range(rows.bit_length()) if rows >> p & 1]
    col = parts[0] if len(parts) == 1 else fresh(Horiz(*parts))

    # widen to `cols`
    pow_blk = [col]
    for _ in range(1, cols.bit_length()):
        pow_blk.append(fresh(Vert(pow_blk[-1], pow_blk[-1])))
    parts = [pow_blk[p] for p in range(cols.bit_length()) if cols >> p & 1]
    blk = parts[0] if len(parts) == 1 else fresh(Vert(*parts))
    return rules, blk


def pad_with_zero_block(g2):
    """A grammar for Exp(g2) horizontally extended by an all-zero copy-sized block.

    The output's left half is the original expansion, the right half is an
    all-zero block of the same dimensions; only O(log rows + log cols) rules
    are added.
    """
    g2 = validate_slg2(g2)
    r, c = g2._rows[g2.start], g2._cols[g2.start]
    if r == 0 or c == 0:
        raise RangeError("cannot pad an empty expansion")
    if g2.is_binary:
        # sanity: a binary grammar for an r x c matrix cannot be smaller than
        # the bit length of its dimensions, so the padding stays linear
        from .slg2d import grammar_size2
        assert max(r, c) <= 1 << grammar_size2(g2)

    rules = list(g2.rules)
    zero_lit = len(rules)
    rules.append(0)
    extra, blk = _zero_block_rules(r, c, zero_lit, len(rules))
    rules.extend(extra[i] for i in sorted(extra))
    rules.append(Vert(g2.start, blk))
    new_start = len(rules) - 1
    sigma = max(g2.alphabet_size, 1)
    return validate_slg2(Slg2(rules, sigma, new_start))


def square_all_zero_via_square_lce(g2):
    """Square all-zero through square LCE on the zero-padded grammar.

    Returns (padded grammar, adapter factory). The factory takes a provider
    answering square LCE on the padded expansion --
    provider(b_r, b_c, b2_r, b2_c) -- and yields a square-all-zero adapter
    for the original matrix: the queried block is all zero iff its LCE
    against the top-left corner of the zero half reaches the block side.
    """
    g2 = validate_slg2(g2)
    r, c = g2._rows[g2.start], g2._cols[g2.start]
    padded = pad_with_zero_block(g2)

    def make_adapter(square_lce_provider):
        def saz(e_r, e_c, l):
            if l < 0:
                raise RangeError(f"square side {l} must be >= 0")
            if not (l <= e_r <= r) or not (l <= e_c <= c):
                raise RangeError(f"square bounds ({e_r},{e_c},{l}) out of range")
            if l == 0:
                return 1
            x = square_lce_provider(e_r - l + 1, e_c - l + 1, 1, c + 1)
            return 1 if x >= l else 0
        return saz

    return padded, make_adapter
