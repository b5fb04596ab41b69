"""2D straight-line grammars and explicit matrices.

A 2D grammar rule is one of

  * an ``int``        -- a literal rule expanding to a 1x1 matrix,
  * ``Horiz(ids...)`` -- children share a column count, expansions are
                         stacked vertically (row counts add),
  * ``Vert(ids...)``  -- children share a row count, expansions are
                         concatenated horizontally (column counts add).

WARNING: the class names follow the established 2D-grammar formalism and
are easy to misread.
"Horizontal" nonterminals cut the matrix along horizontal seams (children are
horizontal slabs, stacked top to bottom); "vertical" nonterminals cut along
vertical seams (children are vertical slabs, left to right). The file format
letters H/V mirror the class, not the direction of growth.

Rules with an empty child list expand to the empty matrix; they are legal in
Slg2 (one construction in the reductions module needs them) and are
eliminated by slg2_to_slp2. Mixed arity is legal in Slg2; only Slp2 restricts
non-literal rules to exactly two children.

Text formats::

    SLG2 <num_nonterminals> <alphabet_size>
    <id>: L <terminal>
    <id>: H <id> [...]
    <id>: V <id> [...]
    START <id>

    MAT <rows> <cols>
    <row of space-separated codes> x rows

Grammars and matrices are immutable after construction/validation and safe
for any number of concurrent readers.
"""

from __future__ import annotations

from .errors import (
    ArithmeticOverflow,
    CyclicGrammar,
    DanglingReference,
    DimensionMismatch,
    DuplicateRule,
    EmptyLanguage,
    ExpansionTooLarge,
    GrammarError,
    ParseError,
    TerminalOutOfRange,
)
from .slg import DEFAULT_CAP, MAX_LEN


class Horiz:
    """Children share width; expansions stack vertically (rows add)."""

    __slots__ = ("children",)

    def __init__(self, *children):
        if len(children) == 1 and not isinstance(children[0], int):
            children = tuple(children[0])
        self.children = tuple(children)

    def __eq__(self, other):
        return isinstance(other, Horiz) and self.children == other.children

    def __hash__(self):
        return hash(("H", self.children))

    def __repr__(self):
        return f"Horiz{self.children!r}"


class Vert:
    """Children share height; expansions concatenate horizontally (cols add)."""

    __slots__ = ("children",)

    def __init__(self, *children):
        if len(children) == 1 and not isinstance(children[0], int):
            children = tuple(children[0])
        self.children = tuple(children)

    def __eq__(self, other):
        return isinstance(other, Vert) and self.children == other.children

    def __hash__(self):
        return hash(("V", self.children))

    def __repr__(self):
        return f"Vert{self.children!r}"


class Matrix2D:
    """An explicit matrix of terminal codes, row-major flat storage.

    The public cell accessor is 1-based on both axes to match the query
    conventions used throughout the package; the flat ``cells`` list is
    0-based row-major.
    """

    __slots__ = ("rows", "cols", "cells")

    def __init__(self, rows, cols, cells):
        if rows < 1 or cols < 1:
            raise DimensionMismatch(f"matrix dimensions must be positive, got {rows}x{cols}")
        cells = list(cells)
        if len(cells) != rows * cols:
            raise DimensionMismatch(
                f"cell count {len(cells)} does not match {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.cells = cells

    @classmethod
    def from_rows(cls, rows_of_codes):
        rows = list(rows_of_codes)
        if not rows:
            raise DimensionMismatch("matrix needs at least one row")
        width = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != width:
                raise DimensionMismatch("ragged rows in matrix literal")
            flat.extend(r)
        return cls(len(rows), width, flat)

    def get(self, i, j):
        """Cell in row i, column j (both 1-based)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"({i},{j}) outside {self.rows}x{self.cols}")
        return self.cells[(i - 1) * self.cols + (j - 1)]

    def row(self, i):
        """Row i (1-based) as a list."""
        base = (i - 1) * self.cols
        return self.cells[base:base + self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(1, self.rows + 1)]

    def __eq__(self, other):
        return (isinstance(other, Matrix2D) and self.rows == other.rows
                and self.cols == other.cols and self.cells == other.cells)

    def __repr__(self):
        return f"Matrix2D({self.rows}x{self.cols})"


def hconcat(a, b):
    """Place b to the right of a (column counts add); rows must match."""
    if a.rows != b.rows:
        raise DimensionMismatch(f"hconcat needs equal rows, got {a.rows} and {b.rows}")
    cells = []
    for i in range(a.rows):
        cells.extend(a.cells[i * a.cols:(i + 1) * a.cols])
        cells.extend(b.cells[i * b.cols:(i + 1) * b.cols])
    return Matrix2D(a.rows, a.cols + b.cols, cells)


def vconcat(a, b):
    """Place b below a (row counts add); columns must match."""
    if a.cols != b.cols:
        raise DimensionMismatch(f"vconcat needs equal cols, got {a.cols} and {b.cols}")
    return Matrix2D(a.rows + b.rows, a.cols, a.cells + b.cells)


class Slg2:
    """A 2D straight-line grammar over literal/Horiz/Vert rules."""

    __slots__ = ("rules", "alphabet_size", "start", "_topo", "_rows", "_cols", "_eps")

    def __init__(self, rules, alphabet_size, start=0):
        self.rules = list(rules)
        self.alphabet_size = alphabet_size
        self.start = start
        self._topo = None
        self._rows = None
        self._cols = None
        self._eps = None

    @property
    def validated(self):
        return self._topo is not None

    def require_validated(self):
        if not self.validated:
            raise ValueError("grammar must pass validate_slg2() first")

    @property
    def is_binary(self):
        return all(isinstance(r, int) or len(r.children) == 2 for r in self.rules)

    def __len__(self):
        return len(self.rules)

    def __repr__(self):
        return (f"{type(self).__name__}({len(self.rules)} rules, "
                f"sigma={self.alphabet_size}, start={self.start})")


class Slp2(Slg2):
    """An Slg2 in which every non-literal rule has arity exactly 2."""


def _swap_start_to_zero2(g):
    if g.start == 0:
        return g
    perm = list(range(len(g.rules)))
    perm[g.start], perm[0] = 0, g.start
    out = [None] * len(g.rules)
    for old, rule in enumerate(g.rules):
        if isinstance(rule, int):
            out[perm[old]] = rule
        else:
            out[perm[old]] = type(rule)(*(perm[c] for c in rule.children))
    return type(g)(out, g.alphabet_size, perm[g.start])


def _toposort2(rules):
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * len(rules)
    order = []
    for root in range(len(rules)):
        if color[root] != WHITE:
            continue
        stack = [(root, 0)]
        while stack:
            node, child_ix = stack.pop()
            if child_ix == 0:
                if color[node] == BLACK:
                    continue
                if color[node] == GRAY:
                    raise CyclicGrammar(f"cycle through nonterminal {node}")
                color[node] = GRAY
            rule = rules[node]
            children = () if isinstance(rule, int) else rule.children
            if child_ix < len(children):
                stack.append((node, child_ix + 1))
                c = children[child_ix]
                if color[c] == GRAY:
                    raise CyclicGrammar(f"cycle through nonterminal {c}")
                if color[c] == WHITE:
                    stack.append((c, 0))
            else:
                color[node] = BLACK
                order.append(node)
    order.reverse()
    return order


def validate_slg2(g):
    """Check all Slg2 invariants; return the canonicalized grammar.

    Verifies acyclicity, reference and terminal ranges, and dimension
    consistency: the non-empty children of a Horiz rule must share one
    column count, those of a Vert rule one row count. Caches the topological
    order and per-nonterminal (rows, cols); empty-expanding rules get (0, 0).
    """
    if not g.rules:
        raise DanglingReference("grammar has no rules")
    if g.alphabet_size < 1:
        raise TerminalOutOfRange(f"alphabet_size must be >= 1, got {g.alphabet_size}")
    if not (0 <= g.start < len(g.rules)):
        raise DanglingReference(f"start id {g.start} out of range")

    g = _swap_start_to_zero2(g)
    rules = g.rules
    for nid, rule in enumerate(rules):
        if isinstance(rule, int):
            if not (0 <= rule < g.alphabet_size):
                raise TerminalOutOfRange(f"terminal {rule} at id {nid} not in [0, {g.alphabet_size})")
        elif isinstance(rule, (Horiz, Vert)):
            for c in rule.children:
                if not (0 <= c < len(rules)):
                    raise DanglingReference(f"rule {nid} references undefined id {c}")
        else:
            raise TypeError(f"rule {nid} is not int/Horiz/Vert: {rule!r}")

    topo = _toposort2(rules)

    rows = [0] * len(rules)
    cols = [0] * len(rules)
    eps = [False] * len(rules)
    for nid in reversed(topo):
        rule = rules[nid]
        if isinstance(rule, int):
            rows[nid] = cols[nid] = 1
            continue
        live = [c for c in rule.children if not eps[c]]
        if not live:
            eps[nid] = True
            continue
        if isinstance(rule, Horiz):
            w = cols[live[0]]
            for c in live[1:]:
                if cols[c] != w:
                    raise DimensionMismatch(
                        f"Horiz rule {nid}: child {c} has {cols[c]} cols, expected {w}")
            r = sum(rows[c] for c in live)
            rows[nid], cols[nid] = r, w
        else:
            h = rows[live[0]]
            for c in live[1:]:
                if rows[c] != h:
                    raise DimensionMismatch(
                        f"Vert rule {nid}: child {c} has {rows[c]} rows, expected {h}")
            w = sum(cols[c] for c in live)
            rows[nid], cols[nid] = h, w
        if rows[nid] > MAX_LEN or cols[nid] > MAX_LEN:
            raise ArithmeticOverflow(f"dimensions of id {nid} exceed 2**62")

    g._topo = topo
    g._rows = rows
    g._cols = cols
    g._eps = eps
    return g


def validate_slp2(g):
    """validate_slg2 plus arity-2 and no empty rules; returns an Slp2."""
    g = validate_slg2(g)
    for nid, rule in enumerate(g.rules):
        if isinstance(rule, int):
            continue
        if len(rule.children) != 2:
            raise GrammarError(f"rule {nid} has arity {len(rule.children)}, 2D SLP requires 2")
    if any(g._eps):
        raise EmptyLanguage("2D SLP may not contain empty-expanding rules")
    if not isinstance(g, Slp2):
        s = Slp2(g.rules, g.alphabet_size, g.start)
        s._topo, s._rows, s._cols, s._eps = g._topo, g._rows, g._cols, g._eps
        g = s
    return g


def dims(g, nid):
    """(rows, cols) of the expansion of ``nid``; (0, 0) for empty rules."""
    g.require_validated()
    return g._rows[nid], g._cols[nid]


def _reachable2(g, root):
    seen = [False] * len(g.rules)
    seen[root] = True
    stack = [root]
    while stack:
        rule = g.rules[stack.pop()]
        if isinstance(rule, int):
            continue
        for c in rule.children:
            if not seen[c]:
                seen[c] = True
                stack.append(c)
    return seen


def expand2(g, cap=DEFAULT_CAP):
    """Materialize the unique matrix derived by the grammar.

    Assembled bottom-up (flat row-major lists); intermediate expansions are
    freed once every parent has consumed them. Empty children are skipped.
    """
    g.require_validated()
    r, c = g._rows[g.start], g._cols[g.start]
    if r == 0 or c == 0:
        raise EmptyLanguage("grammar derives only the empty matrix")
    if r * c > cap:
        raise ExpansionTooLarge(f"expansion has {r * c} cells, cap is {cap}")

    reach = _reachable2(g, g.start)
    pending = [0] * len(g.rules)
    for nid in range(len(g.rules)):
        if not reach[nid] or isinstance(g.rules[nid], int):
            continue
        for child in g.rules[nid].children:
            pending[child] += 1

    exp = {}  # id -> flat row-major list (dims come from the caches)
    rows, cols = g._rows, g._cols
    for nid in reversed(g._topo):
        if not reach[nid] or g._eps[nid]:
            continue
        rule = g.rules[nid]
        if isinstance(rule, int):
            exp[nid] = [rule]
            continue
        live = [ch for ch in rule.children if not g._eps[ch]]
        if isinstance(rule, Horiz):
            flat = []
            for ch in live:
                flat.extend(exp[ch])
        else:
            flat = []
            w = [cols[ch] for ch in live]
            for i in range(rows[nid]):
                for ch, wc in zip(live, w):
                    flat.extend(exp[ch][i * wc:(i + 1) * wc])
        for ch in rule.children:
            pending[ch] -= 1
            if pending[ch] == 0 and ch != g.start and ch in exp:
                del exp[ch]
        exp[nid] = flat
    return Matrix2D(r, c, exp[g.start])


def grammar_size2(g):
    """The size measure sum(max(|rhs|, 1)) over all rules."""
    total = 0
    for rule in g.rules:
        if isinstance(rule, int):
            total += 1
        else:
            total += max(len(rule.children), 1)
    return total


def slg2_to_slp2(g):
    """Convert to an equivalent 2D SLP (arity-2 rules, no empty rules).

    Same pipeline as the 1D conversion: drop empty-expanding children, alias
    single-child rules, binarize longer right-hand sides left to right, keep
    only rules reachable from the start.
    """
    if not g.validated:
        g = validate_slg2(g)
    if g._eps[g.start]:
        raise EmptyLanguage("grammar derives only the empty matrix")

    reach = _reachable2(g, g.start)
    out_rules = []

    def emit(rule):
        out_rules.append(rule)
        return len(out_rules) - 1

    alias = {}
    for nid in reversed(g._topo):
        if not reach[nid] or g._eps[nid]:
            continue
        rule = g.rules[nid]
        if isinstance(rule, int):
            alias[nid] = emit(rule)
            continue
        kids = [alias[c] for c in rule.children if not g._eps[c]]
        if len(kids) == 1:
            alias[nid] = kids[0]
        else:
            ctor = type(rule)
            acc = kids[0]
            for c in kids[1:]:
                acc = emit(ctor(acc, c))
            alias[nid] = acc

    out = Slp2(out_rules, g.alphabet_size, alias[g.start])
    return validate_slp2(out)


# -- text formats -----------------------------------------------------------

def parse_slg2(text):
    """Parse the SLG2 text format; returns an unvalidated Slg2."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty grammar file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "SLG2":
        raise ParseError(f"bad header: {lines[0]!r}")
    try:
        count, sigma = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError(f"bad header numbers: {lines[0]!r}") from None
    if count < 1 or sigma < 1:
        raise ParseError("nonterminal count and alphabet size must be positive")

    rules = [None] * count
    start = None
    for ln in lines[1:]:
        if ln.startswith("START"):
            parts = ln.split()
            if len(parts) != 2 or start is not None:
                raise ParseError(f"bad START line: {ln!r}")
            start = int(parts[1])
            continue
        head_part, sep, rest = ln.partition(":")
        if not sep:
            raise ParseError(f"bad rule line: {ln!r}")
        try:
            nid = int(head_part)
        except ValueError:
            raise ParseError(f"bad rule id in: {ln!r}") from None
        if not (0 <= nid < count):
            raise ParseError(f"rule id {nid} out of range [0, {count})")
        if rules[nid] is not None:
            raise DuplicateRule(f"duplicate rule for id {nid}")
        fields = rest.split()
        if not fields:
            raise ParseError(f"empty rule body: {ln!r}")
        kind, args = fields[0], fields[1:]
        if kind == "L":
            if len(args) != 1:
                raise ParseError(f"literal rule needs one terminal: {ln!r}")
            rules[nid] = int(args[0])
        elif kind == "H":
            rules[nid] = Horiz(*(int(a) for a in args))
        elif kind == "V":
            rules[nid] = Vert(*(int(a) for a in args))
        else:
            raise ParseError(f"unknown rule kind {kind!r} in: {ln!r}")
    if start is None:
        raise ParseError("missing START line")
    missing = [i for i, r in enumerate(rules) if r is None]
    if missing:
        raise ParseError(f"no rule given for ids {missing}")
    return Slg2(rules, sigma, start)


def dump_slg2(g):
    """Serialize to the SLG2 text format."""
    out = [f"SLG2 {len(g.rules)} {g.alphabet_size}"]
    for nid, rule in enumerate(g.rules):
        if isinstance(rule, int):
            out.append(f"{nid}: L {rule}")
        elif isinstance(rule, Horiz):
            out.append((f"{nid}: H " + " ".join(str(c) for c in rule.children)).rstrip())
        else:
            out.append((f"{nid}: V " + " ".join(str(c) for c in rule.children)).rstrip())
    out.append(f"START {g.start}")
    return "\n".join(out) + "\n"


def parse_matrix(text):
    """Parse the MAT text format into a Matrix2D."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "MAT":
        raise ParseError(f"bad header: {lines[0]!r}")
    rows, cols = int(head[1]), int(head[2])
    if len(lines) - 1 != rows:
        raise ParseError(f"expected {rows} rows, found {len(lines) - 1}")
    flat = []
    for ln in lines[1:]:
        vals = [int(v) for v in ln.split()]
        if len(vals) != cols:
            raise ParseError(f"expected {cols} columns in row: {ln!r}")
        flat.extend(vals)
    return Matrix2D(rows, cols, flat)


def dump_matrix(m):
    """Serialize a Matrix2D to the MAT text format."""
    out = [f"MAT {m.rows} {m.cols}"]
    for i in range(1, m.rows + 1):
        out.append(" ".join(str(v) for v in m.row(i)))
    return "\n".join(out) + "\n"
