"""1D straight-line grammars: representation, validation, expansion, SLP form.

A grammar is a list of rules indexed by nonterminal id. Each rule is either

  * an ``int``   -- a literal rule, the value is the terminal code, or
  * a ``tuple``  -- a sequence rule listing child nonterminal ids.

A valid grammar is acyclic (some ordering of the nonterminals exists in which
every sequence rule references only later ones), every referenced id has a
rule, and every literal code is in ``[0, alphabet_size)``. Validation
canonicalizes the grammar so the start symbol has id 0 and caches a
topological order plus per-nonterminal expansion lengths.

Text format (UTF-8, line oriented)::

    SLG1 <num_nonterminals> <alphabet_size>
    <id>: T <terminal>
    <id>: N <id> <id> [...]
    START <id>

Grammars are immutable after validation and safe to share across readers;
construction and validation are single-threaded.
"""

from __future__ import annotations

from .errors import (
    ArithmeticOverflow,
    CyclicGrammar,
    DanglingReference,
    DuplicateRule,
    EmptyLanguage,
    ExpansionTooLarge,
    GrammarError,
    ParseError,
    TerminalOutOfRange,
)

# Expansion lengths are stored as plain ints but checked against this bound so
# downstream structures can pack them into 64-bit words.
MAX_LEN = 1 << 62

# Default cap on materialized expansion size (cells / symbols).
DEFAULT_CAP = 1 << 26


class Slg1:
    """A 1D straight-line grammar (rules, alphabet size, start id)."""

    __slots__ = ("rules", "alphabet_size", "start", "_topo", "_lens", "_eps")

    def __init__(self, rules, alphabet_size, start=0):
        self.rules = [r if isinstance(r, int) else tuple(r) for r in rules]
        self.alphabet_size = alphabet_size
        self.start = start
        self._topo = None   # parents-first topological order (ids)
        self._lens = None   # expansion length per id
        self._eps = None    # per-id flag: expands to the empty string

    @property
    def validated(self):
        return self._topo is not None

    def require_validated(self):
        if not self.validated:
            raise ValueError("grammar must pass validate_slg1() first")

    @property
    def is_binary(self):
        """True when every sequence rule has exactly two children."""
        return all(isinstance(r, int) or len(r) == 2 for r in self.rules)

    def __len__(self):
        return len(self.rules)

    def __repr__(self):
        return (f"{type(self).__name__}({len(self.rules)} rules, "
                f"sigma={self.alphabet_size}, start={self.start})")


class Slp1(Slg1):
    """An Slg1 in which every sequence rule has arity exactly 2."""


def _relabel(rules, start, perm):
    """Apply an id permutation to a rule list; perm[old] = new."""
    out = [None] * len(rules)
    for old, rule in enumerate(rules):
        if isinstance(rule, int):
            out[perm[old]] = rule
        else:
            out[perm[old]] = tuple(perm[c] for c in rule)
    return out, perm[start]


def _swap_start_to_zero(g):
    if g.start == 0:
        return g
    perm = list(range(len(g.rules)))
    perm[g.start], perm[0] = 0, g.start
    rules, start = _relabel(g.rules, g.start, perm)
    return type(g)(rules, g.alphabet_size, start)


def _toposort(rules):
    """Children-first DFS over all ids; returns parents-first order.

    Iterative (explicit stack): grammar depth may reach the rule count.
    Raises CyclicGrammar on any cycle, including self-reference.
    """
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
            children = () if isinstance(rule, int) else rule
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


def validate_slg1(g, allow_empty=False):
    """Check all Slg1 invariants; return the canonicalized grammar.

    On success the returned grammar has the start symbol at id 0, a cached
    topological order, and cached expansion lengths. ``allow_empty`` admits
    rules expanding to the empty string (needed only while eliminating them
    in slg_to_slp); by default such rules are rejected.
    """
    if not g.rules:
        raise DanglingReference("grammar has no rules")
    if g.alphabet_size < 1:
        raise TerminalOutOfRange(f"alphabet_size must be >= 1, got {g.alphabet_size}")
    if not (0 <= g.start < len(g.rules)):
        raise DanglingReference(f"start id {g.start} out of range")

    g = _swap_start_to_zero(g)
    rules = g.rules
    for nid, rule in enumerate(rules):
        if isinstance(rule, int):
            if not (0 <= rule < g.alphabet_size):
                raise TerminalOutOfRange(f"terminal {rule} at id {nid} not in [0, {g.alphabet_size})")
        else:
            for c in rule:
                if not (0 <= c < len(rules)):
                    raise DanglingReference(f"rule {nid} references undefined id {c}")

    topo = _toposort(rules)

    eps = [False] * len(rules)
    lens = [0] * len(rules)
    for nid in reversed(topo):
        rule = rules[nid]
        if isinstance(rule, int):
            lens[nid] = 1
            continue
        total = 0
        for c in rule:
            total += lens[c]
        if total > MAX_LEN:
            raise ArithmeticOverflow(f"expansion of id {nid} exceeds 2**62")
        lens[nid] = total
        if total == 0:
            eps[nid] = True
            if not allow_empty:
                raise EmptyLanguage(f"rule {nid} expands to the empty string")

    g._topo = topo
    g._lens = lens
    g._eps = eps
    return g


def validate_slp1(g, allow_empty=False):
    """validate_slg1 plus the arity-2 restriction; returns an Slp1."""
    g = validate_slg1(g, allow_empty=allow_empty)
    for nid, rule in enumerate(g.rules):
        if not isinstance(rule, int) and len(rule) != 2:
            raise GrammarError(f"rule {nid} has arity {len(rule)}, SLP requires 2")
    if not isinstance(g, Slp1):
        s = Slp1(g.rules, g.alphabet_size, g.start)
        s._topo, s._lens, s._eps = g._topo, g._lens, g._eps
        g = s
    return g


def exp_len(g, nid):
    """Length of the expansion of nonterminal ``nid`` (memoized at validation)."""
    g.require_validated()
    return g._lens[nid]


def _reachable(g, root):
    seen = [False] * len(g.rules)
    seen[root] = True
    stack = [root]
    while stack:
        rule = g.rules[stack.pop()]
        if isinstance(rule, int):
            continue
        for c in rule:
            if not seen[c]:
                seen[c] = True
                stack.append(c)
    return seen


def expand1(g, cap=DEFAULT_CAP):
    """Materialize the unique string derived by the grammar as a list of codes.

    Bottom-up over the topological order (no recursion); intermediate
    expansions are freed as soon as every parent has consumed them.
    """
    g.require_validated()
    n = g._lens[g.start]
    if n == 0:
        raise EmptyLanguage("grammar derives only the empty string")
    if n > cap:
        raise ExpansionTooLarge(f"expansion has {n} symbols, cap is {cap}")

    reach = _reachable(g, g.start)
    pending = [0] * len(g.rules)  # parents still needing this id's expansion
    for nid in range(len(g.rules)):
        if not reach[nid] or isinstance(g.rules[nid], int):
            continue
        for c in g.rules[nid]:
            pending[c] += 1

    exp = {}
    for nid in reversed(g._topo):
        if not reach[nid]:
            continue
        rule = g.rules[nid]
        if isinstance(rule, int):
            exp[nid] = [rule]
            continue
        parts = []
        for c in rule:
            parts.extend(exp[c])
            pending[c] -= 1
            if pending[c] == 0 and c != g.start:
                del exp[c]
        exp[nid] = parts
    return exp[g.start]


def grammar_size1(g):
    """The size measure sum(max(|rhs|, 1)) over all rules."""
    return sum(1 if isinstance(r, int) else max(len(r), 1) for r in g.rules)


def slg_to_slp(g, cap_unused=None):
    """Convert a grammar to an equivalent SLP (binary rules, no empty rules).

    Empty-expanding children are dropped, single-child rules are aliased away,
    and longer right-hand sides are binarized left to right. Only rules
    reachable from the start survive. Output size stays within a small
    constant factor of the input size.
    """
    if not g.validated:
        g = validate_slg1(g, allow_empty=True)
    if g._lens[g.start] == 0:
        raise EmptyLanguage("grammar derives only the empty string")

    reach = _reachable(g, g.start)
    out_rules = []

    def emit(rule):
        out_rules.append(rule)
        return len(out_rules) - 1

    alias = {}  # original id -> output id, for surviving nodes
    for nid in reversed(g._topo):
        if not reach[nid] or g._eps[nid]:
            continue
        rule = g.rules[nid]
        if isinstance(rule, int):
            alias[nid] = emit(rule)
            continue
        kids = [alias[c] for c in rule if not g._eps[c]]
        if len(kids) == 1:
            alias[nid] = kids[0]
        else:
            acc = kids[0]
            for c in kids[1:]:
                acc = emit((acc, c))
            alias[nid] = acc

    out = Slp1(out_rules, g.alphabet_size, alias[g.start])
    return validate_slp1(out)


# -- text format ------------------------------------------------------------

def parse_slg1(text):
    """Parse the SLG1 text format; returns an unvalidated Slg1."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty grammar file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "SLG1":
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
        head_part, _, rest = ln.partition(":")
        if not _:
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
        if kind == "T":
            if len(args) != 1:
                raise ParseError(f"literal rule needs one terminal: {ln!r}")
            rules[nid] = int(args[0])
        elif kind == "N":
            if not args:
                raise ParseError(f"sequence rule needs children: {ln!r}")
            rules[nid] = tuple(int(a) for a in args)
        else:
            raise ParseError(f"unknown rule kind {kind!r} in: {ln!r}")
    if start is None:
        raise ParseError("missing START line")
    missing = [i for i, r in enumerate(rules) if r is None]
    if missing:
        raise ParseError(f"no rule given for ids {missing}")
    return Slg1(rules, sigma, start)


def dump_slg1(g):
    """Serialize to the SLG1 text format."""
    out = [f"SLG1 {len(g.rules)} {g.alphabet_size}"]
    for nid, rule in enumerate(g.rules):
        if isinstance(rule, int):
            out.append(f"{nid}: T {rule}")
        else:
            out.append(f"{nid}: N " + " ".join(str(c) for c in rule))
    out.append(f"START {g.start}")
    return "\n".join(out) + "\n"
