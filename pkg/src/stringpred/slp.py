"""Straight-line programs: validation, evaluation, binarization, truncation and constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, NamedTuple, Union

from .automata import OutputDfa
from .core import BINARY, Alphabet, Word, ceil_log
from .generators import LENGTH_CAP, ContinuedFraction, characteristic_blocks


class SlpError(ValueError):
    pass


class Var(NamedTuple):
    """Reference to a nonterminal; plain ints in a rule are terminal symbol indices."""

    id: int

    def __repr__(self):
        return f"#{self.id}"


Ref = Union[Var, int]


@dataclass(frozen=True, eq=False)
class Slp:
    alphabet: Alphabet
    root: Var
    rules: Mapping[int, tuple[Ref, ...]]

    @property
    def size(self) -> int:
        return sum(len(rhs) for rhs in self.rules.values())

    @property
    def num_nonterminals(self) -> int:
        return len(self.rules)

    @cached_property
    def lengths(self) -> dict[int, int]:
        return expansion_lengths(self)

    def __len__(self):
        return self.lengths[self.root.id]

    def to_text(self) -> str:
        lines = [f"slp root=#{self.root.id} alphabet={self.alphabet.spec()}"]
        for q in sorted(self.rules):
            refs = " ".join(
                f"#{r.id}" if isinstance(r, Var) else self.alphabet.token(r) for r in self.rules[q]
            )
            lines.append(f"#{q} {refs}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LiteralSlp:
    """Stand-in for a one-symbol word, which no SLP can produce; its size is 0."""

    alphabet: Alphabet
    symbol: int
    size: int = field(default=0, init=False)

    def __len__(self):
        return 1

    def to_text(self) -> str:
        return f"slp literal={self.alphabet.token(self.symbol)} alphabet={self.alphabet.spec()}\n"


AnySlp = Union[Slp, LiteralSlp]


def parse_slp(text: str) -> AnySlp:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "slp":
        raise SlpError("missing 'slp' header line")
    header = dict(item.split("=", 1) for item in lines[0][1:])
    alphabet = Alphabet.parse(header["alphabet"])
    if "literal" in header:
        return LiteralSlp(alphabet, alphabet.index(header["literal"]))

    def ref(tok: str) -> Ref:
        return Var(int(tok[1:])) if tok.startswith("#") else alphabet.index(tok)

    rules = {int(parts[0][1:]): tuple(ref(t) for t in parts[1:]) for parts in lines[1:]}
    root = ref(header["root"])
    if not isinstance(root, Var):
        raise SlpError("root must be a nonterminal")
    return Slp(alphabet, root, rules)


def _topological(P: Slp) -> list[int]:
    """Nonterminals reachable from the root, children before parents (iterative DFS)."""
    order, done, active = [], set(), set()
    stack: list[tuple[int, int]] = [(P.root.id, 0)]
    active.add(P.root.id)
    while stack:
        q, i = stack.pop()
        rhs = P.rules[q]
        while i < len(rhs) and not (isinstance(rhs[i], Var) and rhs[i].id not in done):
            i += 1
        if i == len(rhs):
            active.discard(q)
            done.add(q)
            order.append(q)
            continue
        child = rhs[i].id
        if child in active:
            raise SlpError(f"cycle through #{child}")
        stack.append((q, i + 1))
        if child not in P.rules:
            raise SlpError(f"dangling reference #{child}")
        active.add(child)
        stack.append((child, 0))
    return order


def validate(P: AnySlp) -> list[str]:
    """Violations of the SLP conditions, tagged fanout/cycle/root/dangling/terminal."""
    if isinstance(P, LiteralSlp):
        return [] if 0 <= P.symbol < P.alphabet.size else ["terminal: literal symbol out of range"]
    problems = []
    referenced: set[int] = set()
    for q, rhs in P.rules.items():
        if len(rhs) < 2:
            problems.append(f"fanout: #{q} has {len(rhs)} references")
        for r in rhs:
            if isinstance(r, Var):
                referenced.add(r.id)
                if r.id not in P.rules:
                    problems.append(f"dangling: #{q} references undefined #{r.id}")
            elif not 0 <= r < P.alphabet.size:
                problems.append(f"terminal: #{q} uses symbol {r} outside the alphabet")
    if P.root.id not in P.rules:
        problems.append(f"root: #{P.root.id} has no rule")
    unreferenced = set(P.rules) - referenced
    if unreferenced != {P.root.id}:
        problems.append(
            f"root: unreferenced nonterminals are {sorted(unreferenced)}, expected only #{P.root.id}"
        )
    # cycle detection over the whole rule graph (Kahn)
    indegree = {q: 0 for q in P.rules}
    for rhs in P.rules.values():
        for r in rhs:
            if isinstance(r, Var) and r.id in indegree:
                indegree[r.id] += 1
    ready = [q for q, d in indegree.items() if d == 0]
    seen = 0
    while ready:
        q = ready.pop()
        seen += 1
        for r in P.rules[q]:
            if isinstance(r, Var) and r.id in indegree:
                indegree[r.id] -= 1
                if indegree[r.id] == 0:
                    ready.append(r.id)
    if seen < len(P.rules):
        stuck = sorted(q for q, d in indegree.items() if d > 0)
        problems.append(f"cycle: nonterminals {stuck} lie on or below a cycle")
    return problems


def expansion_lengths(P: Slp) -> dict[int, int]:
    """Expanded length of every reachable nonterminal, without building any values."""
    lengths: dict[int, int] = {}
    for q in _topological(P):
        lengths[q] = sum(lengths[r.id] if isinstance(r, Var) else 1 for r in P.rules[q])
    return lengths


def evaluate(P: AnySlp, cap: int = LENGTH_CAP) -> Word:
    if isinstance(P, LiteralSlp):
        return Word(bytes([P.symbol]), P.alphabet)
    total = P.lengths[P.root.id]
    if total > cap:
        raise SlpError(f"expansion length {total} exceeds cap {cap}")
    values: dict[int, bytes] = {}
    for q in _topological(P):
        values[q] = b"".join(values[r.id] if isinstance(r, Var) else bytes([r]) for r in P.rules[q])
    return Word(values[P.root.id], P.alphabet)


def _ref_length(P: Slp, r: Ref) -> int:
    return P.lengths[r.id] if isinstance(r, Var) else 1


def binarize(P: AnySlp) -> AnySlp:
    """Replace every rule longer than 2 by a balanced tree of binary rules (top node keeps its id)."""
    if isinstance(P, LiteralSlp):
        return P
    rules: dict[int, tuple[Ref, ...]] = {}
    fresh = max(P.rules) + 1

    def build(refs: tuple[Ref, ...], into: int | None = None) -> Ref:
        nonlocal fresh
        if len(refs) == 1:
            return refs[0]
        h = len(refs) // 2
        left, right = build(refs[:h]), build(refs[h:])
        if into is None:
            into, fresh = fresh, fresh + 1
        rules[into] = (left, right)
        return Var(into)

    for q, rhs in P.rules.items():
        if len(rhs) <= 2:
            rules[q] = rhs
        else:
            build(rhs, into=q)
    return Slp(P.alphabet, P.root, rules)


def _collect(alphabet: Alphabet, root: Ref, rules: Mapping[int, tuple[Ref, ...]]) -> AnySlp:
    """Drop rules unreachable from ``root``; a terminal root becomes a literal."""
    if not isinstance(root, Var):
        return LiteralSlp(alphabet, root)
    keep: dict[int, tuple[Ref, ...]] = {}
    stack = [root.id]
    while stack:
        q = stack.pop()
        if q in keep:
            continue
        keep[q] = rules[q]
        stack.extend(r.id for r in rules[q] if isinstance(r, Var) and r.id not in keep)
    return Slp(alphabet, root, keep)


def truncate(P: AnySlp, n: int) -> AnySlp:
    """SLP for the length-n prefix, rewriting only one root-to-leaf path.

    Each visited rule keeps the references up to the one containing position
    n-1; a cut-through nonterminal is replaced by a fresh truncated copy.
    Fresh rules of length 1 are inlined into their parent.
    """
    total = len(P)
    if not 1 <= n <= total:
        raise SlpError(f"prefix length {n} outside 1..{total}")
    if isinstance(P, LiteralSlp) or n == total:
        return P
    rules = dict(P.rules)
    fresh = max(rules) + 1
    path: list[list[Ref]] = []
    q, need = P.root.id, n
    while True:
        rhs = rules[q]
        covered = 0
        j = 0
        while covered + _ref_length(P, rhs[j]) < need:
            covered += _ref_length(P, rhs[j])
            j += 1
        rest = need - covered
        kept = list(rhs[:j])
        r = rhs[j]
        if not isinstance(r, Var) or rest == P.lengths[r.id]:
            kept.append(r)
            path.append(kept)
            break
        path.append(kept)
        q, need = r.id, rest
    # assemble bottom-up; the cut reference of each level is the level below
    below: Ref | None = None
    for kept in reversed(path):
        refs = kept + ([below] if below is not None else [])
        if len(refs) == 1:
            below = refs[0]
        else:
            rules[fresh] = tuple(refs)
            below = Var(fresh)
            fresh += 1
    return _collect(P.alphabet, below, rules)


def slp_from_dfa(M: OutputDfa, k: int, n: int) -> AnySlp:
    """Level grammar of an automaton: A(q, l) -> A(delta(q,0), l-1) ... A(delta(q,k-1), l-1).

    Only pairs reachable from (initial, ceil(log_k n)) get a nonterminal; level 0
    pairs are the output terminals. The value has x = word_from_dfa(M, k, n) as prefix.
    """
    if k != M.base:
        raise SlpError(f"automaton reads base {M.base}, asked for base {k}")
    depth = ceil_log(k, n)
    if depth == 0:
        return LiteralSlp(M.alphabet, M.outputs[M.initial])
    ids: dict[tuple[int, int], int] = {}
    rules: dict[int, tuple[Ref, ...]] = {}
    frontier = [M.initial]
    ids[(M.initial, depth)] = 0
    for level in range(depth, 0, -1):
        nxt = []
        for q in frontier:
            rhs = []
            for d in range(k):
                child = M.transitions[q][d]
                if level == 1:
                    rhs.append(M.outputs[child])
                    continue
                key = (child, level - 1)
                if key not in ids:
                    ids[key] = len(ids)
                    nxt.append(child)
                rhs.append(Var(ids[key]))
            rules[ids[(q, level)]] = tuple(rhs)
        frontier = nxt
    return Slp(M.alphabet, Var(0), rules)


def _power_ref(rules: dict[int, tuple[Ref, ...]], base: Ref, r: int, fresh: int) -> tuple[Ref, int]:
    """Add a squaring chain for base^r to ``rules``; returns (reference, next free id)."""
    if r < 1:
        raise SlpError("exponent must be >= 1")
    squares = [base]
    for _ in range(r.bit_length() - 1):
        rules[fresh] = (squares[-1], squares[-1])
        squares.append(Var(fresh))
        fresh += 1
    acc = squares[-1]
    for bit in range(r.bit_length() - 2, -1, -1):
        if r >> bit & 1:
            rules[fresh] = (acc, squares[bit])
            acc = Var(fresh)
            fresh += 1
    return acc, fresh


def power_slp(P: AnySlp, r: int) -> AnySlp:
    """SLP for val(P) repeated r times by the binary method."""
    if r == 1:
        return P
    if isinstance(P, LiteralSlp):
        rules: dict[int, tuple[Ref, ...]] = {}
        root, _ = _power_ref(rules, P.symbol, r, 0)
        return Slp(P.alphabet, root, rules)
    rules = dict(P.rules)
    root, _ = _power_ref(rules, P.root, r, max(rules) + 1)
    return Slp(P.alphabet, root, rules)


def fibonacci_slp(j: int) -> AnySlp:
    """Chain F_0 = 0, F_1 -> 0 1, F_{i+2} -> F_{i+1} F_i; the value of F_j has length fib(j+2)."""
    if j < 0:
        raise SlpError("level must be >= 0")
    if j == 0:
        return LiteralSlp(BINARY, 0)
    rules: dict[int, tuple[Ref, ...]] = {1: (0, 1)}
    prev: Ref = 0
    for i in range(2, j + 1):
        rules[i] = (Var(i - 1), prev)
        prev = Var(i - 1)
    return Slp(BINARY, Var(j), rules)


@dataclass
class ChainLevel:
    j: int
    block_length: int
    size: int
    root: Ref


@dataclass
class CharacteristicChain:
    """Cumulative grammar whose level j evaluates to the standard block s_j."""

    cf: ContinuedFraction
    rules: dict[int, tuple[Ref, ...]]
    levels: list[ChainLevel]

    def slp(self, j: int) -> AnySlp:
        return _collect(BINARY, self.levels[j].root, self.rules)


def characteristic_chain(cf: ContinuedFraction, depth: int | None = None) -> CharacteristicChain:
    depth = cf.depth if depth is None else depth
    if not 1 <= depth <= cf.depth:
        raise SlpError(f"chain depth {depth} outside 1..{cf.depth}")
    a = cf.coefficients
    q = cf.block_lengths()
    rules: dict[int, tuple[Ref, ...]] = {}
    fresh = 0
    levels = [ChainLevel(0, 1, 0, 0)]
    if a[0] == 1:
        levels.append(ChainLevel(1, 1, 0, 1))
    else:
        zeros, fresh = _power_ref(rules, 0, a[0] - 1, fresh)
        rules[fresh] = (zeros, 1)
        levels.append(ChainLevel(1, q[1], sum(map(len, rules.values())), Var(fresh)))
        fresh += 1
    size = levels[1].size
    for j in range(1, depth):
        before = len(rules)
        power, fresh = _power_ref(rules, levels[j].root, a[j], fresh)
        rules[fresh] = (power, levels[j - 1].root)
        added = sum(len(rules[i]) for i in list(rules)[before:])
        size += added
        levels.append(ChainLevel(j + 1, q[j + 1], size, Var(fresh)))
        fresh += 1
    return CharacteristicChain(cf, rules, levels)


@dataclass
class CharacteristicBuild:
    chain: CharacteristicChain | None
    level: int | None
    repetitions: int | None
    power_size: int | None
    slp: AnySlp


def characteristic_build(cf: ContinuedFraction, n: int) -> CharacteristicBuild:
    """Prefix grammar for the characteristic word, with the sizes of every stage.

    j is the largest level with q_j <= n; the prefix is cut from s_j^r with
    r = ceil(n / q_j). Below q_2 the prefix is spelled out literally.
    """
    if n < 1:
        raise SlpError("length must be >= 1")
    q = cf.block_lengths()
    if cf.depth < 2 or n < q[2]:
        block, _ = characteristic_blocks(cf, min(2, cf.depth))
        if len(block) < n:
            raise SlpError(f"continued fraction too shallow for n={n}")
        word = block.data[:n]
        if n == 1:
            return CharacteristicBuild(None, None, None, None, LiteralSlp(BINARY, word[0]))
        return CharacteristicBuild(None, None, None, None, Slp(BINARY, Var(0), {0: tuple(word)}))
    j = max(i for i in range(2, len(q)) if q[i] <= n)
    if j + 1 >= len(q) and n != q[j]:
        raise SlpError(f"continued fraction too shallow for n={n}: need a block longer than n")
    chain = characteristic_chain(cf, j)
    r = -(-n // q[j])
    rules = dict(chain.rules)
    root, _ = _power_ref(rules, chain.levels[j].root, r, max(rules, default=-1) + 1)
    powered = _collect(BINARY, root, rules)
    return CharacteristicBuild(chain, j, r, powered.size, truncate(powered, n))


def characteristic_slp(cf: ContinuedFraction, n: int) -> AnySlp:
    return characteristic_build(cf, n).slp
