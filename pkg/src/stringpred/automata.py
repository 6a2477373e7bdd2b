"""Output-DFAs over base-k digits, automatic words and exact automaticity search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import AB, BINARY, Alphabet, Word, ceil_log


class AutomatonError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OutputDfa:
    """DFA reading base-k digits most significant first, with one output per state."""

    base: int
    alphabet: Alphabet
    transitions: tuple[tuple[int, ...], ...]
    outputs: tuple[int, ...]
    initial: int = 0

    def __post_init__(self):
        m = len(self.transitions)
        if m == 0 or len(self.outputs) != m:
            raise AutomatonError("transition and output tables must cover every state")
        if self.base < 2:
            raise AutomatonError("base must be >= 2")
        if not 0 <= self.initial < m:
            raise AutomatonError("initial state out of range")
        for row in self.transitions:
            if len(row) != self.base or any(not 0 <= q < m for q in row):
                raise AutomatonError(f"bad transition row {row}")
        if any(not 0 <= o < self.alphabet.size for o in self.outputs):
            raise AutomatonError("output symbol out of range")

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def run(self, digits: Sequence[int], start: int | None = None) -> int:
        q = self.initial if start is None else start
        for d in digits:
            q = self.transitions[q][d]
        return q

    def to_text(self) -> str:
        lines = [
            f"states={self.num_states} base={self.base} alphabet={self.alphabet.spec()} initial={self.initial}"
        ]
        for q in range(self.num_states):
            targets = " ".join(str(t) for t in self.transitions[q])
            lines.append(f"{self.alphabet.token(self.outputs[q])} {targets}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> OutputDfa:
        """Parse the header ``states=.. base=.. alphabet=.. [initial=..]`` plus one line per state."""
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        header = dict(item.split("=", 1) for item in rows[0])
        alphabet = Alphabet.parse(header["alphabet"])
        m, base = int(header["states"]), int(header["base"])
        body = rows[1:]
        if len(body) != m:
            raise AutomatonError(f"header declares {m} states, found {len(body)} lines")
        outputs = tuple(alphabet.index(r[0]) for r in body)
        transitions = tuple(tuple(int(t) for t in r[1:]) for r in body)
        return cls(base, alphabet, transitions, outputs, int(header.get("initial", 0)))


def base_k_digits(t: int, k: int, m: int) -> list[int]:
    """Padded base-k representation of t, most significant digit first."""
    if k < 2:
        raise AutomatonError("base must be >= 2")
    if t < 0 or t >= k**m:
        raise AutomatonError(f"{t} does not fit in {m} base-{k} digits")
    digits = [0] * m
    for j in range(m - 1, -1, -1):
        t, digits[j] = divmod(t, k)
    return digits


def dfa_eval(M: OutputDfa, digits: Sequence[int]) -> int:
    return M.outputs[M.run(digits)]


def word_from_dfa(M: OutputDfa, k: int, n: int) -> Word:
    """x[t] = M(<t>_k^m) for t < n with the minimal padding m = ceil(log_k n)."""
    if k != M.base:
        raise AutomatonError(f"automaton reads base {M.base}, asked for base {k}")
    m = ceil_log(k, n)
    # walk the level-m digit trie breadth first: states reached after each prefix
    level = [M.initial]
    for _ in range(m):
        level = [row for q in level for row in M.transitions[q]]
    return Word(bytes(M.outputs[q] for q in level[:n]), M.alphabet)


def thue_morse_dfa() -> OutputDfa:
    """Two-state parity automaton: output is the digit-sum parity in base 2."""
    return OutputDfa(2, BINARY, ((0, 1), (1, 0)), (0, 1))


def constant_dfa(alphabet: Alphabet, symbol: int, k: int = 2) -> OutputDfa:
    return OutputDfa(k, alphabet, ((0,) * k,), (symbol,))


def power_block_dfa(p: int) -> OutputDfa:
    """(p+3)-state base-2 automaton generating (a^m b^m)^m, m = 2**p.

    States 0..p form a counter over the leading p digits; state p reads the
    digit that selects the half of the period; p+1 and p+2 are absorbing a/b.
    """
    if p < 0:
        raise AutomatonError("parameter must be >= 0")
    sa, sb = p + 1, p + 2
    rows = [(i + 1, i + 1) for i in range(p)]
    rows.append((sa, sb))
    rows.append((sa, sa))
    rows.append((sb, sb))
    outputs = [0] * (p + 1) + [0, 1]
    return OutputDfa(2, AB, tuple(rows), tuple(outputs))


def block_state_lower_bound(x: Word, k: int) -> int:
    """Largest count, over block sizes k^l, of distinct full aligned blocks of x.

    Aligned blocks with different contents must be entered in different states,
    so this certifies a lower bound on the k-automaticity.
    """
    n = len(x)
    best = 0
    size = 1
    while size <= n:
        blocks = {x.data[i : i + size] for i in range(0, n - size + 1, size)}
        best = max(best, len(blocks))
        size *= k
    return best


def exact_automaticity(
    x: Word, k: int, s_max: int, budget: int = 2_000_000
) -> tuple[int, OutputDfa] | None:
    """Smallest DFA (at most ``s_max`` states) producing x with padding ceil(log_k |x|).

    Backtracking over transition tables: positions are processed in order,
    undefined transitions are branched over existing states plus one fresh
    state, and fresh states are numbered in order of first use. That numbering
    is canonical, so isomorphic automata are never enumerated twice.

    Two prunings keep it exact: sizes below :func:`block_state_lower_bound` are
    skipped, and two digit prefixes of the same length may share a state only
    if the aligned blocks they address agree (the shorter, truncated block
    being a prefix of the other).
    Raises :class:`SearchBudgetExceeded` once ``budget`` branch nodes are spent.
    """
    n = len(x)
    if n == 0:
        raise AutomatonError("word must be nonempty")
    m = ceil_log(k, n)
    data = x.data
    paths = [base_k_digits(t, k, m) for t in range(n)]
    spans = [k ** (m - l) for l in range(m + 1)]
    spent = 0

    for s in range(max(1, block_state_lower_bound(x, k)), s_max + 1):
        delta = [[-1] * k for _ in range(s)]
        tau = [-1] * s
        owner: dict[tuple[int, int], bytes] = {}
        journal: list[tuple[int, int]] = []
        used = 1

        def claim(depth: int, q: int, t: int) -> bool:
            size = spans[depth]
            block = data[t : t + size]
            held = owner.get((depth, q))
            if held is None:
                owner[depth, q] = block
                journal.append((depth, q))
                return True
            if len(held) == len(block):
                return held == block
            if len(held) < len(block):
                return block.startswith(held)
            return held.startswith(block)

        def rollback(mark: int) -> None:
            while len(journal) > mark:
                del owner[journal.pop()]

        def solve(t: int) -> bool:
            nonlocal used, spent
            spent += 1
            if spent > budget:
                raise SearchBudgetExceeded(
                    f"automaticity search exceeded {budget} nodes at {s} states"
                )
            if t == n:
                return True
            mark = len(journal)
            q = 0
            for depth, d in enumerate(paths[t], start=1):
                nxt = delta[q][d]
                if nxt < 0:
                    for target in range(min(used + 1, s)):
                        fresh = target == used
                        delta[q][d] = target
                        if fresh:
                            used += 1
                        if solve(t):
                            return True
                        if fresh:
                            used -= 1
                    delta[q][d] = -1
                    rollback(mark)
                    return False
                q = nxt
                if t % spans[depth] == 0 and not claim(depth, q, t):
                    rollback(mark)
                    return False
            if tau[q] < 0:
                tau[q] = data[t]
                if solve(t + 1):
                    return True
                tau[q] = -1
                rollback(mark)
                return False
            if tau[q] == data[t] and solve(t + 1):
                return True
            rollback(mark)
            return False

        if solve(0):
            transitions = tuple(tuple(max(t, 0) for t in row) for row in delta[:used])
            outputs = tuple(max(o, 0) for o in tau[:used])
            return used, OutputDfa(k, x.alphabet, transitions, outputs)
    return None
