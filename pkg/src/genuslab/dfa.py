"""Deterministic finite automata: trimming, completion, Hopcroft minimization,
language equivalence, and the line-oriented text / JSON interchange formats.

States are dense integers ``0..n-1``.  The transition map may be partial; a
missing transition rejects.  Every transform renumbers states canonically by
breadth-first discovery from the initial state under alphabet order, so equal
languages built along equal routes yield byte-identical automata.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from genuslab.errors import FormatError, GenusLabError


@dataclass(frozen=True)
class Dfa:
    """A deterministic automaton over an ordered alphabet of opaque tokens.

    ``transitions`` maps ``(state, symbol)`` to a state and may be partial.
    Instances are treated as immutable values; do not mutate the dict.
    """

    num_states: int
    alphabet: tuple[str, ...]
    transitions: dict[tuple[int, str], int]
    initial: int
    finals: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.num_states < 1:
            raise GenusLabError("a Dfa needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise GenusLabError("alphabet symbols must be distinct")
        if not 0 <= self.initial < self.num_states:
            raise GenusLabError(f"initial state {self.initial} out of range")
        if not self.finals <= set(range(self.num_states)):
            raise GenusLabError("final states out of range")
        for (q, s), r in self.transitions.items():
            if not (0 <= q < self.num_states and 0 <= r < self.num_states):
                raise GenusLabError(f"transition ({q},{s},{r}) out of range")
            if s not in self.alphabet:
                raise GenusLabError(f"transition symbol {s!r} not in alphabet")

    @property
    def states(self) -> range:
        return range(self.num_states)

    def delta(self, q: int, s: str) -> int | None:
        return self.transitions.get((q, s))

    @property
    def is_complete(self) -> bool:
        return len(self.transitions) == self.num_states * len(self.alphabet)

    @property
    def is_trim(self) -> bool:
        acc = _accessible(self)
        coacc = _coaccessible(self)
        return all(q in acc and q in coacc for q in self.states) or (
            self.num_states == 1 and not self.finals and not self.transitions
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return (
            self.num_states == other.num_states
            and self.alphabet == other.alphabet
            and self.transitions == other.transitions
            and self.initial == other.initial
            and self.finals == other.finals
        )

    def __hash__(self):
        return hash(
            (
                self.num_states,
                self.alphabet,
                tuple(sorted(self.transitions.items())),
                self.initial,
                self.finals,
            )
        )


def empty_language_dfa(alphabet: tuple[str, ...]) -> Dfa:
    """Canonical automaton of the empty language: one non-final state, no
    transitions."""
    return Dfa(1, tuple(alphabet), {}, 0, frozenset())


def accepts(a: Dfa, word) -> bool:
    """Run the word through ``a``; symbols outside the alphabet are an error."""
    q = a.initial
    for s in word:
        if s not in a.alphabet:
            raise GenusLabError(f"symbol {s!r} not in alphabet {a.alphabet}")
        q = a.delta(q, s)
        if q is None:
            return False
    return q in a.finals


def _accessible(a: Dfa) -> set[int]:
    seen = {a.initial}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        for s in a.alphabet:
            r = a.delta(q, s)
            if r is not None and r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def _coaccessible(a: Dfa) -> set[int]:
    rev: dict[int, set[int]] = {q: set() for q in a.states}
    for (q, _), r in a.transitions.items():
        rev[r].add(q)
    seen = set(a.finals)
    queue = deque(a.finals)
    while queue:
        q = queue.popleft()
        for p in rev[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def _renumber_bfs(a: Dfa) -> Dfa:
    """Relabel states by BFS discovery order from the initial state, trying
    letters in alphabet order.  All states must be accessible."""
    order: dict[int, int] = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        for s in a.alphabet:
            r = a.delta(q, s)
            if r is not None and r not in order:
                order[r] = len(order)
                queue.append(r)
    if len(order) != a.num_states:
        raise GenusLabError("renumbering requires every state accessible")
    trans = {(order[q], s): order[r] for (q, s), r in a.transitions.items()}
    finals = frozenset(order[q] for q in a.finals)
    return Dfa(a.num_states, a.alphabet, trans, 0, finals)


def trim(a: Dfa) -> Dfa:
    """Keep only states that are accessible and co-accessible.

    An automaton whose language is empty collapses to the canonical
    single-state empty-language form.
    """
    keep = _accessible(a) & _coaccessible(a)
    if a.initial not in keep:
        return empty_language_dfa(a.alphabet)
    old = sorted(keep)
    idx = {q: i for i, q in enumerate(old)}
    trans = {
        (idx[q], s): idx[r]
        for (q, s), r in a.transitions.items()
        if q in keep and r in keep
    }
    finals = frozenset(idx[q] for q in a.finals if q in keep)
    return _renumber_bfs(Dfa(len(old), a.alphabet, trans, idx[a.initial], finals))


def complete(a: Dfa) -> Dfa:
    """Totalize the transition map, adding at most one non-accepting sink."""
    if a.is_complete:
        return a
    sink = a.num_states
    trans = dict(a.transitions)
    for q in range(a.num_states + 1):
        for s in a.alphabet:
            trans.setdefault((q, s), sink)
    return _renumber_bfs(Dfa(a.num_states + 1, a.alphabet, trans, a.initial, a.finals))


def minimize(a: Dfa) -> Dfa:
    """The minimal automaton of ``L(a)``, unique up to renaming and returned
    in canonical BFS numbering.  Input is trimmed first; the empty language
    yields the designated single-state form."""
    a = trim(a)
    if not a.finals:
        return empty_language_dfa(a.alphabet)
    c = complete(a)
    partition = _hopcroft(c)
    block_of = {}
    for i, block in enumerate(partition):
        for q in block:
            block_of[q] = i
    trans = {}
    for (q, s), r in c.transitions.items():
        trans[(block_of[q], s)] = block_of[r]
    finals = frozenset(block_of[q] for q in c.finals)
    quotient = Dfa(len(partition), c.alphabet, trans, block_of[c.initial], finals)
    # trimming drops the dead class introduced by completion, if any
    return trim(quotient)


def _hopcroft(a: Dfa) -> list[set[int]]:
    """Hopcroft partition refinement; ``a`` must be complete."""
    finals = set(a.finals)
    nonfinals = set(a.states) - finals
    partition: list[set[int]] = [b for b in (finals, nonfinals) if b]
    if len(partition) == 1:
        return partition
    preimage: dict[str, dict[int, set[int]]] = {s: {} for s in a.alphabet}
    for (q, s), r in a.transitions.items():
        preimage[s].setdefault(r, set()).add(q)

    work = {min(range(len(partition)), key=lambda i: len(partition[i]))}
    # indices into `partition`; splits append, never shrink the list
    while work:
        i = work.pop()
        splitter = set(partition[i])
        for s in a.alphabet:
            x = set()
            for r in splitter:
                x |= preimage[s].get(r, set())
            if not x:
                continue
            for j in range(len(partition)):
                y = partition[j]
                inter = y & x
                if not inter or inter == y:
                    continue
                rest = y - x
                partition[j] = inter
                partition.append(rest)
                k = len(partition) - 1
                if j in work:
                    work.add(k)
                else:
                    work.add(j if len(inter) <= len(rest) else k)
    return partition


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Exact language equality via reachability on the pair automaton.

    Both automata must share the same alphabet (as a set); a mismatch is an
    error, not ``False``.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise GenusLabError(
            f"alphabet mismatch: {sorted(a.alphabet)} vs {sorted(b.alphabet)}"
        )
    letters = sorted(set(a.alphabet))
    dead = None  # implicit reject state for partial maps

    def is_final(dfa: Dfa, q) -> bool:
        return q is not None and q in dfa.finals

    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if is_final(a, p) != is_final(b, q):
            return False
        for s in letters:
            np = a.delta(p, s) if p is not None else dead
            nq = b.delta(q, s) if q is not None else dead
            if np is None and nq is None:
                continue
            pair = (np, nq)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


# ---------------------------------------------------------------------------
# text and JSON formats
#
#   alphabet: s1 s2 ...
#   states: n
#   initial: q
#   final: q1 q2 ...
#   trans: q s q'
#
# `#` starts a comment; symbols and states are whitespace-free tokens.
# ---------------------------------------------------------------------------


def parse_dfa(text: str) -> Dfa:
    alphabet: tuple[str, ...] | None = None
    num_states: int | None = None
    initial: int | None = None
    finals: frozenset[int] = frozenset()
    trans: dict[tuple[int, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        toks = rest.split()
        try:
            if key == "alphabet":
                alphabet = tuple(toks)
            elif key == "states":
                num_states = int(toks[0])
            elif key == "initial":
                initial = int(toks[0])
            elif key == "final":
                finals = frozenset(int(t) for t in toks)
            elif key == "trans":
                q, s, r = toks
                trans[(int(q), s)] = int(r)
            else:
                raise FormatError(f"unknown directive {key!r}", lineno)
        except FormatError:
            raise
        except (ValueError, IndexError) as exc:
            raise FormatError(f"bad {key!r} line: {exc}", lineno) from exc
    if alphabet is None or num_states is None or initial is None:
        raise FormatError("missing alphabet:, states: or initial: directive")
    try:
        return Dfa(num_states, alphabet, trans, initial, finals)
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc


def format_dfa(a: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(a.alphabet),
        f"states: {a.num_states}",
        f"initial: {a.initial}",
        "final: " + " ".join(str(q) for q in sorted(a.finals)),
    ]
    for (q, s), r in sorted(a.transitions.items(), key=lambda kv: (kv[0][0], a.alphabet.index(kv[0][1]))):
        lines.append(f"trans: {q} {s} {r}")
    return "\n".join(lines) + "\n"


def dfa_to_json(a: Dfa) -> str:
    obj = {
        "alphabet": list(a.alphabet),
        "states": a.num_states,
        "initial": a.initial,
        "final": sorted(a.finals),
        "trans": [
            [q, s, r]
            for (q, s), r in sorted(
                a.transitions.items(), key=lambda kv: (kv[0][0], a.alphabet.index(kv[0][1]))
            )
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def dfa_from_json(text: str) -> Dfa:
    try:
        obj = json.loads(text)
        alphabet = tuple(obj["alphabet"])
        trans = {(int(q), str(s)): int(r) for q, s, r in obj["trans"]}
        return Dfa(
            int(obj["states"]),
            alphabet,
            trans,
            int(obj["initial"]),
            frozenset(int(q) for q in obj["final"]),
        )
    except GenusLabError as exc:
        raise FormatError(str(exc)) from exc
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad DFA JSON: {exc}") from exc
