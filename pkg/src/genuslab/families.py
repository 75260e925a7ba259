"""Generators for the automaton families used throughout: modular-sum
languages, their product generalization, two-letter shuffles, the two-letter
genus hierarchy, and the cascade family whose minimal automata have high genus
while the languages stay planar.

Each generator returns the family's automaton verbatim (its textbook state
space and transition rule), not a minimized or renumbered transform of it.
"""

from __future__ import annotations

from itertools import product

from genuslab.dfa import Dfa
from genuslab.errors import GenusLabError

FAMILIES = ("zmod", "zmod-product", "shuffle", "two-letter-hierarchy", "cascade")


def zmod(k: int, subalphabet=None) -> Dfa:
    """Sums over Z/k: states 0..k-1, transition i --a--> i+a mod k,
    initial = final = 0.  ``subalphabet`` restricts the letters (default all
    residues)."""
    if k < 1:
        raise GenusLabError("modulus must be >= 1")
    letters = sorted(set(range(k)) if subalphabet is None else set(subalphabet))
    if not letters or any(not 0 <= a < k for a in letters):
        raise GenusLabError(f"subalphabet must be nonempty within 0..{k - 1}")
    alphabet = tuple(str(a) for a in letters)
    trans = {(i, str(a)): (i + a) % k for i in range(k) for a in letters}
    return Dfa(k, alphabet, trans, 0, frozenset([0]))


def zmod_product(moduli, generators) -> Dfa:
    """Sums over Z/n1 x ... x Z/nr restricted to the listed generator tuples.

    States are all group elements in lexicographic order; letters are the
    generators rendered as ``(a1,...,ar)`` tokens.
    """
    moduli = tuple(int(n) for n in moduli)
    if not moduli or any(n < 1 for n in moduli):
        raise GenusLabError("all moduli must be >= 1")
    gens = [tuple(int(x) % n for x, n in zip(w, moduli)) for w in generators]
    if not gens or any(len(w) != len(moduli) for w in generators):
        raise GenusLabError("each generator must have one entry per modulus")
    if len(set(gens)) != len(gens):
        raise GenusLabError("generators must be distinct")
    states = list(product(*(range(n) for n in moduli)))
    idx = {v: i for i, v in enumerate(states)}
    alphabet = tuple("(" + ",".join(str(x) for x in w) + ")" for w in gens)
    trans = {}
    for v in states:
        for w, sym in zip(gens, alphabet):
            target = tuple((a + b) % n for a, b, n in zip(v, w, moduli))
            trans[(idx[v], sym)] = idx[target]
    return Dfa(len(states), alphabet, trans, idx[tuple(0 for _ in moduli)],
               frozenset([idx[tuple(0 for _ in moduli)]]))


def shuffle(n: int, p: int) -> Dfa:
    """Words over {0,1} with #0 = 0 mod n and #1 = 0 mod p: the product of two
    cyclic counters on n*p states."""
    if n < 1 or p < 1:
        raise GenusLabError("shuffle moduli must be >= 1")
    idx = {(i, j): i * p + j for i in range(n) for j in range(p)}
    trans = {}
    for i in range(n):
        for j in range(p):
            trans[(idx[(i, j)], "0")] = idx[((i + 1) % n, j)]
            trans[(idx[(i, j)], "1")] = idx[(i, (j + 1) % p)]
    return Dfa(n * p, ("0", "1"), trans, 0, frozenset([0]))


def two_letter_hierarchy(k: int) -> Dfa:
    """The 6k-state two-letter automaton on Z/6 x Z/k with
    (i,j) --0--> (i+1,j) and (i,j) --1--> (2i,j+1); requires k >= 5 so the
    underlying multigraph has no short simple cycle."""
    if k < 5:
        raise GenusLabError("two-letter hierarchy requires k >= 5")
    idx = {(i, j): i * k + j for i in range(6) for j in range(k)}
    trans = {}
    for i in range(6):
        for j in range(k):
            trans[(idx[(i, j)], "0")] = idx[((i + 1) % 6, j)]
            trans[(idx[(i, j)], "1")] = idx[((2 * i) % 6, (j + 1) % k)]
    return Dfa(6 * k, ("0", "1"), trans, 0, frozenset([0]))


def exponential_cascade(n: int) -> Dfa:
    """Length-(n+2) words a_0..a_{n+1} over Z/5 with a_0+...+a_n = a_{n+1}.

    States are Z/5 x {0..n} plus a start state, an accepting top state, and a
    rejecting bottom sink; the top state falls to the sink on any further
    letter.  Size is 5(n+1) + 3.
    """
    if n < 0:
        raise GenusLabError("cascade depth must be >= 0")
    layers = {(a, j): a * (n + 1) + j for a in range(5) for j in range(n + 1)}
    start = 5 * (n + 1)
    top = start + 1
    bottom = start + 2
    alphabet = tuple(str(a) for a in range(5))
    trans = {}
    for a in range(5):
        trans[(start, str(a))] = layers[(a, 0)]
        trans[(top, str(a))] = bottom
        trans[(bottom, str(a))] = bottom
    for a in range(5):
        for j in range(n + 1):
            for b in range(5):
                if j < n:
                    trans[(layers[(a, j)], str(b))] = layers[((a + b) % 5, j + 1)]
                else:
                    trans[(layers[(a, j)], str(b))] = top if b == a else bottom
    return Dfa(start + 3, alphabet, trans, start, frozenset([top]))


def generate(family: str, params) -> Dfa:
    """Dispatch by family tag; ``params`` is the family's parameter tuple."""
    if family == "zmod":
        k = int(params[0])
        sub = None
        if len(params) > 1 and params[1] is not None:
            sub = [int(x) for x in params[1]]
        return zmod(k, sub)
    if family == "zmod-product":
        return zmod_product(params[0], params[1])
    if family == "shuffle":
        return shuffle(int(params[0]), int(params[1]))
    if family == "two-letter-hierarchy":
        return two_letter_hierarchy(int(params[0]))
    if family == "cascade":
        return exponential_cascade(int(params[0]))
    raise GenusLabError(f"unknown family {family!r}; expected one of {FAMILIES}")
