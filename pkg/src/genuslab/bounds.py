"""Closed-form genus bounds in exact rational arithmetic.

Everything here is pure integer and Fraction work: the girth threshold table
rho, the lower and upper genus estimates for automata without short simple
cycles, the exact genus formula for the odd-modulus hierarchy, the classical
complete-graph genus, and the finite candidate-size set used by the decision
procedure.  Ceilings are applied only where a result is known to be an
integer genus; bounds stay rational until compared.
"""

from __future__ import annotations

import math
from fractions import Fraction

from genuslab.errors import GenusLabError


def rho(m: int) -> int:
    """Girth threshold per alphabet size: 5 for two letters, 4 for three,
    3 from four letters on."""
    if m < 2:
        raise GenusLabError("rho is defined for alphabets of at least 2 letters")
    if m == 2:
        return 5
    if m == 3:
        return 4
    return 3


def genus_lower_bound(m: int, j: int, n: int) -> Fraction:
    """``1 + ((j-2)m - j) * n / (2j)``: a genus lower bound for an n-state
    automaton on m letters, valid only when its multigraph has no simple
    cycle of length j-1 or shorter (the caller certifies girth)."""
    if m < 2 or j < 3 or n < 0:
        raise GenusLabError("need m >= 2, j >= 3, n >= 0")
    return 1 + Fraction(((j - 2) * m - j) * n, 2 * j)


def genus_upper_bound(m: int, n: int) -> Fraction:
    """``1 + (m-1)n/2``: Euler-formula upper bound for the genus of any
    n-state automaton on m letters."""
    if m < 1 or n < 1:
        raise GenusLabError("need m >= 1, n >= 1")
    return 1 + Fraction((m - 1) * n, 2)


def hierarchy_genus(k: int) -> int:
    """Exact genus of the modular-sum language on letters 1..k modulo 2k+1:
    ``ceil((2k-2)(2k-3)/12)``; the formula holds for k >= 4."""
    if k < 4:
        raise GenusLabError("the hierarchy formula requires k >= 4")
    return math.ceil(Fraction((2 * k - 2) * (2 * k - 3), 12))


def complete_graph_genus(v: int) -> int:
    """Genus of the complete graph on v vertices: ``ceil((v-3)(v-4)/12)``."""
    if v < 3:
        raise GenusLabError("complete-graph genus formula requires v >= 3")
    return math.ceil(Fraction((v - 3) * (v - 4), 12))


def size_set_E(m: int, j: int, size_L: int, genus_cap) -> set[int]:
    """The finite set of automaton sizes that could realize the minimal genus:
    ``{n >= size_L : 1 + ((j-2)m - j) n / (2j) <= genus_cap}``.

    Raises when the slope ``(j-2)m - j`` is not positive, since the set would
    be infinite.
    """
    slope_num = (j - 2) * m - j
    if slope_num <= 0:
        raise GenusLabError(
            f"E is not finite for m={m}, j={j}: the size bound has non-positive slope"
        )
    slope = Fraction(slope_num, 2 * j)
    max_n = math.floor((Fraction(genus_cap) - 1) / slope)
    if max_n < size_L:
        return set()
    return set(range(size_L, max_n + 1))
