"""The decision procedure: class membership for languages without short
simple cycles, genus and topological-size search over tight emulators, and
the certificates that make its reports machine-checkable.

For a language in class C(m) (girth of the minimal automaton at least rho(m))
the candidate sizes form the finite set E, so exhausting it pins the genus
and the topological size exactly.  Outside the class the same search runs as
a semi-decision procedure: it is exact only when the best witness meets the
certified lower bound (0 in general, 1 under the two-letter girth-4
certificate) with all smaller sizes exhausted.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import count

from genuslab.bounds import genus_lower_bound, genus_upper_bound, rho, size_set_E
from genuslab.dfa import Dfa, equivalent, minimize
from genuslab.embedding import EmbeddingWitness, SearchBudget, genus_exact
from genuslab.emulator import (
    EmulatorMap,
    identity_emulator,
    lift_to_automaton,
    search_min_genus_emulator,
)
from genuslab.errors import GenusLabError
from genuslab.graphs import girth, simplify, underlying_multigraph


@dataclass(frozen=True)
class DecisionReport:
    """Everything the procedure can certify about one language."""

    size_set: int
    alphabet_size: int
    girth: float
    in_class: bool
    lower: int
    upper: int
    exact: bool
    top_size: int | None
    top_size_lower: int
    witness_dfa: Dfa | None
    witness_emulator: EmulatorMap | None
    witness_embedding: EmbeddingWitness | None
    sizes_exhausted: tuple[int, ...]
    budget_exhausted: bool
    nodes_used: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise GenusLabError("decision report lower bound exceeds upper bound")
        if self.exact:
            if self.lower != self.upper or self.top_size is None:
                raise GenusLabError("exact report needs pinned genus and size")
            if self.top_size < self.size_set:
                raise GenusLabError("topological size below set-theoretic size")


def class_membership(a: Dfa) -> tuple[int, float, bool]:
    """Minimize, measure the multigraph girth, and compare against rho(m)."""
    a_min = minimize(a)
    m = len(a_min.alphabet)
    g = girth(underlying_multigraph(a_min))
    in_class = m >= 2 and g >= rho(m)
    return m, g, in_class


def two_letter_nonplanar_certificate(a: Dfa) -> bool:
    """True iff the minimal automaton's multigraph has girth at least 4,
    which certifies genus >= 1 for a two-letter language."""
    if len(a.alphabet) != 2:
        raise GenusLabError("the certificate applies to two-letter alphabets only")
    return girth(underlying_multigraph(minimize(a))) >= 4


def finiteness_size_cap(m: int, g: int) -> int:
    """Largest automaton size compatible with genus ``g`` for the
    girth-restricted class on ``m`` letters."""
    if m < 2:
        raise GenusLabError("need at least 2 letters")
    if g < 2:
        raise GenusLabError("the class admits no automata of genus below 2")
    j = rho(m)
    slope_num = (j - 2) * m - j
    return (g - 1) * 2 * j // slope_num


def decide_genus(a: Dfa, budget: SearchBudget | None = None) -> DecisionReport:
    """Bound (and when possible pin) the genus and topological size of
    ``L(a)`` by searching tight emulators of the minimal automaton's digraph
    in order of size."""
    budget = budget or SearchBudget()
    used = 0
    deadline = time.monotonic() + budget.max_ms / 1000.0 if budget.max_ms else None

    def remaining() -> SearchBudget:
        ms = None
        if deadline is not None:
            ms = max(1, int((deadline - time.monotonic()) * 1000))
        return SearchBudget(max_nodes=max(1, budget.max_nodes - used), max_ms=ms)

    a_min = minimize(a)
    n = a_min.num_states
    m = len(a_min.alphabet)
    mg = underlying_multigraph(a_min)
    base = simplify(mg)
    gir = girth(mg)
    in_class = m >= 2 and gir >= rho(m)

    amin_interval = genus_exact(mg, remaining())
    used += amin_interval.nodes_used

    if amin_interval.exact and amin_interval.upper == 0:
        # the minimal automaton already realizes the genus
        return DecisionReport(
            size_set=n,
            alphabet_size=m,
            girth=gir,
            in_class=in_class,
            lower=0,
            upper=0,
            exact=True,
            top_size=n,
            top_size_lower=n,
            witness_dfa=a_min,
            witness_emulator=identity_emulator(base),
            witness_embedding=amin_interval.witness,
            sizes_exhausted=(),
            budget_exhausted=amin_interval.budget_exhausted,
            nodes_used=used,
        )

    formula_cap = math.floor(genus_upper_bound(m, n)) if n >= 1 else 0
    cap = amin_interval.upper if amin_interval.exact else min(amin_interval.upper, formula_cap)

    if in_class:
        lower = max(2, math.ceil(genus_lower_bound(m, rho(m), n)))
        sizes = iter(sorted(size_set_E(m, rho(m), n, cap)))
        finite_sizes = True
    else:
        lower = 1 if (m == 2 and gir >= 4) else 0
        sizes = count(n)
        finite_sizes = False
    lower = min(lower, cap)  # cap is witnessed above the true genus, never below a sound bound

    best = cap
    best_emulator: EmulatorMap | None = None
    best_embedding: EmbeddingWitness | None = None
    best_size: int | None = None
    if amin_interval.witness is not None and amin_interval.upper == cap:
        # an embedding certifies its own genus even when the interval around
        # it is not exact, so the minimal automaton realizes the cap
        best_emulator = identity_emulator(base)
        best_embedding = amin_interval.witness
        best_size = n

    sizes_done: list[int] = []
    ran_out = amin_interval.budget_exhausted
    exhausted_all = False
    if not ran_out:
        exhausted_all = True
        for size in sizes:
            if best <= lower:
                break
            size_ok = True
            while best > lower:
                result = search_min_genus_emulator(
                    base, max_size=size, target_genus=best - 1,
                    budget=remaining(), min_size=size,
                )
                used += result.nodes_used
                if result.budget_exhausted:
                    ran_out = True
                    size_ok = False
                    break
                if result.found is None:
                    break  # this size cannot do better than `best`
                em, embedding = result.found
                best = embedding.genus
                best_emulator, best_embedding, best_size = em, embedding, size
            if not size_ok:
                exhausted_all = False
                break
            sizes_done.append(size)
        if not finite_sizes and best > lower:
            # semi-decision territory: the size stream never ends
            exhausted_all = False

    exact = False
    top_size: int | None = None
    if not ran_out and best_embedding is not None:
        if best <= lower or (finite_sizes and exhausted_all):
            exact = True
            top_size = best_size
    if exact:
        lower = best

    witness_dfa = None
    if exact and best_emulator is not None:
        witness_dfa = lift_to_automaton(best_emulator, a_min)
        if witness_dfa.num_states != top_size:
            raise GenusLabError(
                "internal error: trimmed witness automaton smaller than the "
                "exhaustively certified topological size"
            )
        if not equivalent(witness_dfa, a_min):
            raise GenusLabError("internal error: witness automaton computes a different language")

    return DecisionReport(
        size_set=n,
        alphabet_size=m,
        girth=gir,
        in_class=in_class,
        lower=lower,
        upper=best,
        exact=exact,
        top_size=top_size,
        top_size_lower=n,
        witness_dfa=witness_dfa,
        witness_emulator=best_emulator if exact else None,
        witness_embedding=best_embedding if exact else None,
        sizes_exhausted=tuple(sizes_done),
        budget_exhausted=ran_out,
        nodes_used=used,
    )


def report_to_dict(r: DecisionReport) -> dict:
    return {
        "size_set": r.size_set,
        "alphabet_size": r.alphabet_size,
        "girth": None if r.girth == math.inf else int(r.girth),
        "in_class": r.in_class,
        "genus_lower": r.lower,
        "genus_upper": r.upper,
        "exact": r.exact,
        "top_size": r.top_size,
        "top_size_lower": r.top_size_lower,
        "witness_size": None if r.witness_dfa is None else r.witness_dfa.num_states,
        "sizes_exhausted": list(r.sizes_exhausted),
        "budget_exhausted": r.budget_exhausted,
        "nodes_used": r.nodes_used,
    }


def format_report(r: DecisionReport) -> str:
    girth_str = "inf" if r.girth == math.inf else str(int(r.girth))
    lines = [
        f"size_set: {r.size_set}",
        f"alphabet: {r.alphabet_size} letters",
        f"girth: {girth_str}",
        f"in_class: {'yes' if r.in_class else 'no'}",
    ]
    if r.exact:
        lines.append(f"genus: {r.upper} (exact)")
        lines.append(f"top_size: {r.top_size}")
    else:
        lines.append(f"genus: in [{r.lower}, {r.upper}] (not exact)")
        lines.append(f"top_size: >= {r.top_size_lower}")
    lines.append(f"sizes_exhausted: {' '.join(str(s) for s in r.sizes_exhausted) or '-'}")
    lines.append(f"budget_exhausted: {'yes' if r.budget_exhausted else 'no'}")
    lines.append(f"nodes_used: {r.nodes_used}")
    return "\n".join(lines) + "\n"
