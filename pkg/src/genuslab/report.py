"""Report rendering: CSV tables with matplotlib figures written next to them.

Three report kinds cover the quantities the library computes in bulk: the
exact genus of the odd-modulus hierarchy against its lower bound, the
lower/upper genus estimates as the state count grows, and sampled face
censuses of random embeddings of complete modular-sum automata (which also
exercises the census/Euler genus identity on every sample).
"""

from __future__ import annotations

import csv
import random
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from genuslab.bounds import complete_graph_genus, genus_lower_bound, genus_upper_bound, hierarchy_genus, rho
from genuslab.dfa import minimize
from genuslab.embedding import RotationSystem, dart_vertex, face_census_genus, trace_faces
from genuslab.errors import GenusLabError
from genuslab.families import zmod
from genuslab.graphs import underlying_multigraph


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def hierarchy_report(k_min: int, k_max: int, outdir: str | Path) -> list[Path]:
    """Genus of the odd-modulus hierarchy for k_min..k_max: CSV plus a growth
    figure comparing the exact value with the rounded lower bound."""
    if k_min < 4 or k_max < k_min:
        raise GenusLabError("need 4 <= k_min <= k_max")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    ks = list(range(k_min, k_max + 1))
    rows = []
    for k in ks:
        lb = genus_lower_bound(k, 3, 2 * k + 1)
        rows.append([k, 2 * k + 1, float(lb), hierarchy_genus(k), complete_graph_genus(2 * k + 1)])
    csv_path = outdir / "hierarchy.csv"
    _write_csv(csv_path, ["k", "states", "lower_bound", "genus", "complete_graph_genus"], rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, [r[3] for r in rows], "o-", label="exact genus")
    ax.plot(ks, [r[2] for r in rows], "--", label="lower bound")
    ax.set_xlabel("k (alphabet 1..k, modulus 2k+1)")
    ax.set_ylabel("genus")
    ax.set_title("Genus growth of the modular-sum hierarchy")
    ax.legend()
    fig.tight_layout()
    png_path = outdir / "hierarchy.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def bounds_report(m: int, n_max: int, outdir: str | Path, girth_threshold: int | None = None) -> list[Path]:
    """Lower and upper genus estimates for 1..n_max states on m letters."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    j = rho(m) if girth_threshold is None else girth_threshold
    ns = list(range(1, n_max + 1))
    rows = [
        [n, j, float(genus_lower_bound(m, j, n)), float(genus_upper_bound(m, n))]
        for n in ns
    ]
    csv_path = outdir / "bounds.csv"
    _write_csv(csv_path, ["states", "girth_threshold", "lower", "upper"], rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, [r[2] for r in rows], label=f"lower (girth threshold {j})")
    ax.plot(ns, [r[3] for r in rows], label="upper")
    ax.set_xlabel("states")
    ax.set_ylabel("genus bound")
    ax.set_title(f"Genus estimates on a {m}-letter alphabet")
    ax.legend()
    fig.tight_layout()
    png_path = outdir / "bounds.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def census_report(k: int, samples: int, seed: int, outdir: str | Path) -> list[Path]:
    """Random rotation systems of the complete mod-k sum automaton: per-sample
    genus (checked against the face-census formula) and the aggregate face
    census, as CSV plus a two-panel figure."""
    if k < 1 or samples < 1:
        raise GenusLabError("need k >= 1 and samples >= 1")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    a = minimize(zmod(k))
    mg = underlying_multigraph(a)
    at: dict[int, list[int]] = {v: [] for v in range(mg.num_vertices)}
    for d in range(2 * mg.num_edges):
        at[dart_vertex(mg, d)].append(d)
    rows = []
    aggregate: dict[int, int] = {}
    genera: list[int] = []
    for i in range(samples):
        orders = []
        for v in range(mg.num_vertices):
            darts = at[v][:]
            rng.shuffle(darts)
            orders.append(tuple(darts))
        w = trace_faces(mg, RotationSystem(tuple(orders)))
        formula = face_census_genus(len(a.alphabet), a.num_states, w.census)
        if formula != Fraction(w.genus):
            raise GenusLabError("internal error: census formula disagrees with Euler genus")
        genera.append(w.genus)
        for length, cnt in w.census.items():
            aggregate[length] = aggregate.get(length, 0) + cnt
        rows.append([i, w.genus, sum(w.census.values())])
    csv_path = outdir / "census.csv"
    _write_csv(csv_path, ["sample", "genus", "faces"], rows)

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    lengths = sorted(aggregate)
    ax1.bar(lengths, [aggregate[l] for l in lengths])
    ax1.set_xlabel("face length")
    ax1.set_ylabel("count")
    ax1.set_title(f"Face census over {samples} rotations (mod-{k} automaton)")
    gmin, gmax = min(genera), max(genera)
    bins = list(range(gmin, gmax + 2))
    ax2.hist(genera, bins=bins, align="left", rwidth=0.8)
    ax2.set_xlabel("genus")
    ax2.set_ylabel("samples")
    ax2.set_title("Genus distribution")
    fig.tight_layout()
    png_path = outdir / "census.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]
