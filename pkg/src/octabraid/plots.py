"""Matplotlib figure writers for the CLI report paths.

Figures are rendered to files next to the delimited outputs; the Agg
backend keeps everything headless.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cosets import CosetTable
from .sopath import RotationPath
from .words import Letter


def save_flow_trace(traces: Mapping[str, Sequence[float]], outfile: str,
                    tol: float | None = None) -> None:
    """Max-distance trace per iteration, one line per labeled flow run."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, trace in traces.items():
        ax.semilogy(np.maximum(np.asarray(trace, dtype=float), 1e-17), label=label)
    if tol is not None:
        ax.axhline(tol, color="gray", linestyle=":", linewidth=1, label="tolerance")
    ax.set_xlabel("iteration")
    ax.set_ylabel("max distance to identity")
    ax.set_title("gradient flow on sampled paths")
    if len(traces) <= 12:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(outfile, dpi=150)
    plt.close(fig)


def save_path_profile(path: RotationPath, outfile: str) -> None:
    """Distance-to-identity and minimum diagonal entry along the path."""
    n = path.n
    d = n - np.einsum("qii->q", path.samples)
    min_diag = np.einsum("qii->qi", path.samples).min(axis=1)
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 5.5), sharex=True)
    ax1.plot(path.params, d)
    ax1.set_ylabel("distance to identity")
    ax2.plot(path.params, min_diag)
    ax2.axhline(0.0, color="gray", linestyle=":", linewidth=1)
    ax2.set_ylabel("min diagonal entry")
    ax2.set_xlabel("path parameter t")
    ax1.set_title("sampled path profile")
    fig.tight_layout()
    fig.savefig(outfile, dpi=150)
    plt.close(fig)


def save_cayley_png(table: CosetTable, outfile: str, seed: int = 0) -> None:
    """Spring-layout rendering of the Cayley graph; multiplication-by-R1
    edges dotted, the others solid, colored by generator."""
    import networkx as nx

    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, table.n_cosets + 1))
    for c in range(1, table.n_cosets + 1):
        for i in range(1, table.rank):
            graph.add_edge(c, table.apply(c, Letter(i, 1)), gen=i)
    pos = nx.spring_layout(graph, seed=seed)
    fig, ax = plt.subplots(figsize=(8, 8))
    nx.draw_networkx_nodes(graph, pos, ax=ax, node_size=60, node_color="#dddddd",
                           edgecolors="#555555", linewidths=0.5)
    cmap = plt.get_cmap("tab10")
    for i in range(1, table.rank):
        edges = [(u, v) for u, v, d in graph.edges(data=True) if d["gen"] == i]
        nx.draw_networkx_edges(
            graph, pos, edgelist=edges, ax=ax, arrows=False,
            style="dotted" if i == 1 else "solid",
            edge_color=[cmap((i - 1) % 10)], width=0.8,
        )
    ax.set_axis_off()
    ax.set_title(f"Cayley graph on {table.n_cosets} elements")
    fig.tight_layout()
    fig.savefig(outfile, dpi=150)
    plt.close(fig)
