"""Undirected weighted co-authorship graph and threshold filtering."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .ingest import Corpus, PublicationRecord


@dataclass
class CoauthorGraph:
    """Co-authorship network: edge weight = number of joint records.

    Adjacency is kept symmetric and self-loop free; ``publication_count``
    tracks how many records list each node (as author or thesis supervisor).
    """

    adj: dict[str, dict[str, int]] = field(default_factory=dict)
    publication_count: dict[str, int] = field(default_factory=dict)

    def add_node(self, node: str) -> None:
        self.adj.setdefault(node, {})
        self.publication_count.setdefault(node, 0)

    def add_edge(self, a: str, b: str, weight: int = 1) -> None:
        if a == b:
            raise ValueError(f"self-loop on {a!r}")
        self.add_node(a)
        self.add_node(b)
        self.adj[a][b] = self.adj[a].get(b, 0) + weight
        self.adj[b][a] = self.adj[b].get(a, 0) + weight

    def remove_node(self, node: str) -> None:
        for neighbor in self.adj.pop(node, {}):
            del self.adj[neighbor][node]
        self.publication_count.pop(node, None)

    def nodes(self) -> list[str]:
        return sorted(self.adj)

    def edges(self) -> list[tuple[str, str, int]]:
        """Unordered pairs, each reported once as (min, max, weight)."""
        return sorted(
            (a, b, w) for a, nbrs in self.adj.items() for b, w in nbrs.items() if a < b
        )

    def neighbors(self, node: str) -> dict[str, int]:
        return self.adj[node]

    def has_node(self, node: str) -> bool:
        return node in self.adj

    def weight(self, a: str, b: str) -> int:
        return self.adj.get(a, {}).get(b, 0)

    def node_count(self) -> int:
        return len(self.adj)

    def copy(self) -> CoauthorGraph:
        return CoauthorGraph(
            adj={a: dict(nbrs) for a, nbrs in self.adj.items()},
            publication_count=dict(self.publication_count),
        )


def build_coauthor_graph(corpus: Corpus | list[PublicationRecord]) -> CoauthorGraph:
    """Build the full co-authorship network from a canonicalized corpus.

    Every unordered author pair on a record contributes +1 edge weight;
    thesis records also contribute +1 to the (author, supervisor) pair.
    An empty corpus yields an empty graph.
    """
    records = corpus.records if isinstance(corpus, Corpus) else corpus
    graph = CoauthorGraph()
    for record in records:
        if record.author_ids is None:
            raise ValueError(f"record {record.id!r} is not canonicalized")
        participants = sorted(set(record.author_ids))
        for a, b in combinations(participants, 2):
            graph.add_edge(a, b)
        supervisor = record.supervisor_id
        if supervisor is not None and supervisor not in participants:
            for author in participants:
                graph.add_edge(author, supervisor)
            participants.append(supervisor)
        for person in participants:
            graph.add_node(person)
            graph.publication_count[person] += 1
    return graph


def threshold_subgraph(graph: CoauthorGraph, min_pubs: int, min_weight: int) -> CoauthorGraph:
    """Keep nodes with publication_count >= min_pubs and edges with
    weight >= min_weight between kept nodes (boundaries inclusive)."""
    if min_pubs < 0:
        raise ValueError("min_pubs must be >= 0")
    if min_weight < 1:
        raise ValueError("min_weight must be >= 1")
    kept = {n for n, c in graph.publication_count.items() if c >= min_pubs}
    out = CoauthorGraph()
    for node in kept:
        out.add_node(node)
        out.publication_count[node] = graph.publication_count[node]
    for a, b, w in graph.edges():
        if w >= min_weight and a in kept and b in kept:
            out.add_edge(a, b, w)
    return out


def graph_to_dict(graph: CoauthorGraph) -> dict:
    """Export as {nodes: [{id, publication_count}], edges: [{a, b, weight}]}."""
    return {
        "nodes": [
            {"id": n, "publication_count": graph.publication_count[n]} for n in graph.nodes()
        ],
        "edges": [{"a": a, "b": b, "weight": w} for a, b, w in graph.edges()],
    }


def graph_from_dict(obj: dict) -> CoauthorGraph:
    """Inverse of :func:`graph_to_dict`."""
    graph = CoauthorGraph()
    for node in obj.get("nodes", []):
        graph.add_node(node["id"])
        graph.publication_count[node["id"]] = int(node["publication_count"])
    for edge in obj.get("edges", []):
        graph.add_edge(edge["a"], edge["b"], int(edge["weight"]))
    return graph
