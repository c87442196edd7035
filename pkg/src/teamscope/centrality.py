"""Exact betweenness centrality via Brandes' accumulation.

Shortest paths are unweighted: record counts act as thresholds elsewhere,
never as distances.  Scores use the unnormalized unordered-pair convention
(the ordered-pair accumulation halved), so a star center with three leaves
scores exactly 3.0 and the stopping rule "max score <= 1" is meaningful.
"""

from __future__ import annotations

from collections import deque

from .graph import CoauthorGraph


def betweenness(graph: CoauthorGraph) -> dict[str, float]:
    """Betweenness score for every node; isolated nodes score 0.

    One BFS plus dependency accumulation per source, O(V*E) total.
    Sources are visited in sorted order so results are deterministic.
    """
    nodes = graph.nodes()
    scores = {v: 0.0 for v in nodes}
    for source in nodes:
        _accumulate(graph, source, scores)
    for v in nodes:
        scores[v] /= 2.0
    return scores


def _accumulate(graph: CoauthorGraph, source: str, scores: dict[str, float]) -> None:
    sigma = {source: 1}  # number of shortest source->v paths
    dist = {source: 0}
    preds: dict[str, list[str]] = {source: []}
    order: list[str] = []
    queue = deque([source])
    while queue:
        v = queue.popleft()
        order.append(v)
        # Sorted neighbor visits pin the float accumulation order, making
        # scores bit-identical regardless of graph insertion order.
        for w in sorted(graph.adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                sigma[w] = 0
                preds[w] = []
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)

    delta = {v: 0.0 for v in order}
    for w in reversed(order):
        for v in preds[w]:
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
        if w != source:
            scores[w] += delta[w]
