"""Research team mining: iterative leader extraction, core members, snowball.

The pipeline over a cleaned corpus:

1. build the full co-authorship network;
2. threshold it (publication volume, co-authoring frequency) into the
   leader-mining network;
3. repeatedly extract the top-betweenness node as a team leader and remove
   it, until the maximum score drops to <= 1;
4. per leader, core members = the leader's closed 2-clique neighborhood in
   the thresholded network;
5. non-core members = one snowball layer from {leader} + core in the full
   network re-thresholded at co-authoring frequency >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .centrality import betweenness
from .graph import CoauthorGraph, build_coauthor_graph, threshold_subgraph
from .ingest import Corpus, PublicationRecord

# Absolute slack on the "max betweenness <= 1" stopping rule; Brandes sums
# rationals, so a true 1.0 may land a few ulps off.
_STOP_EPS = 1e-9

PROVENANCE_LEADER = "leader"
PROVENANCE_TWO_FACTION = "two_faction"
PROVENANCE_SNOWBALL = "snowball"


@dataclass
class Team:
    """One identified team with per-member provenance."""

    leader: str
    core: set[str] = field(default_factory=set)
    non_core: set[str] = field(default_factory=set)
    provenance: dict[str, str] = field(default_factory=dict)
    leader_betweenness: float = 0.0

    def members(self) -> set[str]:
        return {self.leader} | self.core | self.non_core


def identify_leaders(graph: CoauthorGraph) -> list[tuple[str, float]]:
    """Extract leaders by iterated top-1 betweenness removal.

    Loop: compute betweenness; stop when the maximum is <= 1; otherwise
    remove the argmax (ties broken by lexicographically smallest id) and
    record it with the score it held at extraction time.
    """
    work = graph.copy()
    leaders: list[tuple[str, float]] = []
    while work.node_count() > 0:
        scores = betweenness(work)
        top = min(scores, key=lambda v: (-scores[v], v))
        if scores[top] <= 1.0 + _STOP_EPS:
            break
        leaders.append((top, scores[top]))
        work.remove_node(top)
    return leaders


def core_members(graph: CoauthorGraph, leader: str) -> set[str]:
    """Core members: the leader's neighbors in the thresholded network.

    Realizes the 2-clique seeded at the leader — every pair of returned
    members sits at geodesic distance <= 2 via the leader.  The leader
    itself is excluded.
    """
    if not graph.has_node(leader):
        raise ValueError(f"leader {leader!r} not in graph")
    return set(graph.neighbors(leader))


def snowball_expand(graph_freq: CoauthorGraph, seeds: set[str]) -> set[str]:
    """One BFS layer from the seeds along qualifying edges, minus the seeds.

    ``graph_freq`` is the full network thresholded at edge weight >= 2
    (no node threshold).  Seeds absent from it contribute no neighbors.
    """
    frontier: set[str] = set()
    for seed in seeds:
        if graph_freq.has_node(seed):
            frontier.update(graph_freq.neighbors(seed))
    return frontier - set(seeds)


def identify_teams(
    corpus: Corpus | list[PublicationRecord],
    min_pubs: int = 10,
    min_weight: int = 5,
    snowball_weight: int = 2,
) -> list[Team]:
    """Run the full team identification pipeline on a cleaned corpus.

    Members already claimed by an earlier-extracted team (leaders included)
    are not reassigned, so team memberships are pairwise disjoint.
    """
    full = build_coauthor_graph(corpus)
    leader_graph = threshold_subgraph(full, min_pubs, min_weight)
    snow_graph = threshold_subgraph(full, 0, snowball_weight)
    return identify_teams_from_graphs(leader_graph, snow_graph)


def identify_teams_from_graphs(
    leader_graph: CoauthorGraph, snow_graph: CoauthorGraph
) -> list[Team]:
    """Team identification given prebuilt leader-mining and snowball graphs."""
    leaders = identify_leaders(leader_graph)
    assigned = {leader for leader, _ in leaders}

    teams = []
    for leader, score in leaders:
        core = core_members(leader_graph, leader) - assigned
        assigned |= core
        non_core = snowball_expand(snow_graph, {leader} | core) - assigned
        assigned |= non_core
        provenance = {leader: PROVENANCE_LEADER}
        provenance.update({m: PROVENANCE_TWO_FACTION for m in core})
        provenance.update({m: PROVENANCE_SNOWBALL for m in non_core})
        teams.append(
            Team(
                leader=leader,
                core=core,
                non_core=non_core,
                provenance=provenance,
                leader_betweenness=score,
            )
        )
    return teams


def team_to_dict(team: Team) -> dict:
    """JSON-ready mapping with sorted member lists and provenance tags."""
    return {
        "leader": team.leader,
        "leader_betweenness": team.leader_betweenness,
        "core": sorted(team.core),
        "non_core": sorted(team.non_core),
        "provenance": dict(sorted(team.provenance.items())),
    }


def team_from_dict(obj: dict) -> Team:
    """Inverse of :func:`team_to_dict`."""
    return Team(
        leader=obj["leader"],
        core=set(obj.get("core", [])),
        non_core=set(obj.get("non_core", [])),
        provenance=dict(obj.get("provenance", {})),
        leader_betweenness=float(obj.get("leader_betweenness", 0.0)),
    )
