"""Three-part team portrait: profile stats, cooperation graph, topic cloud."""

from __future__ import annotations

import html
import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .ingest import Corpus, PublicationRecord
from .teams import (
    PROVENANCE_LEADER,
    PROVENANCE_SNOWBALL,
    PROVENANCE_TWO_FACTION,
    Team,
)
from .topics import ScoredTopic

ROLE_LEADER = "leader"
ROLE_CORE = "core"
ROLE_NON_CORE = "non_core"

_PROVENANCE_TO_ROLE = {
    PROVENANCE_LEADER: ROLE_LEADER,
    PROVENANCE_TWO_FACTION: ROLE_CORE,
    PROVENANCE_SNOWBALL: ROLE_NON_CORE,
}

RELATION_COAUTHOR = "coauthor"
RELATION_MENTORING = "mentoring"

_NODE_SHAPES = {ROLE_LEADER: "doublecircle", ROLE_CORE: "ellipse", ROLE_NON_CORE: "box"}
_EDGE_STYLES = {RELATION_COAUTHOR: "solid", RELATION_MENTORING: "dashed"}

# How leader-hosted projects are counted; echoed into portrait metadata
# because the underlying data carries no explicit "host" field.
LEADER_PROJECT_RULE = (
    "distinct project_id over records where the leader appears as an author"
)


@dataclass
class TeamProfile:
    """Headline statistics for the team introduction."""

    member_count: int = 0
    research_fields: list[str] = field(default_factory=list)
    leader_project_count: int = 0
    total_project_count: int = 0
    paper_count: int = 0
    citation_total: int = 0
    patent_count: int = 0
    conference_paper_count: int = 0
    journal_paper_count: int = 0
    monograph_count: int = 0


@dataclass
class CooperationNode:
    """One team member in the cooperation diagram."""

    author_id: str
    display_name: str
    role: str
    institution: str | None = None
    discipline: str | None = None


@dataclass
class CooperationEdge:
    """A coauthor or mentoring tie between two members."""

    a: str
    b: str
    weight: int
    relation: str


@dataclass
class CooperationGraphExport:
    """Member-restricted cooperation graph with relation-tagged edges."""

    nodes: list[CooperationNode] = field(default_factory=list)
    edges: list[CooperationEdge] = field(default_factory=list)


@dataclass
class TopicCloudItem:
    """One cloud term with its render weight in [0, 1]."""

    term: str
    score: float
    weight: float


@dataclass
class PortraitBundle:
    """Everything the report renderer needs, JSON round-trippable."""

    profile: TeamProfile
    cooperation: CooperationGraphExport
    cloud: list[TopicCloudItem]
    metadata: dict = field(default_factory=dict)


def _team_records(
    team: Team, records: list[PublicationRecord]
) -> list[PublicationRecord]:
    members = team.members()
    return [
        r for r in records if r.author_ids and members.intersection(r.author_ids)
    ]


def build_profile(
    team: Team,
    corpus: Corpus | list[PublicationRecord],
    research_fields: Sequence[str] = (),
) -> TeamProfile:
    """Count the team's output over records with at least one member author.

    ``research_fields`` is supplied by the topic extractor (top team topics).
    Missing citation counts are treated as 0; project counts deduplicate on
    project_id.
    """
    records = corpus.records if isinstance(corpus, Corpus) else corpus
    team_records = _team_records(team, records)

    kind_counts = Counter(r.kind for r in team_records)
    projects = {r.project_id for r in team_records if r.project_id}
    leader_projects = {
        r.project_id
        for r in team_records
        if r.project_id and r.author_ids and team.leader in r.author_ids
    }
    return TeamProfile(
        member_count=len(team.members()),
        research_fields=list(research_fields),
        leader_project_count=len(leader_projects),
        total_project_count=len(projects),
        paper_count=kind_counts["journal_paper"] + kind_counts["conference_paper"],
        citation_total=sum(r.citation_count or 0 for r in team_records),
        patent_count=kind_counts["patent"],
        conference_paper_count=kind_counts["conference_paper"],
        journal_paper_count=kind_counts["journal_paper"],
        monograph_count=kind_counts["monograph"],
    )


def _most_common(values: list[str]) -> str | None:
    if not values:
        return None
    counts = Counter(values)
    return min(counts, key=lambda v: (-counts[v], v))


def build_cooperation_graph(
    team: Team, corpus: Corpus | list[PublicationRecord]
) -> CooperationGraphExport:
    """Member-restricted cooperation graph with mentoring edges.

    Coauthor edges connect member pairs with weight = joint-record count;
    mentoring edges come from thesis records whose author and supervisor are
    both members.  Display names, institutions and disciplines are the most
    frequent spellings seen in the corpus (ties broken lexicographically).
    Nodes and edges are emitted in a deterministic order.
    """
    records = corpus.records if isinstance(corpus, Corpus) else corpus
    members = team.members()

    names: dict[str, list[str]] = {m: [] for m in members}
    institutions: dict[str, list[str]] = {m: [] for m in members}
    disciplines: dict[str, list[str]] = {m: [] for m in members}
    coauthor: Counter[tuple[str, str]] = Counter()
    mentoring: Counter[tuple[str, str]] = Counter()

    for record in records:
        if not record.author_ids:
            continue
        pairs = list(zip(record.author_ids, record.authors))
        if record.supervisor_id and record.supervisor:
            pairs.append((record.supervisor_id, record.supervisor))
        for author_id, ref in pairs:
            if author_id in members:
                names[author_id].append(ref.raw_name.strip())
                if ref.affiliation and ref.affiliation.strip():
                    institutions[author_id].append(ref.affiliation.strip())
                if record.discipline:
                    disciplines[author_id].append(record.discipline)

        member_authors = sorted({a for a in record.author_ids if a in members})
        for i, a in enumerate(member_authors):
            for b in member_authors[i + 1 :]:
                coauthor[(a, b)] += 1
        if (
            record.kind == "thesis"
            and record.supervisor_id
            and record.supervisor_id in members
        ):
            student = record.author_ids[0]
            if student in members and student != record.supervisor_id:
                mentoring[tuple(sorted((student, record.supervisor_id)))] += 1

    nodes = [
        CooperationNode(
            author_id=m,
            display_name=_most_common(names[m]) or m,
            role=_PROVENANCE_TO_ROLE.get(team.provenance.get(m, ""), ROLE_NON_CORE),
            institution=_most_common(institutions[m]),
            discipline=_most_common(disciplines[m]),
        )
        for m in sorted(members)
    ]
    edges = [
        CooperationEdge(a=a, b=b, weight=w, relation=RELATION_COAUTHOR)
        for (a, b), w in coauthor.items()
    ] + [
        CooperationEdge(a=a, b=b, weight=w, relation=RELATION_MENTORING)
        for (a, b), w in mentoring.items()
    ]
    edges.sort(key=lambda e: (e.a, e.b, e.relation))
    return CooperationGraphExport(nodes=nodes, edges=edges)


def build_topic_cloud(topics: Sequence[ScoredTopic], max_terms: int = 50) -> list[TopicCloudItem]:
    """Normalize the top fused scores into render weights in [0, 1].

    The max-score term gets weight 1; when every score is <= 0 (degenerate
    input) all weights collapse to 1.
    """
    if not topics:
        raise ValueError("cannot build a topic cloud from no topics")
    top = list(topics[:max_terms])
    s_max = max(t.fused for t in top)
    if s_max <= 0:
        return [TopicCloudItem(term=t.term, score=t.fused, weight=1.0) for t in top]
    return [
        TopicCloudItem(term=t.term, score=t.fused, weight=max(0.0, t.fused / s_max))
        for t in top
    ]


def bundle_to_dict(bundle: PortraitBundle) -> dict:
    """JSON-ready mapping of the whole bundle."""
    return {
        "profile": asdict(bundle.profile),
        "cooperation": {
            "nodes": [asdict(n) for n in bundle.cooperation.nodes],
            "edges": [asdict(e) for e in bundle.cooperation.edges],
        },
        "cloud": [asdict(item) for item in bundle.cloud],
        "metadata": bundle.metadata,
    }


def bundle_from_dict(obj: dict) -> PortraitBundle:
    """Inverse of :func:`bundle_to_dict`."""
    coop = obj.get("cooperation", {})
    return PortraitBundle(
        profile=TeamProfile(**obj["profile"]),
        cooperation=CooperationGraphExport(
            nodes=[CooperationNode(**n) for n in coop.get("nodes", [])],
            edges=[CooperationEdge(**e) for e in coop.get("edges", [])],
        ),
        cloud=[TopicCloudItem(**c) for c in obj.get("cloud", [])],
        metadata=dict(obj.get("metadata", {})),
    )


def _dot_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def cooperation_to_dot(coop: CooperationGraphExport) -> str:
    """Render the cooperation graph in DOT syntax.

    Node shapes encode roles; mentoring edges are dashed while coauthor
    edges stay solid, so the two relations are visually distinct.
    """
    lines = ["graph cooperation {"]
    for node in coop.nodes:
        attrs = [
            f"label={_dot_quote(node.display_name)}",
            f"shape={_NODE_SHAPES[node.role]}",
            f"role={_dot_quote(node.role)}",
        ]
        if node.institution:
            attrs.append(f"institution={_dot_quote(node.institution)}")
        if node.discipline:
            attrs.append(f"discipline={_dot_quote(node.discipline)}")
        lines.append(f"  {_dot_quote(node.author_id)} [{', '.join(attrs)}];")
    for edge in coop.edges:
        attrs = [
            f"weight={edge.weight}",
            f"style={_EDGE_STYLES[edge.relation]}",
            f"relation={_dot_quote(edge.relation)}",
        ]
        lines.append(
            f"  {_dot_quote(edge.a)} -- {_dot_quote(edge.b)} [{', '.join(attrs)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def cloud_to_svg(
    cloud: Sequence[TopicCloudItem],
    font_min_px: int = 12,
    font_max_px: int = 48,
    width: int = 800,
) -> str:
    """Greedy row-packed word cloud as a standalone SVG.

    Font size is linear in weight between the configured bounds.  Terms are
    laid out left to right in rows in input order; a term that would overflow
    the canvas width starts a new row.  No randomness, so output bytes are
    stable for identical input.
    """
    if font_min_px < 1 or font_max_px < font_min_px:
        raise ValueError("font range must satisfy 1 <= font_min_px <= font_max_px")
    pad = 8
    x = float(pad)
    y = float(pad)
    row_height = 0.0
    spans = []
    for item in cloud:
        size = font_min_px + item.weight * (font_max_px - font_min_px)
        size = round(size, 1)
        est_width = 0.62 * size * len(item.term) + pad
        if x > pad and x + est_width > width:
            x = float(pad)
            y += row_height + pad
            row_height = 0.0
        baseline = y + size
        spans.append((item.term, x, baseline, size))
        x += est_width + pad
        row_height = max(row_height, size)
    height = int(y + row_height + 2 * pad)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for term, tx, ty, size in spans:
        parts.append(
            f'<text x="{tx:.1f}" y="{ty:.1f}" font-size="{size:.1f}" '
            f'font-family="sans-serif">{html.escape(term)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _profile_rows(profile: TeamProfile) -> list[tuple[str, str]]:
    return [
        ("Members", str(profile.member_count)),
        ("Research fields", ", ".join(profile.research_fields) or "-"),
        ("Projects hosted by leader", str(profile.leader_project_count)),
        ("Team projects", str(profile.total_project_count)),
        ("Papers", str(profile.paper_count)),
        ("Citations", str(profile.citation_total)),
        ("Patents", str(profile.patent_count)),
        ("Conference papers", str(profile.conference_paper_count)),
        ("Journal papers", str(profile.journal_paper_count)),
        ("Monographs", str(profile.monograph_count)),
    ]


def report_html(bundle: PortraitBundle, svg: str, dot: str) -> str:
    """Static report page embedding profile table, cloud SVG and DOT source."""
    rows = "\n".join(
        f"      <tr><th>{html.escape(k)}</th><td>{html.escape(v)}</td></tr>"
        for k, v in _profile_rows(bundle.profile)
    )
    member_rows = "\n".join(
        f"      <tr><td>{html.escape(n.display_name)}</td>"
        f"<td>{html.escape(n.role)}</td>"
        f"<td>{html.escape(n.institution or '-')}</td>"
        f"<td>{html.escape(n.discipline or '-')}</td></tr>"
        for n in bundle.cooperation.nodes
    )
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
  <meta charset="utf-8"/>
  <title>Team portrait</title>
  <style>
    body {{ font-family: sans-serif; margin: 2em; }}
    table {{ border-collapse: collapse; }}
    th, td {{ border: 1px solid #999; padding: 4px 10px; text-align: left; }}
    section {{ margin-bottom: 2em; }}
  </style>
</head>
<body>
  <h1>Team portrait</h1>
  <section>
    <h2>Profile</h2>
    <table>
{rows}
    </table>
  </section>
  <section>
    <h2>Members</h2>
    <table>
      <tr><th>Name</th><th>Role</th><th>Institution</th><th>Discipline</th></tr>
{member_rows}
    </table>
  </section>
  <section>
    <h2>Topic cloud</h2>
{svg}
  </section>
  <section>
    <h2>Cooperation graph (DOT)</h2>
    <pre>{html.escape(dot)}</pre>
  </section>
</body>
</html>
"""


def render_report(
    profile: TeamProfile,
    coop_graph: CooperationGraphExport,
    cloud: Sequence[TopicCloudItem],
    out_dir,
    font_min_px: int = 12,
    font_max_px: int = 48,
    svg_width: int = 800,
    metadata: dict | None = None,
) -> dict[str, Path]:
    """Write portrait.json, cooperation.dot, cloud.svg and report.html.

    Output is byte-deterministic for identical inputs and configuration.
    I/O failures carry the offending path.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = {"leader_project_rule": LEADER_PROJECT_RULE, "font_px": [font_min_px, font_max_px]}
    meta.update(metadata or {})
    bundle = PortraitBundle(
        profile=profile, cooperation=coop_graph, cloud=list(cloud), metadata=meta
    )

    dot = cooperation_to_dot(coop_graph)
    svg = cloud_to_svg(cloud, font_min_px=font_min_px, font_max_px=font_max_px, width=svg_width)
    files = {
        "portrait.json": json.dumps(
            bundle_to_dict(bundle), ensure_ascii=False, sort_keys=True, indent=2
        )
        + "\n",
        "cooperation.dot": dot,
        "cloud.svg": svg,
        "report.html": report_html(bundle, svg, dot),
    }
    written = {}
    for name, content in files.items():
        path = out / name
        try:
            path.write_text(content, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise OSError(f"failed writing {path}: {exc}") from exc
        written[name] = path
    return written
