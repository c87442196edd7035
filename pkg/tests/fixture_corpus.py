"""Hand-built 25-node synthetic corpus with two planted research teams.

The corpus is engineered so that the default thresholds (publication volume
>= 10, co-authoring frequency >= 5, snowball frequency >= 2) carve out an
exactly known team structure:

Team A (extracted first, leader betweenness 6.0 = C(4,2) star pairs)
    leader-a    star center; 5 joint records with each core member
                (core-a1's five = 4 journal papers + 1 supervised thesis)
    core-a1..a4 exactly 10 records each, so they survive the node threshold
    ring-a1/a2  tied to core-a1 with frequency 2 -> snowball frontier
    outer-a1/a2 tied to the rings (freq 2 and 3) -> distance 2, excluded
    weak-a1     tied to core-a2 with frequency 1 -> below snowball cutoff
    pad-1..4    frequency-1 coauthors that pad core pub counts to 10

Team B (extracted second, leader betweenness 3.0 = C(3,2))
    leader-b    star center, 5 joint records per core member,
                plus a frequency-2 tie to ring-b2 (frontier via the leader)
    core-b1..b3 exactly 10 records each
    ring-b1     tied to core-b1 with frequency 2 -> frontier
    outer-b1    behind ring-b1, distance 2, excluded
    pad-5..8    frequency-1 pub-count padding

After extracting both leaders every remaining betweenness score is 0, so
the iteration stops exactly at the "max score <= 1" rule.

Extra records exercise cleaning: one zero-author patent and one
single-author journal paper (both dropped), and one single-author monograph
by leader-a (kept; monographs are exempt from the single-author rule).

Six records carry gold keywords so the evaluation stage has input.
"""

import json

# Sorted node ids expected in the cleaned co-authorship network.
EXPECTED_NODES = sorted(
    ["leader-a", "core-a1", "core-a2", "core-a3", "core-a4",
     "ring-a1", "ring-a2", "outer-a1", "outer-a2", "weak-a1",
     "pad-1", "pad-2", "pad-3", "pad-4",
     "leader-b", "core-b1", "core-b2", "core-b3",
     "ring-b1", "ring-b2", "outer-b1",
     "pad-5", "pad-6", "pad-7", "pad-8"]
)

EXPECTED_LEADERS = [("leader-a", 6.0), ("leader-b", 3.0)]
EXPECTED_CORES = {
    "leader-a": {"core-a1", "core-a2", "core-a3", "core-a4"},
    "leader-b": {"core-b1", "core-b2", "core-b3"},
}
EXPECTED_FRONTIERS = {
    "leader-a": {"ring-a1", "ring-a2"},
    "leader-b": {"ring-b1", "ring-b2"},
}
EXPECTED_DROPPED = {"drop-noauthor": "no-author", "drop-single": "single-author"}
THESIS_PAIR = ("core-a1", "leader-a")  # student, supervisor

_AFFILIATIONS = {"a": "Institute Alpha", "b": "Institute Beta"}
_DISCIPLINES = {"a": "network science", "b": "computational biology"}

_TITLES = {
    "a": [
        "Betweenness centrality ranking in cooperation networks",
        "Community detection for research collaboration graphs",
        "Mining coauthor networks with centrality measures",
        "Snowball sampling of collaboration communities",
        "Weighted cooperation graphs and team structure",
    ],
    "b": [
        "Protein folding dynamics under molecular simulation",
        "Structure prediction for folding proteins",
        "Molecular dynamics of protein structure formation",
        "Simulation methods for folding pathways",
        "Coarse models of protein structure dynamics",
    ],
}

_ABSTRACTS = {
    "a": (
        "We study cooperation networks of researchers and rank nodes by "
        "betweenness centrality. Centrality ranking exposes community "
        "structure in collaboration graphs."
    ),
    "b": (
        "Molecular dynamics simulation tracks protein folding pathways. "
        "Folding structure emerges from simulation of molecular forces."
    ),
}

# (student raw name, supervisor raw name) for the one thesis record.
_THESIS_TITLE = "Centrality ranking methods for cooperation network mining"

# Joint-record multiplicities realizing the planted edge weights.
_TEAM_A_EDGES = [
    ("Leader-A", "Core-A1", 4),  # +1 thesis below -> weight 5
    ("Leader-A", "Core-A2", 5),
    ("Leader-A", "Core-A3", 5),
    ("Leader-A", "Core-A4", 5),
    ("Core-A1", "Ring-A1", 2),
    ("Core-A1", "Ring-A2", 2),
    ("Core-A1", "Pad-1", 1),
    ("Core-A2", "Weak-A1", 1),
    ("Core-A2", "Pad-1", 1),
    ("Core-A2", "Pad-2", 1),
    ("Core-A2", "Pad-3", 1),
    ("Core-A2", "Pad-4", 1),
    ("Core-A3", "Core-A4", 1),
    ("Core-A3", "Pad-1", 1),
    ("Core-A3", "Pad-2", 1),
    ("Core-A3", "Pad-3", 1),
    ("Core-A3", "Pad-4", 1),
    ("Core-A4", "Pad-1", 1),
    ("Core-A4", "Pad-2", 1),
    ("Core-A4", "Pad-3", 1),
    ("Core-A4", "Pad-4", 1),
    ("Ring-A1", "Outer-A1", 2),
    ("Ring-A2", "Outer-A2", 3),
]

_TEAM_B_EDGES = [
    ("Leader-B", "Core-B1", 5),
    ("Leader-B", "Core-B2", 5),
    ("Leader-B", "Core-B3", 5),
    ("Leader-B", "Ring-B2", 2),
    ("Core-B1", "Ring-B1", 2),
    ("Core-B1", "Pad-5", 1),
    ("Core-B1", "Pad-6", 1),
    ("Core-B1", "Pad-7", 1),
    ("Core-B2", "Core-B3", 1),
    ("Core-B2", "Pad-5", 1),
    ("Core-B2", "Pad-6", 1),
    ("Core-B2", "Pad-7", 1),
    ("Core-B2", "Pad-8", 1),
    ("Core-B3", "Pad-5", 1),
    ("Core-B3", "Pad-6", 1),
    ("Core-B3", "Pad-7", 1),
    ("Core-B3", "Pad-8", 1),
    ("Ring-B1", "Outer-B1", 2),
]


def fixture_records():
    """All raw records (pre-ingest JSON mappings) in a deterministic order."""
    records = []
    counter = {"n": 0}

    def next_id():
        counter["n"] += 1
        return f"r{counter['n']:03d}"

    def author(name, team):
        return {"raw_name": name, "affiliation": _AFFILIATIONS[team]}

    def joint(a, b, count, team):
        titles = _TITLES[team]
        for i in range(count):
            record = {
                "id": next_id(),
                "kind": "journal_paper" if (counter["n"] + i) % 7 else "conference_paper",
                "title": titles[(counter["n"] + i) % len(titles)],
                "authors": [author(a, team), author(b, team)],
                "discipline": _DISCIPLINES[team],
            }
            if i == 0 and len(titles) > 2:
                record["abstract"] = _ABSTRACTS[team]
            records.append(record)

    for a, b, count in _TEAM_A_EDGES:
        joint(a, b, count, "a")
    # Thesis: completes the Leader-A/Core-A1 edge to weight 5 and plants the
    # mentoring relation for the portrait.
    records.append(
        {
            "id": next_id(),
            "kind": "thesis",
            "title": _THESIS_TITLE,
            "authors": [author("Core-A1", "a")],
            "supervisor": author("Leader-A", "a"),
            "discipline": _DISCIPLINES["a"],
        }
    )
    for a, b, count in _TEAM_B_EDGES:
        joint(a, b, count, "b")

    # Kept single-author monograph (exempt from the single-author drop).
    records.append(
        {
            "id": next_id(),
            "kind": "monograph",
            "title": "Cooperation network analysis: a monograph",
            "authors": [author("Leader-A", "a")],
            "discipline": _DISCIPLINES["a"],
        }
    )
    # Records that cleaning must drop.
    records.append(
        {"id": "drop-noauthor", "kind": "patent", "title": "Unattributed patent", "authors": []}
    )
    records.append(
        {
            "id": "drop-single",
            "kind": "journal_paper",
            "title": "Single author paper",
            "authors": [author("Pad-1", "a")],
        }
    )

    _decorate(records)
    return records


def _decorate(records):
    """Attach kinds, citations, projects and gold keywords to fixed slots."""
    by_id = {r["id"]: r for r in records}

    # Two patents inside team A's record set (profile patent_count == 2).
    by_id["r001"]["kind"] = "patent"
    by_id["r006"]["kind"] = "patent"

    # Citations: only these two carry counts (team A citation_total == 10).
    by_id["r002"]["citation_count"] = 3
    by_id["r003"]["citation_count"] = 7

    # Projects: leader-a hosts P-ALPHA (two records, deduplicated); P-GAMMA
    # belongs to a core-a2 record without the leader.
    by_id["r004"]["project_id"] = "P-ALPHA"
    by_id["r005"]["project_id"] = "P-ALPHA"
    by_id["r027"]["project_id"] = "P-GAMMA"

    # Gold keywords for the evaluation stage: the first record whose title
    # contains the needle gets gold terms drawn from that same title.
    gold_plan = [
        ("centrality ranking", ["centrality", "cooperation", "networks"]),
        ("community detection", ["community", "collaboration", "graphs"]),
        ("snowball sampling", ["snowball", "sampling", "communities"]),
        ("protein folding dynamics", ["protein", "folding", "simulation"]),
        ("structure prediction", ["structure", "prediction", "proteins"]),
        ("molecular dynamics of protein", ["molecular", "dynamics", "structure"]),
    ]
    for needle, gold in gold_plan:
        for record in records:
            if (
                record["kind"] != "thesis"
                and record["authors"]
                and "gold_keywords" not in record
                and needle in record["title"].casefold()
            ):
                record["gold_keywords"] = gold
                break


def fixture_jsonl() -> str:
    """The fixture as JSON-lines input for the ingest stage."""
    return "".join(
        json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n" for r in fixture_records()
    )


def cleaned_fixture_corpus():
    """Parsed, cleaned and canonicalized fixture records."""
    from teamscope.ingest import canonicalize_authors, clean_records, parse_records

    records = parse_records(fixture_jsonl(), format="json_lines")
    kept, _ = clean_records(records)
    return canonicalize_authors(kept)
