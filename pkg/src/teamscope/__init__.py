"""teamscope: mine research teams from co-authorship networks, extract their
topics by fusing TF-IDF with TextRank, and render team portrait reports."""

from .centrality import betweenness
from .evaluation import EvalResult, MacroResult, evaluate_at_n, evaluate_corpus
from .graph import (
    CoauthorGraph,
    build_coauthor_graph,
    graph_from_dict,
    graph_to_dict,
    threshold_subgraph,
)
from .ingest import (
    AuthorRef,
    Corpus,
    PublicationRecord,
    canonicalize_authors,
    clean_records,
    parse_records,
)
from .portrait import (
    CooperationGraphExport,
    PortraitBundle,
    TeamProfile,
    TopicCloudItem,
    build_cooperation_graph,
    build_profile,
    build_topic_cloud,
    render_report,
)
from .teams import (
    Team,
    core_members,
    identify_leaders,
    identify_teams,
    snowball_expand,
)
from .topics import (
    Document,
    ScoredTopic,
    TextRankConfig,
    Token,
    build_corpus_stats,
    extract_team_topics,
    fuse,
    preprocess,
    textrank_scores,
    tfidf_scores,
)

__version__ = "0.1.0"

__all__ = [
    "AuthorRef",
    "CoauthorGraph",
    "CooperationGraphExport",
    "Corpus",
    "Document",
    "EvalResult",
    "MacroResult",
    "PortraitBundle",
    "PublicationRecord",
    "ScoredTopic",
    "Team",
    "TeamProfile",
    "TextRankConfig",
    "Token",
    "TopicCloudItem",
    "betweenness",
    "build_coauthor_graph",
    "build_cooperation_graph",
    "build_corpus_stats",
    "build_profile",
    "build_topic_cloud",
    "canonicalize_authors",
    "clean_records",
    "core_members",
    "evaluate_at_n",
    "evaluate_corpus",
    "extract_team_topics",
    "fuse",
    "graph_from_dict",
    "graph_to_dict",
    "identify_leaders",
    "identify_teams",
    "parse_records",
    "preprocess",
    "render_report",
    "snowball_expand",
    "textrank_scores",
    "tfidf_scores",
    "threshold_subgraph",
]
