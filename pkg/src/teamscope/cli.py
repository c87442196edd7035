"""Pipeline driver: one subcommand per stage plus an end-to-end runner.

Stage boundaries are files under the output directory so every stage can be
rerun and inspected independently:

    ingest    raw records            -> corpus.jsonl, drop_report.json
    identify  corpus.jsonl           -> coauthor_graph.json, teams.json
    topics    corpus.jsonl, teams    -> topics.json
    evaluate  topics.json, corpus    -> evaluation.json
    portrait  corpus, teams, topics  -> portraits/team_NNN/{portrait.json,
                                        cooperation.dot, cloud.svg, report.html}

Exit codes: 0 success, 2 missing input file/artifact, 3 validation failure.
Failures emit a machine-readable JSON object on stderr.  Runs are free of
randomness; identical inputs and config produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, PipelineConfig, config_from_dict, load_config
from .evaluation import DEFAULT_N_VALUES, evaluate_corpus
from .graph import build_coauthor_graph, graph_to_dict, threshold_subgraph
from .ingest import (
    AliasMapError,
    ParseError,
    canonicalize_authors,
    clean_records,
    corpus_from_jsonl,
    corpus_to_jsonl,
    parse_records,
)
from .portrait import (
    build_cooperation_graph,
    build_profile,
    build_topic_cloud,
    render_report,
)
from .teams import identify_teams_from_graphs, team_from_dict, team_to_dict
from .topics import (
    TextRankConfig,
    aggregate_fused_topics,
    build_corpus_stats,
    fuse,
    load_stopwords,
    rank_terms,
    record_document,
    textrank_scores,
    tfidf_scores,
    topic_from_dict,
    topic_to_dict,
)

EXIT_OK = 0
EXIT_MISSING_INPUT = 2
EXIT_VALIDATION = 3

STAGES = ("ingest", "identify", "topics", "evaluate", "portrait")


class CliError(Exception):
    """Stage failure carrying the exit code and an optional path."""

    def __init__(self, code: int, message: str, path: str | None = None):
        super().__init__(message)
        self.code = code
        self.path = path


def _require_file(path: Path, hint: str) -> Path:
    if not path.is_file():
        raise CliError(EXIT_MISSING_INPUT, f"missing {hint}: {path}", str(path))
    return path


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
        newline="\n",
    )


def _read_json(path: Path, hint: str):
    _require_file(path, hint)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_VALIDATION, f"invalid JSON in {path}: {exc}", str(path)) from exc


def _load_corpus(out_dir: Path):
    path = _require_file(out_dir / "corpus.jsonl", "cleaned corpus artifact")
    try:
        return corpus_from_jsonl(path.read_text(encoding="utf-8"))
    except ParseError as exc:
        raise CliError(EXIT_VALIDATION, f"corrupt corpus artifact {path}: {exc}") from exc


def _stopwords(config: PipelineConfig):
    if config.stopword_path is None:
        return None
    path = _require_file(Path(config.stopword_path), "stopword file")
    return load_stopwords(path)


def run_ingest(config: PipelineConfig) -> None:
    if not config.records_path:
        raise CliError(EXIT_VALIDATION, "no input records path configured (input.records)")
    records_path = _require_file(Path(config.records_path), "input records file")

    alias_map = {}
    if config.alias_map_path:
        alias_path = _require_file(Path(config.alias_map_path), "alias map file")
        loaded = _read_json(alias_path, "alias map file")
        if not isinstance(loaded, dict):
            raise CliError(EXIT_VALIDATION, f"alias map {alias_path} must be a JSON object")
        alias_map = loaded

    try:
        records = parse_records(
            records_path.read_bytes(),
            format=config.input_format,
            author_delimiter=config.csv_author_delimiter,
        )
        kept, dropped = clean_records(records)
        kept = canonicalize_authors(kept, alias_map=alias_map)
    except (ParseError, AliasMapError, ValueError) as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from exc

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "corpus.jsonl").write_text(
        corpus_to_jsonl(kept), encoding="utf-8", newline="\n"
    )
    _write_json(
        out_dir / "drop_report.json",
        [{"record_id": d.record.id, "reason": d.reason} for d in dropped],
    )


def run_identify(config: PipelineConfig) -> None:
    out_dir = Path(config.output_dir)
    records = _load_corpus(out_dir)

    full = build_coauthor_graph(records)
    _write_json(out_dir / "coauthor_graph.json", graph_to_dict(full))

    leader_graph = threshold_subgraph(full, config.min_pubs, config.min_edge_weight)
    if leader_graph.node_count() == 0:
        raise CliError(EXIT_VALIDATION, "empty graph after thresholding")
    snow_graph = threshold_subgraph(full, 0, config.snowball_weight)
    teams = identify_teams_from_graphs(leader_graph, snow_graph)
    _write_json(out_dir / "teams.json", {"teams": [team_to_dict(t) for t in teams]})


def run_topics(config: PipelineConfig) -> None:
    out_dir = Path(config.output_dir)
    records = _load_corpus(out_dir)
    teams_obj = _read_json(out_dir / "teams.json", "teams artifact")
    teams = [team_from_dict(t) for t in teams_obj.get("teams", [])]
    stopwords = _stopwords(config)
    textrank_config = TextRankConfig(
        damping=config.damping,
        window=config.window,
        epsilon=config.epsilon,
        max_iterations=config.max_iterations,
    )
    k = config.effective_fusion_k()

    docs = []
    doc_records = {}
    for record in records:
        doc = record_document(record, stopwords=stopwords)
        if doc is not None:
            docs.append(doc)
            doc_records[doc.id] = record
    stats = build_corpus_stats(docs)

    documents_out = []
    fused_by_doc = {}
    for doc in docs:
        ranked_tfidf = rank_terms(tfidf_scores(doc, stats))
        ranked_tr = rank_terms(textrank_scores(doc, textrank_config))
        fused = fuse(ranked_tfidf, ranked_tr, k)
        fused_by_doc[doc.id] = fused
        documents_out.append(
            {
                "id": doc.id,
                "tfidf": [[t, s] for t, s in ranked_tfidf[:k]],
                "textrank": [[t, s] for t, s in ranked_tr[:k]],
                "fused": [[t.term, t.fused] for t in fused],
            }
        )

    teams_out = []
    for team in teams:
        members = team.members()
        team_doc_topics = [
            fused_by_doc[doc.id]
            for doc in docs
            if doc_records[doc.id].author_ids
            and members.intersection(doc_records[doc.id].author_ids)
        ]
        if not team_doc_topics:
            raise CliError(
                EXIT_VALIDATION,
                f"team of {team.leader!r} has no text-bearing records",
            )
        topics = aggregate_fused_topics(team_doc_topics, config.topic_n)
        teams_out.append(
            {"leader": team.leader, "topics": [topic_to_dict(t) for t in topics]}
        )

    _write_json(
        out_dir / "topics.json", {"teams": teams_out, "documents": documents_out}
    )


def run_evaluate(config: PipelineConfig) -> None:
    out_dir = Path(config.output_dir)
    topics_obj = _read_json(out_dir / "topics.json", "topics artifact")
    records = _load_corpus(out_dir)

    gold_by_id = {
        r.id: r.gold_keywords for r in records if r.gold_keywords
    }
    methods = {"tfidf": [], "textrank": [], "fused": []}
    doc_count = 0
    for doc in topics_obj.get("documents", []):
        gold = gold_by_id.get(doc["id"])
        if not gold:
            continue
        doc_count += 1
        for method in methods:
            extracted = [term for term, _ in doc[method]]
            methods[method].append((extracted, gold))
    if doc_count == 0:
        raise CliError(EXIT_VALIDATION, "no documents with gold keywords to evaluate")

    table = {}
    for method, pairs in methods.items():
        rows = evaluate_corpus(pairs, DEFAULT_N_VALUES)
        table[method] = [
            {"n": row.n, "precision": row.precision, "recall": row.recall, "f1": row.f1}
            for row in rows
        ]
    _write_json(
        out_dir / "evaluation.json",
        {"doc_count": doc_count, "n_values": list(DEFAULT_N_VALUES), "methods": table},
    )


def run_portrait(config: PipelineConfig) -> None:
    out_dir = Path(config.output_dir)
    records = _load_corpus(out_dir)
    teams_obj = _read_json(out_dir / "teams.json", "teams artifact")
    topics_obj = _read_json(out_dir / "topics.json", "topics artifact")

    teams = [team_from_dict(t) for t in teams_obj.get("teams", [])]
    topics_by_leader = {
        entry["leader"]: [topic_from_dict(t) for t in entry["topics"]]
        for entry in topics_obj.get("teams", [])
    }
    for index, team in enumerate(teams, start=1):
        topics = topics_by_leader.get(team.leader)
        if not topics:
            raise CliError(
                EXIT_VALIDATION, f"no topics for team of {team.leader!r} in topics.json"
            )
        profile = build_profile(
            team, records, research_fields=[t.term for t in topics[:5]]
        )
        coop = build_cooperation_graph(team, records)
        cloud = build_topic_cloud(topics, max_terms=config.max_cloud_terms)
        render_report(
            profile,
            coop,
            cloud,
            out_dir / "portraits" / f"team_{index:03d}",
            font_min_px=config.font_min_px,
            font_max_px=config.font_max_px,
            metadata={"team_index": index, "leader": team.leader},
        )


_RUNNERS = {
    "ingest": run_ingest,
    "identify": run_identify,
    "topics": run_topics,
    "evaluate": run_evaluate,
    "portrait": run_portrait,
}


def run_pipeline(config: PipelineConfig) -> None:
    for stage in STAGES:
        _RUNNERS[stage](config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teamscope",
        description="Mine research teams from bibliographic records and render portraits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", metavar="FILE", help="TOML or JSON config file")
    parser.add_argument(
        "--config-dump",
        action="store_true",
        help="print the effective configuration as JSON and exit",
    )

    flags = parser.add_argument_group("config overrides")
    flags.add_argument("--records", metavar="FILE", help="raw records input file")
    flags.add_argument("--format", choices=["json_lines", "csv"], dest="input_format")
    flags.add_argument("--csv-author-delimiter", metavar="CHAR")
    flags.add_argument("--min-pubs", type=int, metavar="N")
    flags.add_argument("--min-edge-weight", type=int, metavar="N")
    flags.add_argument("--snowball-weight", type=int, metavar="N")
    flags.add_argument("--damping", type=float, metavar="D")
    flags.add_argument("--window", type=int, metavar="N")
    flags.add_argument("--epsilon", type=float, metavar="E")
    flags.add_argument("--max-iterations", type=int, metavar="N")
    flags.add_argument("--fusion-k", type=int, metavar="K")
    flags.add_argument("--topic-n", type=int, metavar="N")
    flags.add_argument("--stopwords", metavar="FILE", dest="stopword_path")
    flags.add_argument("--alias-map", metavar="FILE", dest="alias_map_path")
    flags.add_argument("--output-dir", "-o", metavar="DIR")
    flags.add_argument("--max-cloud-terms", type=int, metavar="N")
    flags.add_argument("--font-min-px", type=int, metavar="PX")
    flags.add_argument("--font-max-px", type=int, metavar="PX")

    subparsers = parser.add_subparsers(dest="command")
    for name, help_text in (
        ("ingest", "parse, clean and canonicalize raw records"),
        ("identify", "build the co-authorship network and identify teams"),
        ("topics", "extract fused research topics per team and document"),
        ("evaluate", "score extracted topics against gold keywords"),
        ("portrait", "render per-team portrait reports"),
        ("pipeline", "run all stages in order"),
    ):
        subparsers.add_parser(name, help=help_text)
    return parser


_FLAG_TO_FIELD = {
    "records": "records_path",
    "input_format": "input_format",
    "csv_author_delimiter": "csv_author_delimiter",
    "min_pubs": "min_pubs",
    "min_edge_weight": "min_edge_weight",
    "snowball_weight": "snowball_weight",
    "damping": "damping",
    "window": "window",
    "epsilon": "epsilon",
    "max_iterations": "max_iterations",
    "fusion_k": "fusion_k",
    "topic_n": "topic_n",
    "stopword_path": "stopword_path",
    "alias_map_path": "alias_map_path",
    "output_dir": "output_dir",
    "max_cloud_terms": "max_cloud_terms",
    "font_min_px": "font_min_px",
    "font_max_px": "font_max_px",
}


def _effective_config(args: argparse.Namespace) -> PipelineConfig:
    config = load_config(args.config) if args.config else config_from_dict({})
    for flag, field_name in _FLAG_TO_FIELD.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(config, field_name, value)
    config.validate()
    return config


def _fail(code: int, message: str, path: str | None = None) -> int:
    payload = {"error": {"code": code, "message": message}}
    if path:
        payload["error"]["path"] = path
    print(json.dumps(payload, ensure_ascii=False, sort_keys=True), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = _effective_config(args)
    except ConfigError as exc:
        return _fail(EXIT_VALIDATION, str(exc))

    if args.config_dump:
        print(json.dumps(config.to_dict(), ensure_ascii=False, sort_keys=True, indent=2))
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_VALIDATION

    runner = _RUNNERS.get(args.command, run_pipeline)
    try:
        runner(config)
    except CliError as exc:
        return _fail(exc.code, str(exc), exc.path)
    except ConfigError as exc:
        return _fail(EXIT_VALIDATION, str(exc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
