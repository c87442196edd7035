"""Topic extraction: TF-IDF and TextRank scoring fused by rank position."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ingest import Corpus, PublicationRecord
from .teams import Team

# Parts of speech retained when tags are present on input tokens.
RETAINED_POS = frozenset({"noun", "verb", "adjective", "gerund", "adverb"})
KNOWN_POS = RETAINED_POS | {"other"}

# Minimal English stopword list for the default tokenizer; callers with
# tagged input or another language supply their own file.
DEFAULT_STOPWORDS = frozenset(
    """
    a about above after again all also an and any are as at be because been
    before being below between both but by can could did do does doing down
    during each few for from further had has have having he her here hers him
    his how i if in into is it its just me more most my no nor not of off on
    once only or other our out over own same she should so some such than that
    the their them then there these they this those through to too under until
    up very was we were what when where which while who whom why will with you
    your
    """.split()
)

_TOKEN_RE = re.compile(r"\w+(?:-\w+)*")


class EmptyDocumentError(ValueError):
    """Document has no tokens left after filtering."""


@dataclass(frozen=True)
class Token:
    """One retained word with its position in the document."""

    surface: str
    position: int
    pos: str | None = None


@dataclass
class Document:
    """Preprocessed token sequence for one text."""

    id: str
    tokens: list[Token]

    def __post_init__(self) -> None:
        positions = [t.position for t in self.tokens]
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ValueError(f"document {self.id!r}: positions must strictly increase")

    def terms(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass
class TextRankConfig:
    """Damped co-occurrence random-walk parameters."""

    damping: float = 0.85
    window: int = 4
    max_iterations: int = 100
    epsilon: float = 1e-6

    def __post_init__(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must be in (0, 1)")
        if self.window < 1:
            raise ValueError("window must be a positive integer")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be > 0")


@dataclass
class CorpusStats:
    """Document frequencies over the reference corpus."""

    total_docs: int
    doc_freq: dict[str, int] = field(default_factory=dict)


@dataclass
class ScoredTopic:
    """A term with its component scores, top-K ranks and fused score.

    A rank is ``None`` when the term fell outside that component's top-K;
    the absent component then contributes 0 to the fused score.
    """

    term: str
    tfidf: float = 0.0
    tr: float = 0.0
    rank_tfidf: int | None = None
    rank_tr: int | None = None
    fused: float = 0.0


def tokenize(text: str) -> list[str]:
    """Default segmentation: case-fold, split on whitespace/punctuation."""
    return _TOKEN_RE.findall(text.casefold())


def preprocess(
    doc_id: str,
    source: str | Iterable,
    stopwords: frozenset[str] | set[str] | None = None,
) -> Document:
    """Build a scoring-ready document from raw text or tagged tokens.

    Raw text goes through the default tokenizer.  Token input (``Token``
    objects or ``{surface, pos?}`` mappings) passes through unchanged except
    for case-folding.  Stopwords are removed; when a token carries a POS tag,
    only nouns, verbs, adjectives, gerunds and adverbs are retained.
    Positions are reassigned consecutively from 0.

    Raises :class:`EmptyDocumentError` if nothing survives filtering.
    """
    if stopwords is None:
        stopwords = DEFAULT_STOPWORDS

    if isinstance(source, str):
        pairs: list[tuple[str, str | None]] = [(s, None) for s in tokenize(source)]
    else:
        pairs = []
        for item in source:
            if isinstance(item, Token):
                surface, pos = item.surface, item.pos
            elif isinstance(item, dict):
                surface, pos = item["surface"], item.get("pos")
            else:
                surface, pos = str(item), None
            if pos is not None and pos not in KNOWN_POS:
                raise ValueError(f"unknown POS tag {pos!r} on {surface!r}")
            pairs.append((surface.casefold(), pos))

    tokens = []
    for surface, pos in pairs:
        if not surface or surface in stopwords:
            continue
        if pos is not None and pos not in RETAINED_POS:
            continue
        tokens.append(Token(surface=surface, position=len(tokens), pos=pos))

    if not tokens:
        raise EmptyDocumentError(f"empty document {doc_id!r}")
    return Document(id=doc_id, tokens=tokens)


def build_corpus_stats(docs: Iterable[Document]) -> CorpusStats:
    """Count, per term, the number of documents containing it."""
    doc_freq: Counter[str] = Counter()
    total = 0
    for doc in docs:
        total += 1
        doc_freq.update(set(doc.terms()))
    return CorpusStats(total_docs=total, doc_freq=dict(doc_freq))


def tfidf_scores(doc: Document, stats: CorpusStats) -> dict[str, float]:
    """Per-term tf-idf: (count/|d|) * ln(D/(df+1)).

    Natural log; with df = D-1 the idf is exactly 0, and a term present in
    every document scores negative.  One entry per distinct term.
    """
    if stats.total_docs < 1:
        raise ValueError("corpus stats cover no documents")
    terms = doc.terms()
    total = len(terms)
    counts = Counter(terms)
    scores = {}
    for term, count in counts.items():
        df = stats.doc_freq.get(term, 0)
        scores[term] = (count / total) * math.log(stats.total_docs / (df + 1))
    return scores


def textrank_scores(doc: Document, config: TextRankConfig | None = None) -> dict[str, float]:
    """Converged TextRank score per distinct term (see :func:`textrank_detail`)."""
    scores, _, _, _ = textrank_detail(doc, config)
    return scores


def textrank_detail(
    doc: Document, config: TextRankConfig | None = None
) -> tuple[dict[str, float], int, bool, list[float]]:
    """TextRank over the term co-occurrence graph of one document.

    Terms co-occur when their token positions differ by less than the window
    size; the edge weight counts every such position pair.  Scores start at
    1.0 and iterate

        tr(i) = (1 - d) + d * sum_j w(j,i) / strength(j) * tr(j)

    with a full (Jacobi) update per round over lexicographically sorted
    terms, so the result is independent of token insertion order.  Isolated
    terms settle at 1 - d.

    Returns ``(scores, iterations, converged, deltas)``: ``converged`` means
    the max per-term change fell below epsilon within max_iterations, and
    ``deltas`` holds that max change for each iteration performed.
    """
    cfg = config or TextRankConfig()
    tokens = doc.tokens
    terms = sorted({t.surface for t in tokens})
    if not terms:
        return {}, 0, True, []

    weights: dict[str, dict[str, float]] = {t: {} for t in terms}
    for i, tok in enumerate(tokens):
        for j in range(i + 1, len(tokens)):
            other = tokens[j]
            if other.position - tok.position >= cfg.window:
                break
            if other.surface == tok.surface:
                continue
            weights[tok.surface][other.surface] = (
                weights[tok.surface].get(other.surface, 0.0) + 1.0
            )
            weights[other.surface][tok.surface] = (
                weights[other.surface].get(tok.surface, 0.0) + 1.0
            )
    strength = {t: sum(weights[t].values()) for t in terms}

    base = 1.0 - cfg.damping
    scores = {t: 1.0 for t in terms}
    iterations = 0
    converged = False
    deltas: list[float] = []
    while iterations < cfg.max_iterations:
        iterations += 1
        updated = {}
        for t in terms:
            acc = 0.0
            for j in sorted(weights[t]):
                acc += weights[j][t] / strength[j] * scores[j]
            updated[t] = base + cfg.damping * acc
        delta = max(abs(updated[t] - scores[t]) for t in terms)
        deltas.append(delta)
        scores = updated
        if delta < cfg.epsilon:
            converged = True
            break
    return scores, iterations, converged, deltas


def fuse(
    tfidf_ranked: Sequence[tuple[str, float]],
    tr_ranked: Sequence[tuple[str, float]],
    k: int,
) -> list[ScoredTopic]:
    """Rank-position-weighted fusion of the two top-K lists.

    The candidate set is the union of both top-K lists and

        S(w) = tfidf(w) / rank_tfidf(w) + tr(w) / rank_tr(w)

    with 1-based ranks; a component absent from its list's top-K contributes
    0.  Output is sorted by fused score descending, ties by term.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    for name, ranked in (("tfidf", tfidf_ranked), ("textrank", tr_ranked)):
        for prev, cur in zip(ranked, ranked[1:]):
            if cur[1] > prev[1]:
                raise ValueError(f"{name} list is not sorted by descending score")

    tfidf_all = dict(tfidf_ranked)
    tr_all = dict(tr_ranked)
    tfidf_rank = {term: i for i, (term, _) in enumerate(tfidf_ranked[:k], start=1)}
    tr_rank = {term: i for i, (term, _) in enumerate(tr_ranked[:k], start=1)}

    topics = []
    for term in set(tfidf_rank) | set(tr_rank):
        r_tfidf = tfidf_rank.get(term)
        r_tr = tr_rank.get(term)
        tfidf = tfidf_all.get(term, 0.0)
        tr = tr_all.get(term, 0.0)
        fused = 0.0
        if r_tfidf is not None:
            fused += tfidf / r_tfidf
        if r_tr is not None:
            fused += tr / r_tr
        topics.append(
            ScoredTopic(
                term=term, tfidf=tfidf, tr=tr, rank_tfidf=r_tfidf, rank_tr=r_tr, fused=fused
            )
        )
    topics.sort(key=lambda t: (-t.fused, t.term))
    return topics


def record_document(
    record: PublicationRecord,
    stopwords: frozenset[str] | set[str] | None = None,
) -> Document | None:
    """Title+abstract document for a record, or None if nothing survives."""
    text = record.title if not record.abstract else f"{record.title} {record.abstract}"
    try:
        return preprocess(record.id, text, stopwords=stopwords)
    except EmptyDocumentError:
        return None


def rank_terms(scores: dict[str, float]) -> list[tuple[str, float]]:
    """Sort a score map descending, ties by term, for fusion input."""
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))


def extract_team_topics(
    team: Team,
    corpus: Corpus | list[PublicationRecord],
    n: int,
    textrank_config: TextRankConfig | None = None,
    stopwords: frozenset[str] | set[str] | None = None,
    fusion_k: int | None = None,
) -> list[ScoredTopic]:
    """Top-n fused topics over all records authored by team members.

    Document frequencies come from the whole corpus; each team record's
    title+abstract is fused individually (K defaults to 2n) and a term's
    team-level score is the sum of its fused scores across those documents.
    Component scores are summed likewise and the ranks recomputed among the
    aggregated candidates.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    records = corpus.records if isinstance(corpus, Corpus) else corpus
    k = fusion_k if fusion_k is not None else 2 * n

    all_docs = []
    team_docs = []
    members = team.members()
    for record in records:
        doc = record_document(record, stopwords=stopwords)
        if doc is None:
            continue
        all_docs.append(doc)
        if record.author_ids and members.intersection(record.author_ids):
            team_docs.append(doc)
    if not team_docs:
        raise ValueError(f"team of {team.leader!r} has no text-bearing records")

    stats = build_corpus_stats(all_docs)
    per_doc = [
        fuse(
            rank_terms(tfidf_scores(doc, stats)),
            rank_terms(textrank_scores(doc, textrank_config)),
            k,
        )
        for doc in team_docs
    ]
    return aggregate_fused_topics(per_doc, n)


def aggregate_fused_topics(
    per_doc_topics: Iterable[list[ScoredTopic]], n: int
) -> list[ScoredTopic]:
    """Sum per-document fused topics into a team-level top-n ranking.

    Each component score is summed across documents as well, and the rank
    fields are recomputed among the aggregated candidates.
    """
    fused_sum: dict[str, float] = {}
    tfidf_sum: dict[str, float] = {}
    tr_sum: dict[str, float] = {}
    for topics in per_doc_topics:
        for topic in topics:
            fused_sum[topic.term] = fused_sum.get(topic.term, 0.0) + topic.fused
            tfidf_sum[topic.term] = tfidf_sum.get(topic.term, 0.0) + topic.tfidf
            tr_sum[topic.term] = tr_sum.get(topic.term, 0.0) + topic.tr

    by_tfidf = {term: i for i, (term, _) in enumerate(rank_terms(tfidf_sum), start=1)}
    by_tr = {term: i for i, (term, _) in enumerate(rank_terms(tr_sum), start=1)}
    ranked = sorted(fused_sum.items(), key=lambda kv: (-kv[1], kv[0]))
    return [
        ScoredTopic(
            term=term,
            tfidf=tfidf_sum[term],
            tr=tr_sum[term],
            rank_tfidf=by_tfidf[term],
            rank_tr=by_tr[term],
            fused=score,
        )
        for term, score in ranked[:n]
    ]


def topic_to_dict(topic: ScoredTopic) -> dict:
    """JSON-ready mapping for one scored topic."""
    return {
        "term": topic.term,
        "tfidf": topic.tfidf,
        "tr": topic.tr,
        "rank_tfidf": topic.rank_tfidf,
        "rank_tr": topic.rank_tr,
        "fused": topic.fused,
    }


def topic_from_dict(obj: dict) -> ScoredTopic:
    """Inverse of :func:`topic_to_dict`."""
    return ScoredTopic(
        term=obj["term"],
        tfidf=float(obj.get("tfidf", 0.0)),
        tr=float(obj.get("tr", 0.0)),
        rank_tfidf=obj.get("rank_tfidf"),
        rank_tr=obj.get("rank_tr"),
        fused=float(obj.get("fused", 0.0)),
    )


def document_from_dict(
    obj: dict, stopwords: frozenset[str] | set[str] | None = None
) -> Document:
    """Build a document from the JSON shape {id, tokens: [{surface, pos?}]}.

    Tokens pass through :func:`preprocess`, so stopword and POS filtering
    apply and positions are reassigned.
    """
    return preprocess(str(obj["id"]), obj["tokens"], stopwords=stopwords)


def load_stopwords(path) -> frozenset[str]:
    """Read a one-term-per-line UTF-8 stopword file."""
    with open(path, encoding="utf-8") as handle:
        return frozenset(line.strip().casefold() for line in handle if line.strip())
