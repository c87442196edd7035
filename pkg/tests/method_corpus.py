"""Planted corpus where rank fusion beats both single scoring methods.

Thirty structurally identical documents, five doc-unique gold terms each.
Per document the token stream is laid out so each single method makes
exactly one top-5 mistake while the fused ranking recovers all five golds:

- three clean runs of all five golds plus a fourth without gold #1 give the
  golds high frequency and tight mutual co-occurrence;
- ``rare{i}`` (doc-unique, 6 repeats in its own tail run) outfreqs three of
  the golds, taking a tf-idf top-3 slot and pushing gold #4 to rank 6 --
  but its repeats are self-pairs, so its co-occurrence support stays weak;
- ``common`` (present in every doc, hence negative idf) is woven seven
  times between the two strongest golds, reaching TextRank rank 5 and
  pushing gold #1 to rank 6 -- but its document frequency keeps it out of
  the tf-idf list;
- gold #1 compensates in tf-idf (isolated repeats raise its count without
  feeding the co-occurrence graph), gold #4 compensates in TextRank, so
  under rank-position weighting every gold outscores both distractors.

Fused F1@5 is therefore strictly above both single-method F1@5 values
(1.0 vs 0.8/0.8) -- a sanity check of the fusion mechanism on data built
to exhibit it, not a claim about any external dataset.
"""

from teamscope.topics import Document, Token

NUM_DOCS = 30


def gold_terms(i: int) -> list[str]:
    return [f"g{i}{j}" for j in range(5)]


def build_document(i: int) -> Document:
    g = gold_terms(i)
    seq: list[str] = []
    seq.extend(g)
    seq.extend(g)
    seq.extend(g)
    seq.extend([g[0], g[2], g[3], g[4]])
    for j in range(7):
        seq.extend([g[0] if j % 2 == 0 else g[2], "common"])
    seq.extend(["data", "model"])
    seq.extend([g[1], g[1]])
    seq.extend(["method", g[3], "data", g[4], "model"])
    seq.extend([f"rare{i}"] * 6)
    return Document(id=f"d{i}", tokens=[Token(s, p) for p, s in enumerate(seq)])


def planted_corpus() -> tuple[list[Document], list[list[str]]]:
    docs = [build_document(i) for i in range(NUM_DOCS)]
    golds = [gold_terms(i) for i in range(NUM_DOCS)]
    return docs, golds
