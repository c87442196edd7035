"""Precision/Recall/F1 at n for extracted topics against gold keywords."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_N_VALUES = (1, 3, 5, 10)


@dataclass
class EvalResult:
    """Metrics for one document at one cutoff."""

    n: int
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int


@dataclass
class MacroResult:
    """Unweighted mean of per-document metrics at one cutoff."""

    n: int
    precision: float
    recall: float
    f1: float
    doc_count: int


def _normalize(term: str) -> str:
    return term.strip().casefold()


def evaluate_at_n(extracted: Sequence[str], gold: Iterable[str], n: int) -> EvalResult:
    """Exact-match P/R/F1 of the top-n extracted terms.

    Terms on both sides are trimmed and case-folded first; duplicates in the
    extracted list collapse to their first occurrence.  Division-by-zero
    cases yield 0 for the affected metric.  An empty gold set is an error
    (recall undefined).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gold_set = {_normalize(g) for g in gold if _normalize(g)}
    if not gold_set:
        raise ValueError("gold keyword set is empty")

    seen: set[str] = set()
    candidates = []
    for term in extracted:
        norm = _normalize(term)
        if norm and norm not in seen:
            seen.add(norm)
            candidates.append(norm)
    top = candidates[:n]

    tp = sum(1 for t in top if t in gold_set)
    fp = len(top) - tp
    fn = len(gold_set) - tp
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    )
    return EvalResult(n=n, precision=precision, recall=recall, f1=f1, tp=tp, fp=fp, fn=fn)


def evaluate_corpus(
    per_doc: Sequence[tuple[Sequence[str], Iterable[str]]],
    n_values: Iterable[int] = DEFAULT_N_VALUES,
) -> list[MacroResult]:
    """Macro-average P/R/F1 over (extracted, gold) document pairs.

    Returns one row per cutoff, sorted by n.
    """
    pairs = [(list(extracted), list(gold)) for extracted, gold in per_doc]
    if not pairs:
        raise ValueError("no documents with gold keywords to evaluate")
    out = []
    for n in sorted(set(n_values)):
        results = [evaluate_at_n(extracted, gold, n) for extracted, gold in pairs]
        count = len(results)
        out.append(
            MacroResult(
                n=n,
                precision=sum(r.precision for r in results) / count,
                recall=sum(r.recall for r in results) / count,
                f1=sum(r.f1 for r in results) / count,
                doc_count=count,
            )
        )
    return out
