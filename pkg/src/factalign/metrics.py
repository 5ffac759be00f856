"""Evaluation metrics and reports.

Selection F1 over per-(instance, fact) decisions, pairwise Cohen's kappa for
inter-annotator agreement, corpus-level BLEU-4 with brevity penalty, and
dataset statistics (lengths, fact-count histogram, vocabulary, top predicates).
All metrics are pure functions over immutable inputs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .stage2 import AlignedInstance
from .tokens import Tokenizer, WHITESPACE_TOKENIZER

BLEU_EPSILON = 1e-9
BLEU_MAX_ORDER = 4


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class F1Report:
    per_language: Mapping[str, PRF]
    micro: PRF
    macro: PRF

    def to_json(self) -> dict:
        def row(prf: PRF) -> dict:
            return {
                "precision": prf.precision,
                "recall": prf.recall,
                "f1": prf.f1,
                "support": prf.support,
            }

        return {
            "per_language": {lang: row(prf) for lang, prf in sorted(self.per_language.items())},
            "micro": row(self.micro),
            "macro": row(self.macro),
        }


@dataclass(frozen=True)
class AgreementReport:
    pairwise_kappa: Mapping[tuple[str, str], float]
    average_kappa: float
    item_count: int

    def to_json(self) -> dict:
        return {
            "pairwise_kappa": {f"{a}|{b}": k for (a, b), k in sorted(self.pairwise_kappa.items())},
            "average_kappa": self.average_kappa,
            "item_count": self.item_count,
        }


@dataclass(frozen=True)
class StatsReport:
    instance_count: int
    word_count_avg: float
    word_count_min: int
    word_count_max: int
    fact_count_avg: float
    fact_count_min: int
    fact_count_max: int
    vocabulary_size: int
    fact_count_histogram: Mapping[int, float]
    top_predicates: tuple[tuple[str, int], ...]

    def to_json(self) -> dict:
        return {
            "instance_count": self.instance_count,
            "word_count": {
                "avg": self.word_count_avg,
                "min": self.word_count_min,
                "max": self.word_count_max,
            },
            "fact_count": {
                "avg": self.fact_count_avg,
                "min": self.fact_count_min,
                "max": self.fact_count_max,
            },
            "vocabulary_size": self.vocabulary_size,
            "fact_count_histogram": {str(k): v for k, v in sorted(self.fact_count_histogram.items())},
            "top_predicates": [[label, count] for label, count in self.top_predicates],
        }


# ---------------------------------------------------------------------------
# Selection F1


def _prf(tp: int, fp: int, fn: int, support: int) -> PRF:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return PRF(precision=precision, recall=recall, f1=f1, support=support)


def selection_f1(
    predicted: Sequence[set],
    gold: Sequence[set],
    language_tags: Sequence[str],
) -> F1Report:
    """Micro P/R/F1 over per-(instance, fact) decisions, per language.

    `support` is the number of gold facts.  The macro report is the unweighted
    mean over languages; micro pools decisions across all languages.
    """
    if not (len(predicted) == len(gold) == len(language_tags)):
        raise ValueError(
            f"length mismatch: {len(predicted)} predicted, {len(gold)} gold, "
            f"{len(language_tags)} language tags"
        )
    counts: dict[str, list[int]] = {}
    for pred, gold_set, language in zip(predicted, gold, language_tags):
        pred = set(pred)
        gold_set = set(gold_set)
        tally = counts.setdefault(language, [0, 0, 0, 0])
        tally[0] += len(pred & gold_set)
        tally[1] += len(pred - gold_set)
        tally[2] += len(gold_set - pred)
        tally[3] += len(gold_set)

    per_language = {
        language: _prf(tp, fp, fn, support) for language, (tp, fp, fn, support) in counts.items()
    }
    tp, fp, fn, support = (sum(t[i] for t in counts.values()) for i in range(4))
    micro = _prf(tp, fp, fn, support)
    n = len(per_language)
    macro = PRF(
        precision=sum(p.precision for p in per_language.values()) / n if n else 0.0,
        recall=sum(p.recall for p in per_language.values()) / n if n else 0.0,
        f1=sum(p.f1 for p in per_language.values()) / n if n else 0.0,
        support=support,
    )
    return F1Report(per_language=per_language, micro=micro, macro=macro)


# ---------------------------------------------------------------------------
# Cohen's kappa


def cohen_kappa(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """Chance-corrected agreement between two mark vectors.

    kappa = (p_o - p_e) / (1 - p_e) with marginal-product chance agreement.
    Degenerate marginals (p_e = 1) force identical constant vectors, hence 1.0.
    """
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("kappa needs at least one mark")
    n = len(a)
    observed = sum(1 for x, y in zip(a, b) if x == y) / n
    counts_a = Counter(a)
    counts_b = Counter(b)
    expected = sum(counts_a[c] * counts_b.get(c, 0) for c in counts_a) / (n * n)
    if expected == 1.0:
        return 1.0
    return (observed - expected) / (1.0 - expected)


def agreement_report(marks_by_annotator: Mapping[str, Sequence[Hashable]]) -> AgreementReport:
    """Pairwise Cohen's kappa averaged over unordered annotator pairs."""
    names = sorted(marks_by_annotator)
    if len(names) < 2:
        raise ValueError("agreement needs at least two annotators")
    lengths = {len(marks_by_annotator[name]) for name in names}
    if len(lengths) != 1:
        raise ValueError("annotators must mark the same items")
    pairwise = {}
    for i, first in enumerate(names):
        for second in names[i + 1 :]:
            pairwise[(first, second)] = cohen_kappa(
                marks_by_annotator[first], marks_by_annotator[second]
            )
    return AgreementReport(
        pairwise_kappa=pairwise,
        average_kappa=sum(pairwise.values()) / len(pairwise),
        item_count=lengths.pop(),
    )


# ---------------------------------------------------------------------------
# Corpus BLEU


def _ngram_counts(tokens: Sequence[str], order: int) -> Counter:
    return Counter(tuple(tokens[i : i + order]) for i in range(len(tokens) - order + 1))


def corpus_bleu(
    hypotheses: Sequence[str],
    references: Sequence[str],
    tokenizer: Tokenizer = WHITESPACE_TOKENIZER,
) -> float:
    """Corpus-level BLEU-4 in [0, 1].

    Modified n-gram precision counts are pooled over the whole corpus before
    the uniform-weight geometric mean; zero counts are smoothed with a 1e-9
    epsilon; the brevity penalty uses pooled hypothesis/reference lengths.
    """
    if len(hypotheses) != len(references):
        raise ValueError(f"length mismatch: {len(hypotheses)} vs {len(references)}")
    if not hypotheses:
        raise ValueError("BLEU needs at least one pair")

    clipped = [0] * BLEU_MAX_ORDER
    totals = [0] * BLEU_MAX_ORDER
    hyp_length = ref_length = 0
    for hypothesis, reference in zip(hypotheses, references):
        hyp_tokens = tokenizer.tokens(hypothesis)
        ref_tokens = tokenizer.tokens(reference)
        hyp_length += len(hyp_tokens)
        ref_length += len(ref_tokens)
        for n in range(1, BLEU_MAX_ORDER + 1):
            hyp_counts = _ngram_counts(hyp_tokens, n)
            if not hyp_counts:
                continue
            ref_counts = _ngram_counts(ref_tokens, n)
            totals[n - 1] += sum(hyp_counts.values())
            clipped[n - 1] += sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())

    if hyp_length == 0:
        return 0.0
    log_sum = 0.0
    for n in range(BLEU_MAX_ORDER):
        if totals[n] == 0:
            precision = BLEU_EPSILON
        elif clipped[n] == 0:
            precision = BLEU_EPSILON / totals[n]
        else:
            precision = clipped[n] / totals[n]
        log_sum += math.log(precision)
    geometric_mean = math.exp(log_sum / BLEU_MAX_ORDER)
    brevity = 1.0 if hyp_length > ref_length else math.exp(1.0 - ref_length / hyp_length)
    return brevity * geometric_mean


# ---------------------------------------------------------------------------
# Dataset statistics

TOP_PREDICATE_COUNT = 10


def dataset_stats(instances: Sequence[AlignedInstance], language: str) -> StatsReport:
    """Corpus statistics for one language's aligned instances."""
    if not instances:
        raise ValueError("dataset_stats needs at least one instance")
    for instance in instances:
        if instance.sentence.language != language:
            raise ValueError(
                f"instance language {instance.sentence.language!r} != {language!r}"
            )

    word_counts = [i.sentence.token_count for i in instances]
    fact_counts = [len(i.facts) for i in instances]
    vocabulary: set[str] = set()
    predicate_counter: Counter = Counter()
    for instance in instances:
        vocabulary.update(instance.sentence.text.split())
        predicate_counter.update(fact.predicate.label for fact in instance.facts)

    histogram_counts = Counter(fact_counts)
    n = len(instances)
    histogram = {k: v / n for k, v in histogram_counts.items()}
    top = sorted(predicate_counter.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP_PREDICATE_COUNT]
    return StatsReport(
        instance_count=n,
        word_count_avg=sum(word_counts) / n,
        word_count_min=min(word_counts),
        word_count_max=max(word_counts),
        fact_count_avg=sum(fact_counts) / n,
        fact_count_min=min(fact_counts),
        fact_count_max=max(fact_counts),
        vocabulary_size=len(vocabulary),
        fact_count_histogram=histogram,
        top_predicates=tuple(top),
    )


# ---------------------------------------------------------------------------
# Plain-text tables


def format_f1_table(report: F1Report, languages: Sequence[str] | None = None) -> str:
    """Aligned-column table with one column per language plus an Avg column."""
    if languages is None:
        languages = sorted(report.per_language)
    header = ["Metric"] + list(languages) + ["Avg."]
    rows = []
    for name in ("precision", "recall", "f1"):
        row = [name.capitalize()]
        for language in languages:
            prf = report.per_language.get(language)
            row.append(f"{getattr(prf, name):.3f}" if prf else "-")
        row.append(f"{getattr(report.macro, name):.3f}")
        rows.append(row)
    return _align([header] + rows)


def format_stats_table(report: StatsReport, language: str) -> str:
    rows = [
        ["Lang", "I", "avg/min/max T", "avg/min/max F", "V"],
        [
            language,
            str(report.instance_count),
            f"{report.word_count_avg:.1f}/{report.word_count_min}/{report.word_count_max}",
            f"{report.fact_count_avg:.1f}/{report.fact_count_min}/{report.fact_count_max}",
            str(report.vocabulary_size),
        ],
    ]
    return _align(rows)


def _align(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines)
