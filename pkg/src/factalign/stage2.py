"""Candidate selection and distant-supervision dataset construction.

Selection keeps the candidate facts a sentence actually expresses, decided by
an entailment provider, a binary alignment classifier, or a model-free lexical
baseline.  The distant-supervision builder turns pages of (sentence, aligned
facts) into positive/negative pair examples with similarity-ranked negative
sampling and a seeded 90:10 split.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .facts import Fact, dedupe_facts, fact_id, verbalize_fact
from .ingest import Sentence
from .providers import (
    ENTAILMENT,
    AlignmentClassifierProvider,
    EmbeddingProvider,
    EntailmentProvider,
    cosine,
)
from .stage1 import CandidateSet
from .tokens import PAIR_SEPARATOR

METHOD_ENTAILMENT = "entailment"
METHOD_CLASSIFIER = "classifier"
METHOD_GOLD = "gold"
METHOD_OVERLAP = "overlap"

POSITIVE = "positive"
NEGATIVE = "negative"

#: Negative sampling window: skip this many most-similar sentences...
NEGATIVE_SKIP_TOP = 2
#: ...then sample uniformly among the next this-many.
NEGATIVE_WINDOW = 10

TRAIN_FRACTION = 0.9


@dataclass(frozen=True)
class AlignedInstance:
    sentence: Sentence
    facts: tuple[Fact, ...]
    method: str
    section: str


@dataclass(frozen=True)
class PairExample:
    pair_text: str
    label: str
    source_page: str
    sentence_ordinal: int


@dataclass(frozen=True)
class DistantDataset:
    train: tuple[PairExample, ...]
    validation: tuple[PairExample, ...]
    seed: int
    positive_count: int
    negative_count: int
    skipped_negatives: int


def format_pair(sentence: Sentence, fact: Fact) -> str:
    """Canonical "<sentence>⟨SEP⟩<subject | predicate | object>" pair text.

    Qualifiers are excluded; the form is byte-stable so it can key classifier
    caches and training records.
    """
    return sentence.text + PAIR_SEPARATOR + verbalize_fact(fact, include_qualifiers=False, language="en")


def _instance(cs: CandidateSet, facts: Sequence[Fact], method: str) -> AlignedInstance | None:
    kept = dedupe_facts(facts)
    if not kept:
        return None
    return AlignedInstance(
        sentence=cs.sentence,
        facts=tuple(kept),
        method=method,
        section=cs.sentence.section,
    )


def select_by_entailment(cs: CandidateSet, nli: EntailmentProvider) -> AlignedInstance | None:
    """Keep facts the NLI provider labels as entailed by the sentence.

    Premise is the sentence, hypothesis the fact verbalization.  Provider
    failures propagate; partial selections are never emitted.
    """
    kept = []
    for candidate in cs.candidates:
        label, _ = nli.classify(
            cs.sentence.text, verbalize_fact(candidate.fact, include_qualifiers=False, language="en")
        )
        if label == ENTAILMENT:
            kept.append(candidate.fact)
    return _instance(cs, kept, METHOD_ENTAILMENT)


def select_by_classifier(
    cs: CandidateSet, clf: AlignmentClassifierProvider, cutoff: float = 0.5
) -> AlignedInstance | None:
    """Keep facts whose pair text scores at least `cutoff`."""
    if not 0.0 <= cutoff <= 1.0:
        raise ValueError(f"cutoff must be in [0, 1], got {cutoff}")
    kept = [
        c.fact for c in cs.candidates if clf.score(format_pair(cs.sentence, c.fact)) >= cutoff
    ]
    return _instance(cs, kept, METHOD_CLASSIFIER)


def baseline_overlap_select(cs: CandidateSet, threshold: float) -> AlignedInstance | None:
    """Model-free fallback: keep facts whose English-side TFIDF component
    reaches the threshold (inclusive)."""
    kept = [c.fact for c in cs.candidates if c.components["tfidf_sentence_to_en"] >= threshold]
    return _instance(cs, kept, METHOD_OVERLAP)


# ---------------------------------------------------------------------------
# Distant supervision

#: One page of input: sentences in document order, each with the facts it is
#: aligned to (possibly none).
PageAlignments = Sequence[tuple[Sentence, Sequence[Fact]]]


def _pick_negative(
    anchor_index: int,
    entries: Sequence[tuple[Sentence, Sequence[Fact]]],
    vectors: Sequence,
    own_keys: frozenset,
    rng: random.Random,
    skip_top: int,
    window: int,
) -> Fact | None:
    """One isolated place implements the skip/window reading of negative
    sampling: rank other sentences by similarity, drop the `skip_top` most
    similar, sample among the next `window` that can donate a foreign fact."""
    ranked = sorted(
        (i for i in range(len(entries)) if i != anchor_index),
        key=lambda i: (-cosine(vectors[anchor_index], vectors[i]), entries[i][0].ordinal),
    )
    candidates = ranked[skip_top : skip_top + window]
    eligible = [
        i for i in candidates if any(f.key() not in own_keys for f in entries[i][1])
    ]
    if not eligible:
        return None
    donor = rng.choice(eligible)
    donor_facts = [f for f in entries[donor][1] if f.key() not in own_keys]
    return rng.choice(donor_facts)


def build_distant_dataset(
    pages: Iterable[PageAlignments],
    embedder: EmbeddingProvider,
    seed: int,
    *,
    skip_top: int = NEGATIVE_SKIP_TOP,
    window: int = NEGATIVE_WINDOW,
) -> DistantDataset:
    """Positive/negative pair examples with a seeded shuffle and 90:10 split.

    Every (sentence, aligned fact) yields a positive.  Each positive tries to
    yield one negative: the page's other sentences are ranked by embedding
    similarity to the anchor, the top `skip_top` are skipped (they tend to
    paraphrase the anchor), and a donor is drawn uniformly from the next
    `window` sentences that carry a fact not aligned to the anchor itself.
    Pages with no eligible donor skip that negative; the imbalance is counted.
    """
    rng = random.Random(seed)
    examples: list[PairExample] = []
    positives = negatives = skipped = 0

    ordered_pages = sorted(
        (sorted(page, key=lambda e: e[0].ordinal) for page in pages),
        key=lambda page: page[0][0].page_id if page else "",
    )
    for entries in ordered_pages:
        if not entries:
            continue
        vectors = [embedder.embed(s.text, s.language) for s, _ in entries]
        for anchor_index, (sentence, facts) in enumerate(entries):
            own_keys = frozenset(f.key() for f in facts)
            for fact in facts:
                examples.append(
                    PairExample(
                        pair_text=format_pair(sentence, fact),
                        label=POSITIVE,
                        source_page=sentence.page_id,
                        sentence_ordinal=sentence.ordinal,
                    )
                )
                positives += 1
                negative_fact = _pick_negative(
                    anchor_index, entries, vectors, own_keys, rng, skip_top, window
                )
                if negative_fact is None:
                    skipped += 1
                    continue
                examples.append(
                    PairExample(
                        pair_text=format_pair(sentence, negative_fact),
                        label=NEGATIVE,
                        source_page=sentence.page_id,
                        sentence_ordinal=sentence.ordinal,
                    )
                )
                negatives += 1

    rng.shuffle(examples)
    split = round(TRAIN_FRACTION * len(examples))
    return DistantDataset(
        train=tuple(examples[:split]),
        validation=tuple(examples[split:]),
        seed=seed,
        positive_count=positives,
        negative_count=negatives,
        skipped_negatives=skipped,
    )


def aligned_pages_from_instances(
    sentences: Iterable[Sentence], instances: Iterable[AlignedInstance]
) -> list[list[tuple[Sentence, list[Fact]]]]:
    """Group a sentence corpus plus aligned instances into per-page inputs for
    the distant builder; sentences without alignments carry empty fact lists."""
    aligned: dict[tuple[str, int], list[Fact]] = {}
    for instance in instances:
        key = (instance.sentence.page_id, instance.sentence.ordinal)
        aligned.setdefault(key, []).extend(instance.facts)

    by_page: dict[str, list[tuple[Sentence, list[Fact]]]] = {}
    for sentence in sentences:
        key = (sentence.page_id, sentence.ordinal)
        by_page.setdefault(sentence.page_id, []).append((sentence, dedupe_facts(aligned.get(key, []))))
    return [sorted(page, key=lambda e: e[0].ordinal) for _, page in sorted(by_page.items())]


def instance_fact_ids(instance: AlignedInstance) -> list[str]:
    return [fact_id(f) for f in instance.facts]
