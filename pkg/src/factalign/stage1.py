"""Candidate generation.

Scores every (fact, sentence) pair in a bundle with a 4-component similarity:
two semantic scores (encoder cosine on native and translated text) and two
syntactic scores (TFIDF cosine after translating the fact down or the sentence
up to English).  Sentences whose best fact clears the threshold survive, each
keeping at most the top-K facts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ConfigurationError, ProviderError
from .facts import EntityBundle, Fact, fact_id, localize_fact_text, verbalize_fact
from .ingest import Sentence
from .providers import EmbeddingProvider, TranslationProvider, cosine
from .tokens import DEFAULT_TOKENIZER, Tokenizer

COMPONENT_NAMES = (
    "semantic_native",
    "tfidf_fact_to_lr",
    "tfidf_sentence_to_en",
    "semantic_translated",
)

DEFAULT_TAU = 0.65
DEFAULT_K = 10


@dataclass(frozen=True)
class Stage1Config:
    tau: float = DEFAULT_TAU
    k: int = DEFAULT_K
    component_weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ConfigurationError(f"tau must be in [0, 1], got {self.tau}")
        if self.k < 1:
            raise ConfigurationError(f"k must be positive, got {self.k}")
        if len(self.component_weights) != 4 or any(w < 0 for w in self.component_weights):
            raise ConfigurationError("component_weights must be 4 non-negative reals")
        if abs(sum(self.component_weights) - 1.0) > 1e-9:
            raise ConfigurationError("component_weights must sum to 1")


# ---------------------------------------------------------------------------
# TFIDF


@dataclass(frozen=True)
class TfidfIndex:
    vocabulary: Mapping[str, int]
    idf: Mapping[str, float]
    doc_count: int
    tokenizer: Tokenizer = DEFAULT_TOKENIZER

    @property
    def unseen_idf(self) -> float:
        # idf of a term observed in zero documents.
        return math.log((1 + self.doc_count) / 1.0) + 1.0

    def term_idf(self, term: str) -> float:
        return self.idf.get(term, self.unseen_idf)


def build_tfidf_index(documents: Sequence[str], tokenizer: Tokenizer = DEFAULT_TOKENIZER) -> TfidfIndex:
    """Document-frequency statistics over a corpus.

    idf(t) = ln((1 + N) / (1 + df(t))) + 1, the smoothed variant, always > 0.
    """
    if not documents:
        raise ConfigurationError("TFIDF index needs at least one document")
    df: dict[str, int] = {}
    for doc in documents:
        for term in set(tokenizer.tokens(doc)):
            df[term] = df.get(term, 0) + 1
    n = len(documents)
    vocabulary = {term: i for i, term in enumerate(sorted(df))}
    idf = {term: math.log((1 + n) / (1 + df[term])) + 1.0 for term in vocabulary}
    return TfidfIndex(vocabulary=vocabulary, idf=idf, doc_count=n, tokenizer=tokenizer)


def _tfidf_vector(index: TfidfIndex, text: str) -> dict[str, float]:
    weights: dict[str, float] = {}
    for term in index.tokenizer.tokens(text):
        weights[term] = weights.get(term, 0.0) + index.term_idf(term)
    return weights


def tfidf_cosine(index: TfidfIndex, a: str, b: str) -> float:
    """Cosine of L2-normalized tf*idf vectors; 0 when there is no overlap.

    Terms unseen at index-build time still participate, weighted with the idf
    of a zero-df term, so the measure stays symmetric and self-similarity is 1.
    """
    va = _tfidf_vector(index, a)
    vb = _tfidf_vector(index, b)
    if not va or not vb:
        return 0.0
    if len(vb) < len(va):
        va, vb = vb, va
    dot = sum(w * vb[t] for t, w in va.items() if t in vb)
    if dot == 0.0:
        return 0.0
    na = math.sqrt(sum(w * w for w in va.values()))
    nb = math.sqrt(sum(w * w for w in vb.values()))
    return dot / (na * nb)


# ---------------------------------------------------------------------------
# Pair scoring


@dataclass(frozen=True)
class ScoredCandidate:
    fact: Fact
    score: float
    components: Mapping[str, float]


@dataclass(frozen=True)
class CandidateSet:
    sentence: Sentence
    candidates: tuple[ScoredCandidate, ...]

    def validate(self, cfg: "Stage1Config") -> None:
        if not self.candidates:
            raise ValueError("candidate set must be non-empty")
        if len(self.candidates) > cfg.k:
            raise ValueError(f"candidate set longer than k={cfg.k}")
        scores = [c.score for c in self.candidates]
        if scores[0] <= cfg.tau:
            raise ValueError(f"head score {scores[0]} does not clear tau={cfg.tau}")
        if any(b > a for a, b in zip(scores, scores[1:])):
            raise ValueError("candidate scores must be non-increasing")
        if any(not 0.0 <= s <= 1.0 for s in scores):
            raise ValueError("scores must lie in [0, 1]")


def clamp_cosine(value: float) -> float:
    """Map a cosine from [-1, 1] onto [0, 1] so component means stay in range."""
    return (max(-1.0, min(1.0, value)) + 1.0) / 2.0


def _weighted_mean(components: Sequence[float], weights: Sequence[float]) -> float:
    return sum(w * c for w, c in zip(weights, components))


@dataclass
class _FactTexts:
    """Per-fact verbalizations reused across all sentences of a bundle."""

    english: str
    localized: str


def _fact_texts(fact: Fact, language: str, translator: TranslationProvider) -> _FactTexts:
    return _FactTexts(
        english=verbalize_fact(fact, include_qualifiers=False, language="en"),
        localized=localize_fact_text(fact, language, translator),
    )


def fact_sentence_similarity(
    fact: Fact,
    sentence: Sentence,
    index_lr: TfidfIndex,
    index_en: TfidfIndex,
    embedder: EmbeddingProvider,
    translator: TranslationProvider,
    cfg: Stage1Config = Stage1Config(),
) -> ScoredCandidate:
    """Score one (fact, sentence) pair; the weighted mean of 4 named components.

    Encoder cosines are clamped from [-1, 1] to [0, 1] via (c + 1) / 2 so the
    mean lies in [0, 1] like the TFIDF components.
    """
    language = sentence.language
    texts = _fact_texts(fact, language, translator)
    try:
        sentence_en = translator.translate(sentence.text, language, "en")
    except Exception as exc:
        raise ProviderError(f"component tfidf_sentence_to_en: translation failed: {exc}") from exc

    components: dict[str, float] = {}

    def semantic(name: str, text_a: str, lang_a: str, text_b: str, lang_b: str) -> float:
        try:
            return clamp_cosine(cosine(embedder.embed(text_a, lang_a), embedder.embed(text_b, lang_b)))
        except Exception as exc:
            raise ProviderError(f"component {name}: embedding failed: {exc}") from exc

    components["semantic_native"] = semantic(
        "semantic_native", texts.english, "en", sentence.text, language
    )
    components["tfidf_fact_to_lr"] = tfidf_cosine(index_lr, texts.localized, sentence.text)
    components["tfidf_sentence_to_en"] = tfidf_cosine(index_en, texts.english, sentence_en)
    components["semantic_translated"] = semantic(
        "semantic_translated", texts.localized, language, sentence_en, "en"
    )
    score = _weighted_mean([components[n] for n in COMPONENT_NAMES], cfg.component_weights)
    return ScoredCandidate(fact=fact, score=score, components=components)


# ---------------------------------------------------------------------------
# Bundle-level generation


def bundle_index_documents(
    bundle: EntityBundle, translator: TranslationProvider
) -> tuple[list[str], list[str]]:
    """Documents backing the two TFIDF indexes: the bundle's own sentences plus
    fact verbalizations, in the LR language and in English respectively."""
    lr_docs = [s.text for s in bundle.sentences]
    en_docs = [translator.translate(s.text, bundle.language, "en") for s in bundle.sentences]
    for fact in bundle.facts:
        lr_docs.append(localize_fact_text(fact, bundle.language, translator))
        en_docs.append(verbalize_fact(fact, include_qualifiers=False, language="en"))
    return lr_docs, en_docs


def generate_candidates(
    bundle: EntityBundle,
    cfg: Stage1Config,
    *,
    embedder: EmbeddingProvider,
    translator: TranslationProvider,
    index_lr: TfidfIndex | None = None,
    index_en: TfidfIndex | None = None,
    tokenizer: Tokenizer = DEFAULT_TOKENIZER,
) -> list[CandidateSet]:
    """Candidate sets for every sentence whose best fact clears the gate.

    The gate is strict (max score > tau); survivors keep the top-K facts with
    ties broken by (pid, canonical object) so runs are reproducible.
    """
    if index_lr is None or index_en is None:
        lr_docs, en_docs = bundle_index_documents(bundle, translator)
        if index_lr is None:
            index_lr = build_tfidf_index(lr_docs, tokenizer)
        if index_en is None:
            index_en = build_tfidf_index(en_docs, tokenizer)

    facts = sorted(bundle.facts, key=lambda f: f.key())
    out: list[CandidateSet] = []
    for sentence in bundle.sentences:
        scored = [
            fact_sentence_similarity(fact, sentence, index_lr, index_en, embedder, translator, cfg)
            for fact in facts
        ]
        if not scored:
            continue
        best = max(c.score for c in scored)
        if best <= cfg.tau:
            continue
        scored.sort(key=lambda c: (-c.score, c.fact.key()))
        out.append(CandidateSet(sentence=sentence, candidates=tuple(scored[: cfg.k])))
    return out


def candidate_fact_ids(candidate_set: CandidateSet) -> list[str]:
    return [fact_id(c.fact) for c in candidate_set.candidates]
