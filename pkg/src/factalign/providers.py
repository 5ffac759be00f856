"""Pluggable interfaces for external intelligence sources.

Every model the pipeline consults (sentence encoder, translator, NLI model,
alignment classifier, POS-based content check, language id) is an interface
with two families of implementations: deterministic offline mocks, and thin
JSON-over-HTTP adapters for user-supplied inference endpoints.  Mocks are pure
functions of their inputs so full pipeline runs are reproducible byte for byte.
"""

from __future__ import annotations

import hashlib
import threading
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Protocol

import numpy as np
import requests

from .errors import ConfigurationError, ProviderError
from .tokens import PAIR_SEPARATOR, Tokenizer

MIN_EMBED_DIM = 8

ENTAILMENT = "entailment"
CONTRADICTION = "contradiction"
NEUTRAL = "neutral"
NLI_LABELS = (ENTAILMENT, CONTRADICTION, NEUTRAL)

CONTENT_TAGS = frozenset({"NOUN", "VERB"})


class EmbeddingProvider(Protocol):
    def embed(self, text: str, language: str) -> np.ndarray: ...


class TranslationProvider(Protocol):
    def translate(self, text: str, source: str, target: str) -> str: ...


class EntailmentProvider(Protocol):
    def classify(self, premise: str, hypothesis: str) -> tuple[str, float]: ...


class AlignmentClassifierProvider(Protocol):
    def score(self, pair_text: str) -> float: ...


class ContentTagger(Protocol):
    def has_content_word(self, text: str, language: str) -> bool: ...


class LanguageDetector(Protocol):
    def detect(self, text: str) -> tuple[str, float]: ...


# ---------------------------------------------------------------------------
# Embedding

_EMPTY_TEXT_TOKEN = "\x00<empty>"


@lru_cache(maxsize=65536)
def _token_vector(token: str, dim: int) -> np.ndarray:
    seed = int.from_bytes(hashlib.sha256(token.encode("utf-8")).digest()[:8], "big")
    vec = np.random.default_rng(seed).standard_normal(dim)
    vec.flags.writeable = False
    return vec


def mock_embed(text: str, dim: int) -> np.ndarray:
    """Hash-seeded deterministic embedding: per-token pseudo-random vectors,
    mean-pooled and L2-normalized, so token overlap correlates with cosine.

    Empty text maps to a fixed reserved vector.
    """
    if dim < MIN_EMBED_DIM:
        raise ConfigurationError(f"embedding dim must be >= {MIN_EMBED_DIM}, got {dim}")
    tokens = text.split() or [_EMPTY_TEXT_TOKEN]
    pooled = np.zeros(dim)
    for token in tokens:
        pooled += _token_vector(token, dim)
    pooled /= len(tokens)
    norm = float(np.linalg.norm(pooled))
    if norm == 0.0:  # cancellation is astronomically unlikely; keep the contract
        pooled = _token_vector(_EMPTY_TEXT_TOKEN, dim).copy()
        norm = float(np.linalg.norm(pooled))
    return pooled / norm


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


@dataclass(frozen=True)
class HashEmbeddingProvider:
    """Deterministic stand-in for the multilingual sentence encoder.

    Language is ignored: identical strings embed identically whatever the
    language tag, which keeps mock pipelines consistent under the identity
    translator.
    """

    dim: int = 32

    def __post_init__(self):
        if self.dim < MIN_EMBED_DIM:
            raise ConfigurationError(f"embedding dim must be >= {MIN_EMBED_DIM}, got {self.dim}")

    def embed(self, text: str, language: str) -> np.ndarray:
        return mock_embed(text, self.dim)


class TranslatingEmbeddingProvider:
    """Embeds text after routing it through a translator into a pivot language.

    Wrapped around the hash embedder and a dictionary translator this gives a
    deterministic stand-in for a *multilingual* encoder: tokens that translate
    to the same pivot word land on the same hash vector, so cross-script
    cosine reflects shared meaning instead of shared script.
    """

    def __init__(self, inner: EmbeddingProvider, translator: "TranslationProvider", pivot: str = "en"):
        self._inner = inner
        self._translator = translator
        self._pivot = pivot

    def embed(self, text: str, language: str) -> np.ndarray:
        pivoted = self._translator.translate(text, language, self._pivot)
        return self._inner.embed(pivoted.lower(), self._pivot)


# ---------------------------------------------------------------------------
# Translation


class IdentityTranslationProvider:
    """Mock translator: returns the input unchanged and logs every request."""

    def __init__(self):
        self._lock = threading.Lock()
        self.calls: list[tuple[str, str, str]] = []

    def translate(self, text: str, source: str, target: str) -> str:
        with self._lock:
            self.calls.append((text, source, target))
        return text


class LexiconTranslationProvider:
    """Word-for-word dictionary translator; unknown tokens pass through.

    Deterministic mock for offline pipeline runs where identity translation
    would leave cross-script text with no lexical overlap at all.  Lexicons
    are keyed by (source, target) language pair.
    """

    def __init__(self, lexicons: Mapping[tuple[str, str], Mapping[str, str]]):
        self._lexicons = {pair: dict(words) for pair, words in lexicons.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, Mapping[str, str]]) -> "LexiconTranslationProvider":
        """Keys are "source-target" strings, e.g. {"hi-en": {"जन्म": "birth"}}."""
        lexicons = {}
        for pair, words in data.items():
            source, _, target = pair.partition("-")
            lexicons[(source, target)] = words
        return cls(lexicons)

    def translate(self, text: str, source: str, target: str) -> str:
        if source == target:
            return text
        lexicon = self._lexicons.get((source, target), {})
        out = []
        for token in text.split():
            core = token.strip(_EDGE_PUNCT)
            out.append(lexicon.get(core, token))
        return " ".join(out)


# ---------------------------------------------------------------------------
# Content words

# Token edges are cleaned of punctuation before lexicon lookup so "runs." still
# matches the lexicon entry "runs".
_EDGE_PUNCT = "".join(
    sorted({".", ",", "!", "?", ";", ":", "(", ")", '"', "'", "।", "॥", "‘", "’", "“", "”"})
)


def lexicon_content_check(text: str, language: str, lexicon: Mapping[str, str]) -> bool:
    """True iff some whitespace token of `text` maps to NOUN or VERB.

    Unknown tokens count as OTHER; empty text is always False.
    """
    for token in text.split():
        if lexicon.get(token.strip(_EDGE_PUNCT), "OTHER") in CONTENT_TAGS:
            return True
    return False


class LexiconContentTagger:
    """ContentTagger backed by per-language word -> {NOUN, VERB, OTHER} maps."""

    def __init__(self, lexicons: Mapping[str, Mapping[str, str]]):
        self._lexicons = {lang: dict(lex) for lang, lex in lexicons.items()}

    def has_content_word(self, text: str, language: str) -> bool:
        return lexicon_content_check(text, language, self._lexicons.get(language, {}))


class PermissiveContentTagger:
    """Treats every non-empty text as containing a content word."""

    def has_content_word(self, text: str, language: str) -> bool:
        return bool(text.strip())


# ---------------------------------------------------------------------------
# Language identification

_SCRIPT_RANGES: dict[str, tuple[tuple[int, int], ...]] = {
    "devanagari": ((0x0900, 0x097F),),
    "bengali": ((0x0980, 0x09FF),),
    "gujarati": ((0x0A80, 0x0AFF),),
    "tamil": ((0x0B80, 0x0BFF),),
    "telugu": ((0x0C00, 0x0C7F),),
    "kannada": ((0x0C80, 0x0CFF),),
    "latin": ((0x0041, 0x005A), (0x0061, 0x007A), (0x00C0, 0x024F)),
}

#: Languages written in each script; first entry is the default vote.
SCRIPT_LANGUAGES: dict[str, tuple[str, ...]] = {
    "devanagari": ("hi", "mr"),
    "bengali": ("bn",),
    "gujarati": ("gu",),
    "tamil": ("ta",),
    "telugu": ("te",),
    "kannada": ("kn",),
    "latin": ("en",),
}

UNKNOWN_LANGUAGE = "und"


@lru_cache(maxsize=4096)
def _script_of(ch: str) -> str | None:
    code = ord(ch)
    for script, ranges in _SCRIPT_RANGES.items():
        for lo, hi in ranges:
            if lo <= code <= hi:
                return script
    return None


class ScriptLanguageDetector:
    """Unicode-script-range voting detector.

    Confidence is the fraction of letters belonging to the winning script.
    Devanagari is shared between hi and mr; `for_expected` builds a detector
    that resolves shared scripts toward the caller's expected language.
    """

    def __init__(self, overrides: Mapping[str, str] | None = None):
        self._votes = {script: langs[0] for script, langs in SCRIPT_LANGUAGES.items()}
        for script, language in (overrides or {}).items():
            if script not in self._votes:
                raise ConfigurationError(f"unknown script {script!r}")
            self._votes[script] = language

    @classmethod
    def for_expected(cls, language: str) -> "ScriptLanguageDetector":
        overrides = {
            script: language
            for script, langs in SCRIPT_LANGUAGES.items()
            if language in langs
        }
        return cls(overrides)

    def detect(self, text: str) -> tuple[str, float]:
        counts: dict[str, int] = {}
        letters = 0
        for ch in text:
            if not unicodedata.category(ch).startswith("L"):
                continue
            letters += 1
            script = _script_of(ch)
            if script is not None:
                counts[script] = counts.get(script, 0) + 1
        if letters == 0 or not counts:
            return (UNKNOWN_LANGUAGE, 0.0)
        winner = max(sorted(counts), key=counts.__getitem__)
        return (self._votes[winner], counts[winner] / letters)


# ---------------------------------------------------------------------------
# Entailment


@dataclass(frozen=True)
class FixedEntailmentProvider:
    """Always returns the same label; handy in tests."""

    label: str = ENTAILMENT
    confidence: float = 1.0

    def __post_init__(self):
        if self.label not in NLI_LABELS:
            raise ConfigurationError(f"label must be one of {NLI_LABELS}")

    def classify(self, premise: str, hypothesis: str) -> tuple[str, float]:
        return (self.label, self.confidence)


class RuleEntailmentProvider:
    """Looks the hypothesis up in a fixed rule table; default label otherwise."""

    def __init__(self, rules: Mapping[str, str], default: str = NEUTRAL):
        bad = set(rules.values()) - set(NLI_LABELS)
        if bad or default not in NLI_LABELS:
            raise ConfigurationError(f"labels must be one of {NLI_LABELS}")
        self._rules = dict(rules)
        self._default = default

    def classify(self, premise: str, hypothesis: str) -> tuple[str, float]:
        return (self._rules.get(hypothesis, self._default), 1.0)


class OverlapEntailmentProvider:
    """Entails when enough hypothesis tokens occur in the premise.

    A crude but deterministic NLI stand-in: the fraction of hypothesis content
    tokens found in the premise is compared against a threshold.
    """

    def __init__(self, threshold: float = 0.5, tokenizer: Tokenizer = Tokenizer()):
        if not 0.0 <= threshold <= 1.0:
            raise ConfigurationError("threshold must be in [0, 1]")
        self._threshold = threshold
        self._tokenizer = tokenizer

    def classify(self, premise: str, hypothesis: str) -> tuple[str, float]:
        hyp = self._tokenizer.tokens(hypothesis)
        if not hyp:
            return (NEUTRAL, 1.0)
        premise_tokens = set(self._tokenizer.tokens(premise))
        frac = sum(1 for t in hyp if t in premise_tokens) / len(hyp)
        if frac >= self._threshold:
            return (ENTAILMENT, frac)
        return (NEUTRAL, 1.0 - frac)


# ---------------------------------------------------------------------------
# Alignment classifier


@dataclass(frozen=True)
class ConstantAlignmentClassifier:
    probability: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.probability <= 1.0:
            raise ConfigurationError("probability must be in [0, 1]")

    def score(self, pair_text: str) -> float:
        return self.probability


class OverlapAlignmentClassifier:
    """Scores a pair by lexical overlap between its sentence and fact sides."""

    def __init__(self, tokenizer: Tokenizer = Tokenizer()):
        self._tokenizer = tokenizer

    def score(self, pair_text: str) -> float:
        sentence, _, fact = pair_text.partition(PAIR_SEPARATOR)
        fact_tokens = self._tokenizer.tokens(fact)
        if not fact_tokens:
            return 0.0
        sentence_tokens = set(self._tokenizer.tokens(sentence))
        return sum(1 for t in fact_tokens if t in sentence_tokens) / len(fact_tokens)


# ---------------------------------------------------------------------------
# Remote adapters (JSON over HTTP)


class _RemoteBase:
    def __init__(self, base_url: str, *, timeout: float = 30.0, session: requests.Session | None = None):
        if not base_url:
            raise ConfigurationError("remote provider needs a base URL")
        self._base_url = base_url.rstrip("/")
        self._timeout = timeout
        self._session = session or requests.Session()

    def _post(self, route: str, payload: dict) -> dict:
        url = self._base_url + route
        try:
            response = self._session.post(url, json=payload, timeout=self._timeout)
            response.raise_for_status()
            return response.json()
        except Exception as exc:
            raise ProviderError(f"POST {url} failed: {exc}") from exc


class RemoteEmbeddingProvider(_RemoteBase):
    """POST /embed {text, language} -> {vector}."""

    def embed(self, text: str, language: str) -> np.ndarray:
        body = self._post("/embed", {"text": text, "language": language})
        vec = np.asarray(body.get("vector", ()), dtype=float)
        if vec.ndim != 1 or vec.size < MIN_EMBED_DIM:
            raise ProviderError(f"/embed returned a bad vector of shape {vec.shape}")
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise ProviderError("/embed returned a zero vector")
        return vec / norm

    def close(self):
        self._session.close()


class RemoteTranslationProvider(_RemoteBase):
    """POST /translate {text, source, target} -> {text}."""

    def translate(self, text: str, source: str, target: str) -> str:
        if source == target:
            return text
        body = self._post("/translate", {"text": text, "source": source, "target": target})
        return str(body.get("text", ""))


class RemoteEntailmentProvider(_RemoteBase):
    """POST /nli {premise, hypothesis} -> {label, confidence}."""

    def classify(self, premise: str, hypothesis: str) -> tuple[str, float]:
        body = self._post("/nli", {"premise": premise, "hypothesis": hypothesis})
        label = body.get("label")
        if label not in NLI_LABELS:
            raise ProviderError(f"/nli returned unknown label {label!r}")
        confidence = float(body.get("confidence", 0.0))
        if not 0.0 <= confidence <= 1.0:
            raise ProviderError(f"/nli returned confidence {confidence} outside [0, 1]")
        return (label, confidence)


class RemoteAlignmentClassifier(_RemoteBase):
    """POST /align-score {pair} -> {probability}."""

    def score(self, pair_text: str) -> float:
        body = self._post("/align-score", {"pair": pair_text})
        probability = float(body.get("probability", -1.0))
        if not 0.0 <= probability <= 1.0:
            raise ProviderError(f"/align-score returned {probability} outside [0, 1]")
        return probability
