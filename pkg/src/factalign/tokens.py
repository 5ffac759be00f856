"""Shared text tokenization for TFIDF, BLEU and lexical overlap scoring."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache

# Single separator token between the sentence and the verbalized fact in the
# canonical pair format.
PAIR_SEPARATOR = "⟨SEP⟩"

# Symbols that behave like punctuation for our purposes but are not in the
# Unicode P* categories (the pipe is Sm, for instance).
_EXTRA_PUNCT = set("|<>=+~^$⟨⟩")


@lru_cache(maxsize=4096)
def _is_punct(ch: str) -> bool:
    return ch in _EXTRA_PUNCT or unicodedata.category(ch).startswith("P")


def strip_punctuation(text: str) -> str:
    """Replace punctuation characters with spaces.

    Works on categories rather than a `\\w` regex because Indic combining
    vowel marks are not word characters and must survive.
    """
    return "".join(" " if _is_punct(ch) else ch for ch in text)


@dataclass(frozen=True)
class Tokenizer:
    lowercase: bool = True
    strip_punct: bool = True

    def tokens(self, text: str) -> list[str]:
        if self.lowercase:
            text = text.lower()
        if self.strip_punct:
            text = strip_punctuation(text)
        return text.split()

    def describe(self) -> dict:
        return {"lowercase": self.lowercase, "strip_punct": self.strip_punct}


#: Analyzer used by the TFIDF scorers unless configured otherwise.
DEFAULT_TOKENIZER = Tokenizer()

#: BLEU is conventionally case- and punctuation-sensitive; plain whitespace split.
WHITESPACE_TOKENIZER = Tokenizer(lowercase=False, strip_punct=False)
