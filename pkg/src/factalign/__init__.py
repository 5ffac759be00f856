"""Cross-lingual fact-to-text alignment toolkit.

Builds aligned (facts, sentence) datasets from encyclopedia dumps and
structured fact dumps: ingestion and filtering, two-stage alignment
(candidate generation, candidate selection), distant-supervision dataset
construction, a human-annotation service, and evaluation metrics.
"""

__version__ = "0.1.0"
