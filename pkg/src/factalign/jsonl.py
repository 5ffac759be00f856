"""Schema-validated JSONL I/O and run manifests.

Every pipeline file format has a small validator applied on both write and
read, so schema drift fails fast instead of corrupting downstream stages.
Serialization is canonical (sorted keys, no whitespace) which makes outputs
byte-reproducible.
"""

from __future__ import annotations

import hashlib
import json
import platform
from pathlib import Path
from typing import Callable, Iterable, Iterator, Mapping

from . import __version__
from .errors import SchemaError

Validator = Callable[[Mapping], None]


def canonical_json(data) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def _require(row: Mapping, key: str, types) -> None:
    if key not in row:
        raise SchemaError(f"missing field {key!r}")
    if not isinstance(row[key], types):
        raise SchemaError(f"field {key!r} has type {type(row[key]).__name__}")


def validate_sentence_row(row: Mapping) -> None:
    for key in ("text", "language", "section", "page_id", "entity_id"):
        _require(row, key, str)
    _require(row, "ordinal", int)
    if not row["text"].strip():
        raise SchemaError("sentence text must be non-empty")


def validate_rejected_row(row: Mapping) -> None:
    validate_sentence_row(row)
    _require(row, "reason", str)


def validate_fact_row(row: Mapping) -> None:
    _require(row, "subject_qid", str)
    _require(row, "pid", str)
    _require(row, "predicate_label", str)
    _require(row, "object", dict)
    _require(row, "qualifiers", list)
    _require(row, "labels", dict)
    if row["object"].get("type") not in ("item", "time", "quantity", "monotext"):
        raise SchemaError(f"bad object type {row['object'].get('type')!r}")


def validate_candidate_row(row: Mapping) -> None:
    _require(row, "sentence", dict)
    validate_sentence_row(row["sentence"])
    _require(row, "candidates", list)
    if not row["candidates"]:
        raise SchemaError("candidate set must be non-empty")
    for candidate in row["candidates"]:
        _require(candidate, "fact_id", str)
        _require(candidate, "fact", dict)
        validate_fact_row(candidate["fact"])
        _require(candidate, "score", (int, float))
        _require(candidate, "components", dict)
        if not 0.0 <= candidate["score"] <= 1.0:
            raise SchemaError(f"score {candidate['score']} outside [0, 1]")


def validate_aligned_row(row: Mapping) -> None:
    _require(row, "sentence", dict)
    validate_sentence_row(row["sentence"])
    _require(row, "facts", list)
    if not row["facts"]:
        raise SchemaError("aligned instance must keep at least one fact")
    for fact in row["facts"]:
        validate_fact_row(fact)
    _require(row, "method", str)
    _require(row, "section", str)


def validate_pair_row(row: Mapping) -> None:
    _require(row, "pair_text", str)
    _require(row, "label", str)
    if row["label"] not in ("positive", "negative"):
        raise SchemaError(f"bad pair label {row['label']!r}")


def write_jsonl(path: str | Path, rows: Iterable[Mapping], validator: Validator | None = None) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            if validator is not None:
                validator(row)
            handle.write(canonical_json(row) + "\n")
            count += 1
    return count


def read_jsonl(path: str | Path, validator: Validator | None = None) -> Iterator[dict]:
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}:{line_no}: bad JSON: {exc}") from exc
            if validator is not None:
                try:
                    validator(row)
                except SchemaError as exc:
                    raise SchemaError(f"{path}:{line_no}: {exc}") from exc
            yield row


def file_digest(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(
    output_path: str | Path,
    *,
    config: Mapping,
    inputs: Iterable[str | Path] = (),
    seed: int | None = None,
) -> Path:
    """Reproducibility manifest written next to an output file."""
    output_path = Path(output_path)
    manifest = {
        "config_hash": hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest(),
        "input_digests": {Path(p).name: file_digest(p) for p in inputs},
        "seed": seed,
        "versions": {"factalign": __version__, "python": platform.python_version()},
    }
    manifest_path = output_path.with_name(output_path.name + ".manifest.json")
    manifest_path.write_text(canonical_json(manifest) + "\n", encoding="utf-8")
    return manifest_path
