"""Structured fact parsing and verbalization.

Parses entity-dump records (claims keyed by property id, each with a mainsnak
and qualifiers) into typed Fact records restricted to the four allowed object
datatypes, and renders facts as "subject | predicate | object" text for the
alignment stages, either in English or localized with entity labels kept
verbatim where the target language has them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence, Union

from .errors import FactAlignError, MissingLabelError, ProviderError, SchemaError
from .ingest import Sentence
from .providers import TranslationProvider

QID_RE = re.compile(r"^Q[0-9]+$")

#: The four property datatypes facts are restricted to, in dump spelling.
DEFAULT_ALLOWLIST = frozenset({"wikibase-item", "time", "quantity", "monolingualtext"})


def _normalize_datatype(datatype: str) -> str:
    return datatype.lower().replace("-", "").replace("_", "")


_ALLOWED_NORMALIZED = {
    "wikibaseitem": "wikibase-item",
    "time": "time",
    "quantity": "quantity",
    "monolingualtext": "monolingualtext",
}


class FactParseError(FactAlignError):
    """Entity document violates the expected claim schema."""


@dataclass(frozen=True)
class Entity:
    qid: str
    labels: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not QID_RE.match(self.qid):
            raise ValueError(f"bad entity id {self.qid!r}")

    def label(self, language: str, allow_english_fallback: bool = True) -> str:
        if language in self.labels:
            return self.labels[language]
        if allow_english_fallback and "en" in self.labels:
            return self.labels["en"]
        raise MissingLabelError(self.qid, language)


@dataclass(frozen=True)
class Predicate:
    pid: str
    label: str


_MONTHS = (
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
)

# Wikidata time precisions: 9 = year, 10 = month, 11 = day.
PRECISION_YEAR = 9
PRECISION_MONTH = 10
PRECISION_DAY = 11


@dataclass(frozen=True)
class ItemValue:
    entity: Entity

    kind = "item"

    def canonical(self) -> str:
        return self.entity.qid


@dataclass(frozen=True)
class TimeValue:
    time: str  # e.g. "+1955-02-11T00:00:00Z"
    precision: int = PRECISION_DAY

    kind = "time"

    def canonical(self) -> str:
        # Calendar model intentionally excluded: values differing only in
        # calendar collapse to one fact.
        return f"{self.time}/{self.precision}"

    def formatted(self) -> str:
        match = re.match(r"^([+-]?)(\d+)-(\d{2})-(\d{2})", self.time)
        if not match:
            return self.time
        sign, year_s, month_s, day_s = match.groups()
        year = int(year_s)
        era = " BCE" if sign == "-" else ""
        if self.precision <= PRECISION_YEAR:
            return f"{year}{era}"
        month = _MONTHS[max(1, min(12, int(month_s))) - 1]
        if self.precision == PRECISION_MONTH:
            return f"{month} {year}{era}"
        return f"{int(day_s)} {month} {year}{era}"


@dataclass(frozen=True)
class QuantityValue:
    amount: str  # decimal as text, normalized (no leading '+')
    unit: Entity | None = None

    kind = "quantity"

    def canonical(self) -> str:
        return f"{self.amount}@{self.unit.qid if self.unit else ''}"


@dataclass(frozen=True)
class MonotextValue:
    text: str
    language: str

    kind = "monotext"

    def canonical(self) -> str:
        return f"{self.language}:{self.text}"


FactObject = Union[ItemValue, TimeValue, QuantityValue, MonotextValue]


@dataclass(frozen=True)
class Qualifier:
    predicate: Predicate
    value: FactObject


@dataclass(frozen=True)
class Fact:
    subject: Entity
    predicate: Predicate
    obj: FactObject
    qualifiers: tuple[Qualifier, ...] = ()

    def key(self) -> tuple[str, str]:
        """Deduplication identity: (property id, canonical object form)."""
        return (self.predicate.pid, self.obj.canonical())


def fact_id(fact: Fact) -> str:
    """Stable textual id for a fact within a bundle."""
    pid, canon = fact.key()
    return f"{pid}|{canon}"


def dedupe_facts(facts: Iterable[Fact]) -> list[Fact]:
    """Drop facts repeating an earlier (pid, canonical object); stable order."""
    seen: set[tuple[str, str]] = set()
    out: list[Fact] = []
    for fact in facts:
        key = fact.key()
        if key not in seen:
            seen.add(key)
            out.append(fact)
    return out


@dataclass
class EntityBundle:
    """All facts and sentences for one (entity, language) pair."""

    entity: Entity
    language: str
    facts: list[Fact]
    sentences: list[Sentence]

    def __post_init__(self):
        for sentence in self.sentences:
            if sentence.language != self.language:
                raise ValueError(
                    f"sentence language {sentence.language!r} != bundle language {self.language!r}"
                )
        self.facts = dedupe_facts(self.facts)


# ---------------------------------------------------------------------------
# Parsing


@lru_cache(maxsize=1)
def shipped_property_labels() -> dict[str, str]:
    raw = resources.files("factalign.data").joinpath("property_labels.json").read_text("utf-8")
    return json.loads(raw)


def _doc_labels(doc: Mapping) -> dict[str, str]:
    labels = {}
    for code, value in (doc.get("labels") or {}).items():
        labels[code] = value["value"] if isinstance(value, Mapping) else str(value)
    return labels


def build_label_store(docs: Iterable[Mapping]) -> dict[str, dict[str, str]]:
    """First pass over an entity dump: qid -> multilingual labels."""
    store: dict[str, dict[str, str]] = {}
    for doc in docs:
        qid = doc.get("id", "")
        if qid:
            store[qid] = _doc_labels(doc)
    return store


def _parse_value(datatype: str, datavalue: Mapping, label_store: Mapping[str, Mapping[str, str]]):
    value = datavalue.get("value")
    if datatype == "wikibase-item":
        qid = value.get("id") if isinstance(value, Mapping) else None
        if not qid:
            raise KeyError("item value without id")
        return ItemValue(Entity(qid, dict(label_store.get(qid, {}))))
    if datatype == "time":
        return TimeValue(time=value["time"], precision=int(value.get("precision", PRECISION_DAY)))
    if datatype == "quantity":
        amount = str(value["amount"]).lstrip("+")
        unit_uri = str(value.get("unit", "1"))
        unit = None
        if unit_uri not in ("", "1"):
            unit_qid = unit_uri.rsplit("/", 1)[-1]
            unit = Entity(unit_qid, dict(label_store.get(unit_qid, {})))
        return QuantityValue(amount=amount, unit=unit)
    if datatype == "monolingualtext":
        return MonotextValue(text=value["text"], language=value["language"])
    raise KeyError(f"unsupported datatype {datatype!r}")


def _parse_snak(snak: Mapping, label_store) -> tuple[str, FactObject] | None:
    """Returns (datatype, value) for value-snaks of an allowed datatype, else None."""
    if snak.get("snaktype", "value") != "value":
        return None  # somevalue / novalue: nothing verbalizable
    datatype = _ALLOWED_NORMALIZED.get(_normalize_datatype(snak.get("datatype", "")))
    if datatype is None:
        return None
    return datatype, _parse_value(datatype, snak.get("datavalue") or {}, label_store)


def parse_entity_facts(
    entity_doc: Mapping,
    allowlist: frozenset[str] | set[str] = DEFAULT_ALLOWLIST,
    *,
    property_labels: Mapping[str, str] | None = None,
    label_store: Mapping[str, Mapping[str, str]] | None = None,
    counters: dict[str, int] | None = None,
) -> list[Fact]:
    """One Fact per claim whose datatype is allowed.

    Deprecated-rank claims are excluded; somevalue/novalue snaks dropped;
    qualifiers retained when representable in the four types, else dropped and
    counted.  Schema violations raise FactParseError naming the property id.
    """
    if property_labels is None:
        property_labels = shipped_property_labels()
    if label_store is None:
        label_store = {}
    if counters is None:
        counters = {}
    allowed = {_ALLOWED_NORMALIZED[_normalize_datatype(d)] for d in allowlist}

    qid = entity_doc.get("id")
    if not qid:
        raise FactParseError("entity document without id")
    subject = Entity(qid, _doc_labels(entity_doc))

    facts: list[Fact] = []
    for pid in sorted(entity_doc.get("claims") or {}):
        claims = entity_doc["claims"][pid]
        if not isinstance(claims, Sequence):
            raise FactParseError(f"claims for {pid} are not a list")
        for claim in claims:
            if claim.get("rank", "normal") == "deprecated":
                counters["deprecated"] = counters.get("deprecated", 0) + 1
                continue
            mainsnak = claim.get("mainsnak")
            if not isinstance(mainsnak, Mapping):
                raise FactParseError(f"claim for {pid} has no mainsnak")
            if mainsnak.get("snaktype", "value") != "value":
                counters["non_value"] = counters.get("non_value", 0) + 1
                continue
            datatype = _ALLOWED_NORMALIZED.get(_normalize_datatype(mainsnak.get("datatype", "")))
            if datatype is None:
                counters["unknown_datatype"] = counters.get("unknown_datatype", 0) + 1
                continue
            if datatype not in allowed:
                counters["disallowed_datatype"] = counters.get("disallowed_datatype", 0) + 1
                continue
            try:
                obj = _parse_value(datatype, mainsnak.get("datavalue") or {}, label_store)
            except (KeyError, TypeError, ValueError) as exc:
                raise FactParseError(f"bad {datatype} value for {pid}: {exc}") from exc

            qualifiers: list[Qualifier] = []
            qual_snaks = claim.get("qualifiers") or {}
            order = claim.get("qualifiers-order") or sorted(qual_snaks)
            for qual_pid in order:
                for snak in qual_snaks.get(qual_pid, ()):
                    parsed = _parse_snak(snak, label_store)
                    if parsed is None:
                        counters["dropped_qualifiers"] = counters.get("dropped_qualifiers", 0) + 1
                        continue
                    qualifiers.append(
                        Qualifier(
                            predicate=Predicate(qual_pid, property_labels.get(qual_pid, qual_pid)),
                            value=parsed[1],
                        )
                    )
            facts.append(
                Fact(
                    subject=subject,
                    predicate=Predicate(pid, property_labels.get(pid, pid)),
                    obj=obj,
                    qualifiers=tuple(qualifiers),
                )
            )
    return facts


# ---------------------------------------------------------------------------
# Verbalization


def _object_surface(obj: FactObject, language: str, allow_english_fallback: bool) -> str:
    if isinstance(obj, ItemValue):
        return obj.entity.label(language, allow_english_fallback)
    if isinstance(obj, TimeValue):
        return obj.formatted()
    if isinstance(obj, QuantityValue):
        if obj.unit is None:
            return obj.amount
        try:
            unit_label = obj.unit.label(language, allow_english_fallback)
        except MissingLabelError:
            unit_label = obj.unit.qid
        return f"{obj.amount} {unit_label}"
    if isinstance(obj, MonotextValue):
        return obj.text
    raise TypeError(f"unknown object value {obj!r}")


def verbalize_fact(
    fact: Fact,
    include_qualifiers: bool,
    language: str,
    *,
    allow_english_fallback: bool = True,
) -> str:
    """Render a fact as "subject | predicate | object" text.

    Qualifiers append as " | <qualifier predicate>: <value>" when requested.
    Raises MissingLabelError when a needed label is absent and fallback is off.
    """
    parts = [
        fact.subject.label(language, allow_english_fallback),
        fact.predicate.label,
        _object_surface(fact.obj, language, allow_english_fallback),
    ]
    text = " | ".join(parts)
    if include_qualifiers:
        for qualifier in fact.qualifiers:
            surface = _object_surface(qualifier.value, language, allow_english_fallback)
            text += f" | {qualifier.predicate.label}: {surface}"
    return text


def _translate_slot(translator: TranslationProvider, text: str, source: str, target: str, slot: str) -> str:
    try:
        return translator.translate(text, source, target)
    except Exception as exc:
        raise ProviderError(f"translation failed for {slot}: {exc}") from exc


def _localized_entity(entity: Entity, target: str, translator: TranslationProvider, slot: str) -> str:
    # Keep the target-language label verbatim when the dump has one; translate
    # the English label otherwise.
    if target in entity.labels:
        return entity.labels[target]
    return _translate_slot(translator, entity.label("en"), "en", target, slot)


def localize_fact_text(
    fact: Fact,
    target: str,
    translator: TranslationProvider,
    *,
    include_qualifiers: bool = False,
) -> str:
    """Fact text in the target language for syntactic matching.

    Entity labels present in the target language pass through untranslated;
    everything else (predicate label, rendered dates/quantities, missing-label
    entities) goes through the translation provider.
    """

    def value_surface(obj: FactObject, slot: str) -> str:
        if isinstance(obj, ItemValue):
            return _localized_entity(obj.entity, target, translator, slot)
        if isinstance(obj, MonotextValue):
            if obj.language == target:
                return obj.text
            return _translate_slot(translator, obj.text, obj.language, target, slot)
        return _translate_slot(translator, _object_surface(obj, "en", True), "en", target, slot)

    parts = [
        _localized_entity(fact.subject, target, translator, "subject"),
        _translate_slot(translator, fact.predicate.label, "en", target, "predicate"),
        value_surface(fact.obj, "object"),
    ]
    text = " | ".join(parts)
    if include_qualifiers:
        for i, qualifier in enumerate(fact.qualifiers):
            slot = f"qualifier[{i}]"
            label = _translate_slot(translator, qualifier.predicate.label, "en", target, slot)
            text += f" | {label}: {value_surface(qualifier.value, slot)}"
    return text


# ---------------------------------------------------------------------------
# Serialization (facts JSONL and event-log records)


def object_to_json(obj: FactObject) -> dict:
    if isinstance(obj, ItemValue):
        return {"type": "item", "qid": obj.entity.qid, "labels": dict(obj.entity.labels)}
    if isinstance(obj, TimeValue):
        return {"type": "time", "time": obj.time, "precision": obj.precision}
    if isinstance(obj, QuantityValue):
        out: dict = {"type": "quantity", "amount": obj.amount}
        if obj.unit is not None:
            out["unit_qid"] = obj.unit.qid
            out["unit_labels"] = dict(obj.unit.labels)
        return out
    if isinstance(obj, MonotextValue):
        return {"type": "monotext", "text": obj.text, "language": obj.language}
    raise TypeError(f"unknown object value {obj!r}")


def object_from_json(data: Mapping) -> FactObject:
    kind = data.get("type")
    if kind == "item":
        return ItemValue(Entity(data["qid"], dict(data.get("labels", {}))))
    if kind == "time":
        return TimeValue(time=data["time"], precision=int(data.get("precision", PRECISION_DAY)))
    if kind == "quantity":
        unit = None
        if data.get("unit_qid"):
            unit = Entity(data["unit_qid"], dict(data.get("unit_labels", {})))
        return QuantityValue(amount=str(data["amount"]), unit=unit)
    if kind == "monotext":
        return MonotextValue(text=data["text"], language=data["language"])
    raise SchemaError(f"unknown fact object type {kind!r}")


def fact_to_json(fact: Fact) -> dict:
    return {
        "subject_qid": fact.subject.qid,
        "labels": dict(fact.subject.labels),
        "pid": fact.predicate.pid,
        "predicate_label": fact.predicate.label,
        "object": object_to_json(fact.obj),
        "qualifiers": [
            {
                "pid": q.predicate.pid,
                "predicate_label": q.predicate.label,
                "value": object_to_json(q.value),
            }
            for q in fact.qualifiers
        ],
    }


def fact_from_json(data: Mapping) -> Fact:
    return Fact(
        subject=Entity(data["subject_qid"], dict(data.get("labels", {}))),
        predicate=Predicate(data["pid"], data.get("predicate_label", data["pid"])),
        obj=object_from_json(data["object"]),
        qualifiers=tuple(
            Qualifier(
                predicate=Predicate(q["pid"], q.get("predicate_label", q["pid"])),
                value=object_from_json(q["value"]),
            )
            for q in data.get("qualifiers", ())
        ),
    )
