"""Shared builders for tests."""

from __future__ import annotations

import pytest

from factalign.facts import Entity, Fact, ItemValue, Predicate, TimeValue
from factalign.ingest import Sentence


def make_sentence(
    text: str,
    language: str = "en",
    section: str = "",
    page_id: str = "p1",
    entity_id: str = "Q9001",
    ordinal: int = 0,
) -> Sentence:
    return Sentence(
        text=text,
        language=language,
        section=section,
        page_id=page_id,
        entity_id=entity_id,
        ordinal=ordinal,
    )


def make_entity(qid: str = "Q9001", en: str = "Tina Munim", hi: str | None = "तीना मुनीम") -> Entity:
    labels = {"en": en}
    if hi is not None:
        labels["hi"] = hi
    return Entity(qid, labels)


def make_fact(
    subject: Entity | None = None,
    pid: str = "P569",
    label: str = "date of birth",
    obj=None,
    qualifiers=(),
) -> Fact:
    if subject is None:
        subject = make_entity()
    if obj is None:
        obj = TimeValue("+1955-02-11T00:00:00Z", 11)
    return Fact(subject=subject, predicate=Predicate(pid, label), obj=obj, qualifiers=tuple(qualifiers))


def item_fact(subject: Entity, pid: str, label: str, target: Entity) -> Fact:
    return Fact(subject=subject, predicate=Predicate(pid, label), obj=ItemValue(target))


@pytest.fixture
def tina() -> Entity:
    return make_entity()


@pytest.fixture
def dob_fact(tina) -> Fact:
    return make_fact(subject=tina)
