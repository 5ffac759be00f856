"""Human-annotation service.

Serves annotation tasks (sentence + candidate facts + reference translation),
records immutable submissions, and runs golden-control qualification: fresh
annotators only see golden tasks until they complete the quota, then an admin
ranks them by kappa against the gold answers and qualifies the top N.

State lives in an append-only JSONL event log; replaying the log reconstructs
the service exactly.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import AnnotationError, DuplicateSubmissionError, DuplicateTaskError
from .facts import Fact, fact_from_json, fact_id, fact_to_json, verbalize_fact
from .ingest import Sentence
from .metrics import cohen_kappa
from .stage1 import CandidateSet
from .stage2 import METHOD_GOLD, AlignedInstance

DEFAULT_GOLDEN_QUOTA = 60
DEFAULT_TOP_N = 4

COVERAGE_PARTIAL = "partial"
COVERAGE_COMPLETE = "complete"
COVERAGE_VALUES = (COVERAGE_PARTIAL, COVERAGE_COMPLETE)

AGGREGATION_MAJORITY = "majority"
AGGREGATION_UNION = "union"
AGGREGATION_INTERSECTION = "intersection"
AGGREGATION_RULES = (AGGREGATION_MAJORITY, AGGREGATION_UNION, AGGREGATION_INTERSECTION)


@dataclass(frozen=True)
class TaskFact:
    fact_id: str
    text: str
    fact: Fact


@dataclass(frozen=True)
class AnnotationTask:
    task_id: str
    sentence: Sentence
    reference_translation: str
    facts: tuple[TaskFact, ...]
    is_golden: bool
    language: str

    def payload(self) -> dict:
        """Annotator-facing view.  Golden and regular tasks share this schema
        exactly; neither the flag nor the gold answers ever leave the server."""
        return {
            "task_id": self.task_id,
            "language": self.language,
            "sentence": self.sentence.text,
            "reference_translation": self.reference_translation,
            "facts": [{"fact_id": f.fact_id, "text": f.text} for f in self.facts],
        }


@dataclass(frozen=True)
class AnnotationSubmission:
    task_id: str
    annotator_id: str
    marked_fact_ids: frozenset[str]
    coverage: str
    issue_text: str = ""
    timestamp: str = ""

    def to_json(self) -> dict:
        return {
            "task_id": self.task_id,
            "annotator_id": self.annotator_id,
            "marked_fact_ids": sorted(self.marked_fact_ids),
            "coverage": self.coverage,
            "issue_text": self.issue_text,
            "timestamp": self.timestamp,
        }


@dataclass
class AnnotatorProfile:
    annotator_id: str
    language: str
    golden_kappa: float | None = None
    qualified: bool = False


def _canonical(data) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def _sentence_to_json(sentence: Sentence) -> dict:
    return {
        "text": sentence.text,
        "language": sentence.language,
        "section": sentence.section,
        "page_id": sentence.page_id,
        "entity_id": sentence.entity_id,
        "ordinal": sentence.ordinal,
    }


def _sentence_from_json(data: Mapping) -> Sentence:
    return Sentence(
        text=data["text"],
        language=data["language"],
        section=data.get("section", ""),
        page_id=data.get("page_id", ""),
        entity_id=data.get("entity_id", ""),
        ordinal=int(data.get("ordinal", 0)),
    )


def task_content_id(sentence: Sentence, fact_ids: Sequence[str]) -> str:
    content = _canonical(
        {"sentence": _sentence_to_json(sentence), "fact_ids": list(fact_ids)}
    )
    return hashlib.sha256(content.encode("utf-8")).hexdigest()[:16]


class AnnotationService:
    """Task queue, submission store and qualification ledger.

    Every mutation is an event; events are applied to in-memory state and
    appended to the log (when one is configured).  Concurrent callers
    serialize through one lock, so a task is never double-assigned to the
    same annotator and submissions are never overwritten.
    """

    def __init__(
        self,
        log_path: str | Path | None = None,
        *,
        golden_quota: int = DEFAULT_GOLDEN_QUOTA,
        default_top_n: int = DEFAULT_TOP_N,
    ):
        self.golden_quota = golden_quota
        self.default_top_n = default_top_n
        self._lock = threading.RLock()
        self._tasks: dict[str, AnnotationTask] = {}
        self._task_order: list[str] = []
        self._gold_answers: dict[str, frozenset[str]] = {}
        self._annotators: dict[str, AnnotatorProfile] = {}
        self._served: dict[str, set[str]] = {}
        self._submissions: dict[tuple[str, str], AnnotationSubmission] = {}
        self._record_ids: dict[tuple[str, str], str] = {}
        self._log_path = Path(log_path) if log_path is not None else None
        self._log_handle = None
        if self._log_path is not None:
            if self._log_path.exists():
                with open(self._log_path, "r", encoding="utf-8") as handle:
                    for line in handle:
                        line = line.strip()
                        if line:
                            self._apply(json.loads(line))
            self._log_handle = open(self._log_path, "a", encoding="utf-8")

    def close(self):
        if self._log_handle is not None:
            self._log_handle.close()
            self._log_handle = None

    # -- event plumbing ----------------------------------------------------

    def _emit(self, event: dict) -> None:
        self._apply(event)
        if self._log_handle is not None:
            self._log_handle.write(_canonical(event) + "\n")
            self._log_handle.flush()

    def _apply(self, event: Mapping) -> None:
        kind = event["event"]
        if kind == "annotator_registered":
            profile = AnnotatorProfile(event["annotator_id"], event["language"])
            self._annotators[profile.annotator_id] = profile
            self._served.setdefault(profile.annotator_id, set())
        elif kind == "task_created":
            task = AnnotationTask(
                task_id=event["task_id"],
                sentence=_sentence_from_json(event["sentence"]),
                reference_translation=event["reference_translation"],
                facts=tuple(
                    TaskFact(f["fact_id"], f["text"], fact_from_json(f["fact"]))
                    for f in event["facts"]
                ),
                is_golden=event["is_golden"],
                language=event["language"],
            )
            self._tasks[task.task_id] = task
            self._task_order.append(task.task_id)
            if event.get("gold_fact_ids") is not None:
                self._gold_answers[task.task_id] = frozenset(event["gold_fact_ids"])
        elif kind == "task_assigned":
            self._served.setdefault(event["annotator_id"], set()).add(event["task_id"])
        elif kind == "submission":
            submission = AnnotationSubmission(
                task_id=event["task_id"],
                annotator_id=event["annotator_id"],
                marked_fact_ids=frozenset(event["marked_fact_ids"]),
                coverage=event["coverage"],
                issue_text=event.get("issue_text", ""),
                timestamp=event.get("timestamp", ""),
            )
            key = (submission.task_id, submission.annotator_id)
            self._submissions[key] = submission
            self._record_ids[key] = event["record_id"]
        elif kind == "annotators_qualified":
            for annotator_id, kappa in event["kappas"].items():
                profile = self._annotators[annotator_id]
                profile.golden_kappa = kappa
                profile.qualified = annotator_id in event["qualified"]
        else:
            raise AnnotationError(f"unknown event type {kind!r}")

    def state_digest(self) -> str:
        """Content hash of the full service state; replay equality check."""
        with self._lock:
            state = {
                "tasks": [
                    {
                        "task_id": tid,
                        "payload": self._tasks[tid].payload(),
                        "is_golden": self._tasks[tid].is_golden,
                        "gold": sorted(self._gold_answers.get(tid, ())),
                    }
                    for tid in self._task_order
                ],
                "annotators": [
                    {
                        "annotator_id": p.annotator_id,
                        "language": p.language,
                        "golden_kappa": p.golden_kappa,
                        "qualified": p.qualified,
                    }
                    for p in sorted(self._annotators.values(), key=lambda p: p.annotator_id)
                ],
                "served": {a: sorted(tasks) for a, tasks in sorted(self._served.items())},
                "submissions": [
                    {"record_id": self._record_ids[key], **self._submissions[key].to_json()}
                    for key in sorted(self._submissions)
                ],
            }
        return hashlib.sha256(_canonical(state).encode("utf-8")).hexdigest()

    # -- registration and task creation -------------------------------------

    def register_annotator(self, annotator_id: str, language: str) -> AnnotatorProfile:
        with self._lock:
            if not annotator_id:
                raise AnnotationError("annotator id must be non-empty")
            existing = self._annotators.get(annotator_id)
            if existing is not None:
                if existing.language != language:
                    raise AnnotationError(
                        f"annotator {annotator_id!r} already registered for {existing.language!r}"
                    )
                return existing
            self._emit(
                {"event": "annotator_registered", "annotator_id": annotator_id, "language": language}
            )
            return self._annotators[annotator_id]

    def create_tasks(
        self,
        candidate_sets: Sequence[CandidateSet],
        translations: Mapping[str, str],
        golden: Mapping[str, Iterable[str]] | None = None,
    ) -> list[AnnotationTask]:
        """One task per candidate set.

        `translations` maps sentence text to its reference translation (may be
        empty) and must cover every candidate set.  `golden` maps sentence text
        to the gold fact-id set for control tasks; the flag and answers stay
        server-side.  Task ids are content hashes: re-ingesting identical input
        is a no-op, while a conflicting task for an already-tasked sentence is
        rejected.
        """
        golden = golden or {}
        with self._lock:
            by_sentence = {
                self._tasks[tid].sentence.text: tid for tid in self._task_order
            }
            out: list[AnnotationTask] = []
            for cs in candidate_sets:
                text = cs.sentence.text
                if text not in translations:
                    raise AnnotationError(f"no translation entry for sentence {text[:40]!r}")
                fact_ids = [fact_id(c.fact) for c in cs.candidates]
                task_id = task_content_id(cs.sentence, fact_ids)
                existing_id = by_sentence.get(text)
                if existing_id is not None:
                    if existing_id == task_id:
                        out.append(self._tasks[existing_id])
                        continue
                    raise DuplicateTaskError(
                        f"sentence already has task {existing_id}; refusing conflicting task"
                    )
                gold_ids = None
                if text in golden:
                    gold_ids = sorted(set(golden[text]))
                    foreign = set(gold_ids) - set(fact_ids)
                    if foreign:
                        raise AnnotationError(f"gold ids {sorted(foreign)} not in task facts")
                self._emit(
                    {
                        "event": "task_created",
                        "task_id": task_id,
                        "language": cs.sentence.language,
                        "sentence": _sentence_to_json(cs.sentence),
                        "reference_translation": translations[text],
                        "facts": [
                            {
                                "fact_id": fact_id(c.fact),
                                "text": verbalize_fact(c.fact, include_qualifiers=False, language="en"),
                                "fact": fact_to_json(c.fact),
                            }
                            for c in cs.candidates
                        ],
                        "is_golden": gold_ids is not None,
                        "gold_fact_ids": gold_ids,
                    }
                )
                by_sentence[text] = task_id
                out.append(self._tasks[task_id])
            return out

    # -- serving -------------------------------------------------------------

    def _golden_completed(self, annotator_id: str) -> int:
        return sum(
            1
            for (task_id, submitter) in self._submissions
            if submitter == annotator_id and self._tasks[task_id].is_golden
        )

    def next_task(self, annotator_id: str, language: str) -> AnnotationTask | None:
        """Next task for this annotator, or None when nothing is available.

        Unqualified annotators only ever see golden tasks; once the quota is
        completed they wait for qualification.  Qualified annotators get
        regular tasks, least-annotated first.
        """
        with self._lock:
            profile = self._annotators.get(annotator_id)
            if profile is None:
                raise AnnotationError(f"unknown annotator {annotator_id!r}")
            if profile.language != language:
                raise AnnotationError(
                    f"annotator {annotator_id!r} is registered for {profile.language!r}"
                )
            served = self._served.get(annotator_id, set())
            if not profile.qualified:
                if self._golden_completed(annotator_id) >= self.golden_quota:
                    return None  # quota done; waiting on qualification
                pool = [
                    tid
                    for tid in self._task_order
                    if self._tasks[tid].is_golden
                    and self._tasks[tid].language == language
                    and tid not in served
                ]
                chosen = pool[0] if pool else None
            else:
                submission_count: dict[str, int] = {}
                for (task_id, _a) in self._submissions:
                    submission_count[task_id] = submission_count.get(task_id, 0) + 1
                pool = [
                    tid
                    for tid in self._task_order
                    if not self._tasks[tid].is_golden
                    and self._tasks[tid].language == language
                    and tid not in served
                    and (tid, annotator_id) not in self._submissions
                ]
                pool.sort(key=lambda tid: (submission_count.get(tid, 0), tid))
                chosen = pool[0] if pool else None
            if chosen is None:
                return None
            self._emit({"event": "task_assigned", "task_id": chosen, "annotator_id": annotator_id})
            return self._tasks[chosen]

    # -- submissions -----------------------------------------------------------

    def submit_annotation(self, submission: AnnotationSubmission) -> str:
        """Validate and append one submission; returns the stored record id."""
        with self._lock:
            task = self._tasks.get(submission.task_id)
            if task is None:
                raise AnnotationError(f"unknown task {submission.task_id!r}")
            if submission.annotator_id not in self._annotators:
                raise AnnotationError(f"unknown annotator {submission.annotator_id!r}")
            if submission.task_id not in self._served.get(submission.annotator_id, set()):
                raise AnnotationError("task was never served to this annotator")
            valid_ids = {f.fact_id for f in task.facts}
            foreign = submission.marked_fact_ids - valid_ids
            if foreign:
                raise AnnotationError(f"invalid fact ids {sorted(foreign)}")
            if submission.coverage not in COVERAGE_VALUES and not (
                submission.coverage == "" and submission.issue_text.strip()
            ):
                raise AnnotationError(
                    "coverage must be 'partial' or 'complete' (or empty with an issue note)"
                )
            key = (submission.task_id, submission.annotator_id)
            if key in self._submissions:
                raise DuplicateSubmissionError(
                    f"duplicate submission for task {submission.task_id} by {submission.annotator_id}"
                )
            record_id = f"S{len(self._submissions) + 1:06d}"
            self._emit({"event": "submission", "record_id": record_id, **submission.to_json()})
            return record_id

    def get_submission(self, task_id: str, annotator_id: str) -> AnnotationSubmission | None:
        with self._lock:
            return self._submissions.get((task_id, annotator_id))

    # -- qualification -----------------------------------------------------------

    def _golden_vectors(self, annotator_id: str) -> tuple[list[int], list[int]]:
        """Flattened (annotator marks, gold answers) over completed golden tasks,
        task creation order then task fact order."""
        marks: list[int] = []
        gold: list[int] = []
        for task_id in self._task_order:
            task = self._tasks[task_id]
            if not task.is_golden:
                continue
            submission = self._submissions.get((task_id, annotator_id))
            if submission is None:
                continue
            answers = self._gold_answers.get(task_id, frozenset())
            for task_fact in task.facts:
                marks.append(1 if task_fact.fact_id in submission.marked_fact_ids else 0)
                gold.append(1 if task_fact.fact_id in answers else 0)
        return marks, gold

    def qualify_annotators(self, language: str, top_n: int | None = None) -> list[AnnotatorProfile]:
        """Rank quota-complete annotators by kappa against gold; qualify top N.

        Annotators below the quota are excluded.  Returns the ranked profiles
        (a pure function of the submission store).
        """
        if top_n is None:
            top_n = self.default_top_n
        with self._lock:
            scored: list[tuple[float, str]] = []
            for profile in self._annotators.values():
                if profile.language != language:
                    continue
                if self._golden_completed(profile.annotator_id) < self.golden_quota:
                    continue
                marks, gold = self._golden_vectors(profile.annotator_id)
                if not marks:
                    continue
                scored.append((cohen_kappa(marks, gold), profile.annotator_id))
            scored.sort(key=lambda pair: (-pair[0], pair[1]))
            qualified = [annotator_id for _, annotator_id in scored[:top_n]]
            if scored:
                self._emit(
                    {
                        "event": "annotators_qualified",
                        "language": language,
                        "qualified": qualified,
                        "kappas": {annotator_id: kappa for kappa, annotator_id in scored},
                    }
                )
            return [self._annotators[annotator_id] for _, annotator_id in scored]

    # -- export -----------------------------------------------------------------

    def export_gold(
        self,
        language: str,
        aggregation: str = AGGREGATION_MAJORITY,
        *,
        counters: dict[str, int] | None = None,
    ) -> list[AlignedInstance]:
        """Aggregate qualified submissions on regular tasks into gold instances.

        Majority keeps facts marked by strictly more than half of the
        qualified submissions; union and intersection are what they say.
        Tasks with no qualified submission, and tasks whose aggregate is
        empty, are skipped and counted.
        """
        if aggregation not in AGGREGATION_RULES:
            raise AnnotationError(f"aggregation must be one of {AGGREGATION_RULES}")
        if counters is None:
            counters = {}
        with self._lock:
            out: list[AlignedInstance] = []
            for task_id in self._task_order:
                task = self._tasks[task_id]
                if task.is_golden or task.language != language:
                    continue
                submissions = [
                    submission
                    for (tid, annotator_id), submission in sorted(self._submissions.items())
                    if tid == task_id and self._annotators[annotator_id].qualified
                ]
                if not submissions:
                    counters["no_qualified_submissions"] = counters.get("no_qualified_submissions", 0) + 1
                    continue
                keep: set[str] = set()
                all_ids = [f.fact_id for f in task.facts]
                if aggregation == AGGREGATION_UNION:
                    for submission in submissions:
                        keep |= submission.marked_fact_ids
                elif aggregation == AGGREGATION_INTERSECTION:
                    keep = set(all_ids)
                    for submission in submissions:
                        keep &= submission.marked_fact_ids
                else:
                    for candidate in all_ids:
                        votes = sum(1 for s in submissions if candidate in s.marked_fact_ids)
                        if votes * 2 > len(submissions):
                            keep.add(candidate)
                facts = tuple(f.fact for f in task.facts if f.fact_id in keep)
                if not facts:
                    counters["empty_aggregate"] = counters.get("empty_aggregate", 0) + 1
                    continue
                out.append(
                    AlignedInstance(
                        sentence=task.sentence,
                        facts=facts,
                        method=METHOD_GOLD,
                        section=task.sentence.section,
                    )
                )
            return out

    # -- reporting ----------------------------------------------------------------

    def stats(self) -> dict:
        with self._lock:
            per_language: dict[str, dict[str, int]] = {}
            for task_id in self._task_order:
                task = self._tasks[task_id]
                bucket = per_language.setdefault(
                    task.language, {"tasks": 0, "golden_tasks": 0, "submissions": 0}
                )
                bucket["tasks"] += 1
                if task.is_golden:
                    bucket["golden_tasks"] += 1
            for (task_id, _a) in self._submissions:
                per_language[self._tasks[task_id].language]["submissions"] += 1
            return {
                "tasks": len(self._tasks),
                "golden_tasks": sum(1 for t in self._tasks.values() if t.is_golden),
                "annotators": len(self._annotators),
                "submissions": len(self._submissions),
                "per_language": per_language,
            }

    @property
    def task_ids(self) -> list[str]:
        with self._lock:
            return list(self._task_order)

    def task(self, task_id: str) -> AnnotationTask:
        with self._lock:
            try:
                return self._tasks[task_id]
            except KeyError:
                raise AnnotationError(f"unknown task {task_id!r}") from None
