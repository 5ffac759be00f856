import assert from "node:assert/strict";
import { test } from "node:test";

import {
  buildSubmissionBody,
  canSubmit,
  newTaskView,
  serializeSubmissionBody,
  setCoverage,
  setIssueText,
  toggleFact,
} from "../src/state.js";
import type { TaskPayload } from "../src/state.js";

function payload(factIds: string[] = ["a", "b", "c"]): TaskPayload {
  return {
    task_id: "t1",
    language: "hi",
    sentence: "तीना मुनीम का जन्म हुआ था।",
    reference_translation: "Tina Munim was born.",
    facts: factIds.map((id) => ({ fact_id: id, text: `fact ${id}` })),
  };
}

test("new view starts empty and cannot be submitted", () => {
  const view = newTaskView(payload());
  assert.equal(view.checked.size, 0);
  assert.equal(view.coverage, "");
  assert.equal(view.issueText, "");
  assert.equal(canSubmit(view), false);
});

test("toggle checks and unchecks served facts only", () => {
  const view = newTaskView(payload());
  toggleFact(view, "b");
  assert.deepEqual([...view.checked], ["b"]);
  toggleFact(view, "b");
  assert.equal(view.checked.size, 0);
  assert.throws(() => toggleFact(view, "zz"), /not part of the served task/);
});

test("submit unlocks with coverage or a non-blank issue note", () => {
  const view = newTaskView(payload());
  setIssueText(view, "   ");
  assert.equal(canSubmit(view), false);
  setIssueText(view, "sentence is ungrammatical");
  assert.equal(canSubmit(view), true);
  setIssueText(view, "");
  setCoverage(view, "partial");
  assert.equal(canSubmit(view), true);
});

test("body lists marked ids in served order with exact fields", () => {
  const view = newTaskView(payload());
  toggleFact(view, "c");
  toggleFact(view, "a");
  setCoverage(view, "complete");
  const body = buildSubmissionBody(view, "a1", "2024-05-01T00:00:00Z");
  assert.deepEqual(body, {
    annotator_id: "a1",
    marked_fact_ids: ["a", "c"],
    coverage: "complete",
    issue_text: "",
    timestamp: "2024-05-01T00:00:00Z",
  });
});

test("serialized bytes are deterministic", () => {
  const view = newTaskView(payload());
  toggleFact(view, "a");
  setCoverage(view, "complete");
  const body = () => serializeSubmissionBody(buildSubmissionBody(view, "a1", "T"));
  assert.equal(body(), body());
  assert.equal(
    body(),
    '{"annotator_id":"a1","marked_fact_ids":["a"],"coverage":"complete","issue_text":"","timestamp":"T"}',
  );
});
