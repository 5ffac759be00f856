/**
 * TaskView state: the served task payload plus the annotator's selection.
 *
 * Pure functions only — the DOM layer renders from this and the submission
 * body is built from it, so the exact bytes sent to the service are testable
 * without a browser.
 */

export interface TaskFactView {
  fact_id: string;
  text: string;
}

export interface TaskPayload {
  task_id: string;
  language: string;
  sentence: string;
  reference_translation: string;
  facts: TaskFactView[];
}

export type Coverage = "partial" | "complete" | "";

export interface TaskView {
  task: TaskPayload;
  checked: Set<string>;
  coverage: Coverage;
  issueText: string;
}

export function newTaskView(task: TaskPayload): TaskView {
  return { task, checked: new Set(), coverage: "", issueText: "" };
}

export function toggleFact(view: TaskView, factId: string): void {
  if (!view.task.facts.some((f) => f.fact_id === factId)) {
    throw new Error(`fact ${factId} was not part of the served task`);
  }
  if (view.checked.has(factId)) {
    view.checked.delete(factId);
  } else {
    view.checked.add(factId);
  }
}

export function setCoverage(view: TaskView, coverage: Coverage): void {
  view.coverage = coverage;
}

export function setIssueText(view: TaskView, text: string): void {
  view.issueText = text;
}

/** Submit is allowed once a coverage level is chosen or an issue is described. */
export function canSubmit(view: TaskView): boolean {
  return view.coverage !== "" || view.issueText.trim() !== "";
}

export interface SubmissionBody {
  annotator_id: string;
  marked_fact_ids: string[];
  coverage: string;
  issue_text: string;
  timestamp: string;
}

/** Marked ids are emitted in served fact order, so the body is deterministic. */
export function buildSubmissionBody(
  view: TaskView,
  annotatorId: string,
  timestamp: string,
): SubmissionBody {
  return {
    annotator_id: annotatorId,
    marked_fact_ids: view.task.facts
      .filter((f) => view.checked.has(f.fact_id))
      .map((f) => f.fact_id),
    coverage: view.coverage,
    issue_text: view.issueText,
    timestamp,
  };
}

/** The exact bytes POSTed to /tasks/{id}/submission. */
export function serializeSubmissionBody(body: SubmissionBody): string {
  return JSON.stringify(body);
}
