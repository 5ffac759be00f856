/**
 * DOM layer: renders the served task exactly as the service describes it and
 * drives the fetch -> annotate -> submit -> next loop.
 *
 * Golden-control and regular tasks arrive with an identical payload schema,
 * so they necessarily render identically — this module has no way to tell
 * them apart.  Fact display strings are inserted verbatim; the service owns
 * verbalization.
 */

import { ApiClient, ApiError, FetchLike } from "./api.js";
import { OfflineQueue, StorageLike } from "./queue.js";
import {
  Coverage,
  TaskPayload,
  TaskView,
  buildSubmissionBody,
  canSubmit,
  newTaskView,
  serializeSubmissionBody,
  setCoverage,
  setIssueText,
  toggleFact,
} from "./state.js";

export interface AppConfig {
  baseUrl: string;
  annotatorId: string;
  fetchImpl?: FetchLike;
  storage?: StorageLike;
  /** Timestamp source for submissions; injectable so tests are byte-stable. */
  now?: () => string;
}

const TRANSLATION_NOTE = "English translation (reference only — it may not be accurate)";

export class AnnotationApp {
  readonly api: ApiClient;
  readonly queue: OfflineQueue;
  private readonly now: () => string;
  view: TaskView | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly config: AppConfig,
  ) {
    this.api = new ApiClient(config.baseUrl, config.fetchImpl);
    this.queue = new OfflineQueue(config.storage ?? window.localStorage);
    this.now = config.now ?? (() => new Date().toISOString());
  }

  private get doc(): Document {
    return this.root.ownerDocument;
  }

  private element<T extends HTMLElement>(tag: string, className?: string, text?: string): T {
    const node = this.doc.createElement(tag) as T;
    if (className) node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  setStatus(message: string): void {
    const status = this.root.querySelector("#status");
    if (status) status.textContent = message;
  }

  async start(): Promise<void> {
    await this.loadNext();
  }

  async loadNext(): Promise<void> {
    let task: TaskPayload | null;
    try {
      task = await this.api.nextTask(this.config.annotatorId);
    } catch (error) {
      this.renderRetry(error instanceof ApiError ? error.detail : "network error");
      return;
    }
    if (task === null) {
      this.renderIdle();
      return;
    }
    this.view = newTaskView(task);
    this.renderTask();
  }

  /** Idle screen: queue exhausted, nothing to annotate. */
  private renderIdle(): void {
    this.view = null;
    this.root.textContent = "";
    const box = this.element("div", "idle");
    box.id = "idle";
    box.append(
      this.element("p", "", "No tasks available right now."),
      this.withId(this.button("Check again", () => void this.loadNext()), "refresh"),
    );
    this.root.append(box, this.statusLine());
  }

  /** Network trouble: offer a retry without losing any selection state. */
  private renderRetry(reason: string): void {
    const existing = this.root.querySelector("#retry");
    if (existing) {
      this.setStatus(reason);
      return;
    }
    if (this.view === null) {
      this.root.textContent = "";
      this.root.append(this.statusLine());
    }
    const retry = this.withId(this.button("Retry", () => void this.loadNext()), "retry");
    this.root.append(retry);
    this.setStatus(reason);
  }

  private statusLine(): HTMLElement {
    const line = this.element("p", "status");
    line.id = "status";
    line.setAttribute("role", "status");
    return line;
  }

  private button(label: string, onClick: () => void): HTMLButtonElement {
    const node = this.element<HTMLButtonElement>("button", "", label);
    node.addEventListener("click", onClick);
    return node;
  }

  private withId<T extends HTMLElement>(node: T, id: string): T {
    node.id = id;
    return node;
  }

  renderTask(): void {
    const view = this.view;
    if (view === null) return;
    this.root.textContent = "";

    const sentence = this.element("p", "sentence", view.task.sentence);
    sentence.id = "sentence";
    sentence.lang = view.task.language;

    const translationBox = this.element("div", "translation");
    translationBox.id = "translation";
    translationBox.append(
      this.element("p", "translation-note", TRANSLATION_NOTE),
      this.element("p", "translation-text", view.task.reference_translation),
    );

    const facts = this.element("div", "facts");
    facts.id = "facts";
    view.task.facts.forEach((fact, index) => {
      const label = this.element<HTMLLabelElement>("label", "fact");
      const checkbox = this.element<HTMLInputElement>("input", "fact-checkbox");
      checkbox.type = "checkbox";
      checkbox.dataset.factId = fact.fact_id;
      checkbox.addEventListener("change", () => {
        toggleFact(view, fact.fact_id);
        this.syncSubmitEnabled();
      });
      const shortcut = index < 9 ? `${index + 1}. ` : "";
      label.append(checkbox, this.element("span", "fact-text", `${shortcut}${fact.text}`));
      facts.append(label);
    });

    const coverage = this.element("div", "coverage");
    coverage.id = "coverage";
    coverage.append(this.element("span", "", "Selected facts cover the sentence: "));
    for (const value of ["partial", "complete"] as Coverage[]) {
      const label = this.element<HTMLLabelElement>("label", "coverage-choice");
      const radio = this.element<HTMLInputElement>("input");
      radio.type = "radio";
      radio.name = "coverage";
      radio.value = value;
      radio.addEventListener("change", () => {
        setCoverage(view, value);
        this.syncSubmitEnabled();
      });
      label.append(radio, this.element("span", "", ` ${value} `));
      coverage.append(label);
    }

    const issue = this.element<HTMLTextAreaElement>("textarea", "issue");
    issue.id = "issue";
    issue.placeholder = "If the sentence is incorrect, incomplete or otherwise broken, explain here.";
    issue.addEventListener("input", () => {
      setIssueText(view, issue.value);
      this.syncSubmitEnabled();
    });

    const submit = this.withId(
      this.button("Submit", () => void this.submitCurrent()),
      "submit",
    ) as HTMLButtonElement;
    submit.disabled = true;

    this.root.append(sentence, translationBox, facts, coverage, issue, submit, this.statusLine());
    this.installShortcuts(view);
  }

  /** Digits 1-9 toggle the corresponding fact checkbox. */
  private installShortcuts(view: TaskView): void {
    this.doc.onkeydown = (event: KeyboardEvent) => {
      const target = event.target as HTMLElement | null;
      if (target && (target.tagName === "TEXTAREA" || target.tagName === "INPUT")) return;
      const index = "123456789".indexOf(event.key);
      if (index < 0 || index >= view.task.facts.length) return;
      const boxes = this.root.querySelectorAll<HTMLInputElement>("input.fact-checkbox");
      const box = boxes[index];
      if (box) {
        box.checked = !box.checked;
        toggleFact(view, view.task.facts[index]!.fact_id);
        this.syncSubmitEnabled();
      }
    };
  }

  private syncSubmitEnabled(): void {
    const submit = this.root.querySelector<HTMLButtonElement>("#submit");
    if (submit && this.view) submit.disabled = !canSubmit(this.view);
  }

  async submitCurrent(): Promise<void> {
    const view = this.view;
    if (view === null || !canSubmit(view)) return;
    const bodyBytes = serializeSubmissionBody(
      buildSubmissionBody(view, this.config.annotatorId, this.now()),
    );
    try {
      await this.api.submit(view.task.task_id, bodyBytes);
    } catch (error) {
      if (error instanceof ApiError) {
        this.setStatus(error.detail); // server reason, verbatim; no retry loop
        return;
      }
      this.queue.push({ taskId: view.task.task_id, bodyBytes });
      this.view = null;
      this.renderIdle();
      this.setStatus(`offline — submission queued (${this.queue.size()} pending)`);
      return;
    }
    // Completed: nothing survives except the annotator id in the config.
    this.view = null;
    await this.loadNext();
  }

  /** Called on reconnect ('online' event); sends queued submissions serially. */
  async flushQueue(): Promise<void> {
    const report = await this.queue.flush((item) => this.api.submit(item.taskId, item.bodyBytes));
    const parts: string[] = [];
    if (report.sent) parts.push(`${report.sent} queued submission(s) sent`);
    for (const rejection of report.rejected) parts.push(rejection.detail);
    if (report.remaining) parts.push(`${report.remaining} still queued`);
    if (parts.length) this.setStatus(parts.join("; "));
  }
}
