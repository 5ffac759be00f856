/**
 * Bootstrap: read service URL / annotator id / language from the query string
 * (falling back to localStorage), register, and start the annotation loop.
 */

import { AnnotationApp } from "./app.js";
import { ApiClient } from "./api.js";

function setting(params: URLSearchParams, key: string): string {
  const fromQuery = params.get(key);
  if (fromQuery) {
    window.localStorage.setItem(`factalign.${key}`, fromQuery);
    return fromQuery;
  }
  return window.localStorage.getItem(`factalign.${key}`) ?? "";
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) return;
  const params = new URLSearchParams(window.location.search);
  const baseUrl = setting(params, "service") || "http://127.0.0.1:8040";
  const annotatorId = setting(params, "annotator");
  const language = setting(params, "language");

  if (!annotatorId || !language) {
    root.textContent =
      "Configure the session via query parameters: ?service=http://host:port&annotator=ID&language=hi";
    return;
  }

  await new ApiClient(baseUrl).register(annotatorId, language);
  const app = new AnnotationApp(root, { baseUrl, annotatorId });
  window.addEventListener("online", () => void app.flushQueue());
  await app.start();
}

void boot();
