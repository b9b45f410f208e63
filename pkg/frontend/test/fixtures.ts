import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { EvaluationDoc, PlanDoc, RunbookDoc, WorkspaceDoc } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export const workspaceFixture = () => load<WorkspaceDoc>("workspace.json");
export const evaluateOkFixture = () => load<EvaluationDoc>("evaluate_ok.json");
export const evaluateSameMssFixture = () => load<EvaluationDoc>("evaluate_same_mss.json");
export const planFixture = () => load<PlanDoc>("plan.json");
export const runbookFixture = () => load<RunbookDoc>("runbook.json");
export const runbookTextFixture = () =>
  readFileSync(join(here, "fixtures", "runbook.txt"), "utf-8");

/** Every number reachable anywhere in a recorded API document. */
export function collectNumbers(doc: unknown, into = new Set<number>()): Set<number> {
  if (typeof doc === "number") {
    into.add(doc);
  } else if (Array.isArray(doc)) {
    for (const item of doc) collectNumbers(item, into);
  } else if (doc && typeof doc === "object") {
    for (const value of Object.values(doc)) collectNumbers(value, into);
  }
  return into;
}
