/** Runbook rendering and download payloads. Adapted steps (the name-substituted
 * 3G variant) are visibly badged. */

import type { RunbookDoc } from "../types.js";
import { esc } from "./html.js";

export function runbookView(doc: RunbookDoc | null): string {
  if (!doc || doc.runbooks.length === 0) {
    return `<div class="empty-state">No accepted plan yet; run the optimizer to export a runbook.</div>`;
  }
  return doc.runbooks
    .map((rb) => {
      const moved = rb.scenario.moved_controllers.join(", ");
      const steps = rb.steps
        .map(
          (s) =>
            `<li class="step phase-${esc(s.phase)}" data-step="${esc(String(s.index))}">` +
            `${esc(s.description)}` +
            (s.adapted ? ` <span class="badge adapted">adapted</span>` : "") +
            `</li>`,
        )
        .join("");
      return `<section class="runbook"><h3>Cutover for ${esc(moved)}</h3><ol>${steps}</ol></section>`;
    })
    .join("");
}

export interface DownloadPayload {
  filename: string;
  mimeType: string;
  content: string;
}

export function runbookDownloads(doc: RunbookDoc, textBody: string): DownloadPayload[] {
  return [
    {
      filename: `runbook-${doc.plan_id}.json`,
      mimeType: "application/json",
      content: JSON.stringify(doc, null, 2),
    },
    {
      filename: `runbook-${doc.plan_id}.txt`,
      mimeType: "text/plain",
      content: textBody,
    },
  ];
}
