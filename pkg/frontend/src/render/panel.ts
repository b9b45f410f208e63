/** Comparison panel: chart per affected switch, BHCA/SS7 peak gauges, the
 * savings figure and the recommended re-homing month. Violation banners render
 * the API's rule/subject/message verbatim and replace the panel entirely. */

import type { EvaluationDoc, UtilizationSeries, Violation, WorkspaceDoc } from "../types.js";
import { trunkChart } from "./chart.js";
import { esc, num } from "./html.js";

export function violationsBanner(violations: Violation[]): string {
  if (violations.length === 0) return "";
  const items = violations
    .map(
      (v) =>
        `<li class="violation" data-rule="${esc(v.rule)}">` +
        `<code>${esc(v.rule)}</code> <span class="subject">${esc(v.subject)}</span>: ${esc(v.message)}</li>`,
    )
    .join("");
  return `<div class="banner violations"><strong>Scenario rejected</strong><ul>${items}</ul></div>`;
}

function peak(series: UtilizationSeries, pick: (m: { bhca: number; ss7_util: number }) => number) {
  let best = series.months[0];
  for (const m of series.months) {
    if (pick(m) > pick(best)) best = m;
  }
  return best;
}

function gauges(before: UtilizationSeries, after: UtilizationSeries): string {
  const rows = [
    ["peak BHCA", peak(before, (m) => m.bhca).bhca, peak(after, (m) => m.bhca).bhca],
    ["peak SS7", peak(before, (m) => m.ss7_util).ss7_util, peak(after, (m) => m.ss7_util).ss7_util],
  ] as const;
  return (
    `<table class="gauges"><thead><tr><th></th><th>before</th><th>after</th></tr></thead><tbody>` +
    rows
      .map(
        ([label, b, a]) =>
          `<tr><td>${esc(label)}</td>` +
          `<td data-value="${esc(String(b))}">${num(b)}</td>` +
          `<td data-value="${esc(String(a))}">${num(a)}</td></tr>`,
      )
      .join("") +
    `</tbody></table>`
  );
}

export function comparisonPanel(doc: EvaluationDoc, workspace: WorkspaceDoc): string {
  if (doc.violations.length > 0) return violationsBanner(doc.violations);
  if (!doc.before || !doc.after || !doc.cost_report || !doc.classification) return "";

  const switchBlocks = doc.before
    .map((before) => {
      const after = doc.after!.find((s) => s.switch_id === before.switch_id)!;
      const sw = workspace.topology.switches.find((s) => s.id === before.switch_id)!;
      return (
        `<section class="switch-comparison" data-switch-id="${esc(before.switch_id)}">` +
        `<h3>${esc(before.switch_id)}</h3>` +
        trunkChart(before, after, sw.capacity) +
        gauges(before, after) +
        `</section>`
      );
    })
    .join("");

  const recommended = Object.entries(doc.recommended_rehoming_month ?? {})
    .map(([sid, month]) =>
      month === null
        ? `<li>${esc(sid)}: no breach in the horizon</li>`
        : `<li>${esc(sid)}: month <span data-value="${esc(String(month))}">${num(month)}</span></li>`,
    )
    .join("");

  const cr = doc.cost_report;
  return (
    `<div class="comparison">` +
    `<p class="classification">model <span data-value="${esc(String(doc.classification.model_number))}">${num(doc.classification.model_number)}</span> ` +
    `(${esc(doc.classification.source_kind)} &#8594; ${esc(doc.classification.target_kind)})</p>` +
    `<ul class="recommended">${recommended}</ul>` +
    `<p class="savings">cost without re-homing <span data-value="${esc(String(cr.cost_without_rehoming))}">${num(cr.cost_without_rehoming)}</span>, ` +
    `with <span data-value="${esc(String(cr.cost_with_rehoming))}">${num(cr.cost_with_rehoming)}</span>, ` +
    `savings <strong class="savings-figure" data-value="${esc(String(cr.savings))}">${num(cr.savings)}</strong></p>` +
    switchBlocks +
    `</div>`
  );
}
