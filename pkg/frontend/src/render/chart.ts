/** Before/after trunk chart with installed-capacity and headroom guide lines.
 *
 * Scales and pixel positions are presentation arithmetic; every NUMBER put on
 * screen is a verbatim API value (month points carry their exact trunk values
 * in data-value attributes and tooltips). The headroom guide is labelled with
 * the two capacity values it is drawn from rather than their product, keeping
 * displayed figures verbatim.
 */

import type { SwitchCapacity, UtilizationSeries } from "../types.js";
import { esc, num } from "./html.js";

const W = 640;
const H = 300;
const PAD = { left: 56, right: 16, top: 18, bottom: 40 };

function xScale(i: number, count: number): number {
  if (count <= 1) return PAD.left;
  return PAD.left + (i * (W - PAD.left - PAD.right)) / (count - 1);
}

export function trunkChart(
  before: UtilizationSeries,
  after: UtilizationSeries,
  capacity: SwitchCapacity,
): string {
  const months = before.months;
  const count = months.length;
  const headroom = capacity.trunks_max * capacity.redundancy_factor; // guide position only
  const values = [
    ...months.map((m) => m.trunks),
    ...after.months.map((m) => m.trunks),
    capacity.trunks_installed,
    headroom,
  ];
  const yMax = Math.max(...values) * 1.08;
  const yMin = 0;
  const y = (v: number) => H - PAD.bottom - ((v - yMin) / (yMax - yMin)) * (H - PAD.top - PAD.bottom);

  const line = (series: UtilizationSeries, cls: string) =>
    `<polyline class="${cls}" fill="none" points="` +
    series.months.map((m, i) => `${xScale(i, count)},${y(m.trunks)}`).join(" ") +
    `"/>`;

  const dots = (series: UtilizationSeries, cls: string) =>
    series.months
      .map((m, i) => {
        const label = m.label ?? String(m.n);
        return (
          `<circle class="dot ${cls}" cx="${xScale(i, count)}" cy="${y(m.trunks)}" r="3.5" ` +
          `data-month="${esc(String(m.n))}" data-value="${esc(String(m.trunks))}">` +
          `<title>${esc(label)}: ${num(m.trunks)} trunks (${esc(series.phase)})</title></circle>`
        );
      })
      .join("");

  const xLabels = months
    .map((m, i) => {
      if (count > 8 && i % 2 === 1) return "";
      const label = m.label ?? String(m.n);
      return `<text class="x-label" x="${xScale(i, count)}" y="${H - PAD.bottom + 18}" text-anchor="middle">${esc(label)}</text>`;
    })
    .join("");

  const guide = (value: number, cls: string, label: string) =>
    `<g class="guide ${cls}"><line x1="${PAD.left}" y1="${y(value)}" x2="${W - PAD.right}" y2="${y(value)}"/>` +
    `<text x="${W - PAD.right}" y="${y(value) - 4}" text-anchor="end">${label}</text></g>`;

  return (
    `<svg class="trunk-chart" viewBox="0 0 ${W} ${H}" width="100%" role="img">` +
    `<line class="axis" x1="${PAD.left}" y1="${H - PAD.bottom}" x2="${W - PAD.right}" y2="${H - PAD.bottom}"/>` +
    `<line class="axis" x1="${PAD.left}" y1="${PAD.top}" x2="${PAD.left}" y2="${H - PAD.bottom}"/>` +
    guide(
      capacity.trunks_installed,
      "installed",
      `installed ${num(capacity.trunks_installed)}`,
    ) +
    guide(
      headroom,
      "headroom",
      `${num(capacity.trunks_max)} max &#215; ${num(capacity.redundancy_factor)} redundancy`,
    ) +
    line(before, "series before") +
    line(after, "series after") +
    dots(before, "before") +
    dots(after, "after") +
    xLabels +
    `<g class="legend"><text x="${PAD.left}" y="12">trunks: black = before, blue = after re-homing</text></g>` +
    `</svg>`
  );
}
