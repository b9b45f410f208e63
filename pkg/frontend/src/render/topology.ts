/** Topology diagram: markets as regions, MSS grouping boxes around their
 * gateways, monolithic MSCs beside them, controllers as leaves wired to every
 * switch they home to. Clicking a controller starts scenario composition;
 * clicking an MSS box or an MSC picks the target. Pure string rendering. */

import type { WorkspaceDoc } from "../types.js";
import { esc } from "./html.js";

const SWITCH_W = 92;
const SWITCH_H = 34;
const MSS_PAD = 14;
const GAP = 18;
const CTRL_R = 15;

interface Placed {
  id: string;
  x: number;
  y: number;
}

export function topologyView(
  workspace: WorkspaceDoc | null,
  selectedController: string | null,
  selectedTargets: string[],
): string {
  if (!workspace) {
    return `<div class="empty-state">No workspace loaded. Upload a topology and forecast to begin.</div>`;
  }
  const topo = workspace.topology;
  if (topo.switches.length === 0) {
    return `<div class="empty-state">Workspace ${esc(workspace.id)} has an empty topology.</div>`;
  }

  const placedSwitches: Placed[] = [];
  const parts: string[] = [];
  let marketX = 10;
  let svgHeight = 0;

  for (const market of topo.markets) {
    const mssHere = topo.mss.filter((m) =>
      m.controlled_mgw_ids.some(
        (gid) => topo.switches.find((s) => s.id === gid)?.market_id === market.id,
      ),
    );
    const mscHere = topo.switches.filter((s) => s.kind === "msc2g" && s.market_id === market.id);

    let cursorX = marketX + GAP;
    const boxTop = 46;
    let marketInnerW = 0;
    const boxes: string[] = [];

    for (const mss of mssHere) {
      const gateways = topo.switches.filter(
        (s) => mss.controlled_mgw_ids.includes(s.id) && s.market_id === market.id,
      );
      if (gateways.length === 0) continue;
      const boxW = MSS_PAD * 2 + gateways.length * SWITCH_W + (gateways.length - 1) * GAP;
      const boxH = MSS_PAD * 2 + SWITCH_H + 18;
      boxes.push(
        `<g class="mss-box" data-mss-id="${esc(mss.id)}">` +
          `<rect x="${cursorX}" y="${boxTop}" width="${boxW}" height="${boxH}" rx="8" class="mss-rect"/>` +
          `<text x="${cursorX + 8}" y="${boxTop + 14}" class="mss-label">${esc(mss.id)}</text>` +
          gateways
            .map((sw, i) => {
              const x = cursorX + MSS_PAD + i * (SWITCH_W + GAP);
              const y = boxTop + MSS_PAD + 14;
              placedSwitches.push({ id: sw.id, x: x + SWITCH_W / 2, y: y + SWITCH_H });
              const cls = selectedTargets.includes(sw.id) ? "switch mgw target" : "switch mgw";
              return (
                `<g class="${cls}" data-switch-id="${esc(sw.id)}" data-switch-kind="mgw3g">` +
                `<rect x="${x}" y="${y}" width="${SWITCH_W}" height="${SWITCH_H}" rx="4"/>` +
                `<text x="${x + SWITCH_W / 2}" y="${y + 21}" text-anchor="middle">${esc(sw.id)}</text></g>`
              );
            })
            .join("") +
          `</g>`,
      );
      cursorX += boxW + GAP;
    }

    for (const sw of mscHere) {
      const y = boxTop + MSS_PAD + 14;
      placedSwitches.push({ id: sw.id, x: cursorX + SWITCH_W / 2, y: y + SWITCH_H });
      const cls = selectedTargets.includes(sw.id) ? "switch msc target" : "switch msc";
      boxes.push(
        `<g class="${cls}" data-switch-id="${esc(sw.id)}" data-switch-kind="msc2g">` +
          `<rect x="${cursorX}" y="${y}" width="${SWITCH_W}" height="${SWITCH_H}" rx="4"/>` +
          `<text x="${cursorX + SWITCH_W / 2}" y="${y + 21}" text-anchor="middle">${esc(sw.id)}</text></g>`,
      );
      cursorX += SWITCH_W + GAP;
    }

    marketInnerW = Math.max(cursorX - marketX, 160);
    parts.push(
      `<g class="market-region" data-market-id="${esc(market.id)}">` +
        `<rect x="${marketX}" y="30" width="${marketInnerW}" height="150" rx="12" class="market-rect"/>` +
        `<text x="${marketX + 10}" y="22" class="market-label">${esc(market.name)} (${esc(market.id)})</text>` +
        boxes.join("") +
        `</g>`,
    );
    marketX += marketInnerW + 2 * GAP;
    svgHeight = Math.max(svgHeight, 200);
  }

  // controllers as leaves below their homed switches
  const ctrlY = 230;
  const edges: string[] = [];
  const ctrlNodes: string[] = [];
  topo.controllers.forEach((ctrl, i) => {
    const homes = placedSwitches.filter((p) => ctrl.homed_to.includes(p.id));
    const cx = homes.length
      ? homes.reduce((acc, p) => acc + p.x, 0) / homes.length
      : 40 + i * 90;
    const selected = ctrl.id === selectedController;
    for (const home of homes) {
      edges.push(
        `<line class="homing-edge${selected ? " selected" : ""}" x1="${cx}" y1="${ctrlY - CTRL_R}" x2="${home.x}" y2="${home.y}"/>`,
      );
    }
    ctrlNodes.push(
      `<g class="controller ${ctrl.kind}${selected ? " selected" : ""}" data-controller-id="${esc(ctrl.id)}">` +
        `<circle cx="${cx}" cy="${ctrlY}" r="${CTRL_R}"/>` +
        `<text x="${cx}" y="${ctrlY + 30}" text-anchor="middle">${esc(ctrl.id)}</text>` +
        `<title>${esc(ctrl.kind)} carrying ${esc(String(ctrl.trunks))} trunks / ${esc(String(ctrl.traffic_erlang))} erlang</title>` +
        `</g>`,
    );
  });

  const width = Math.max(marketX, 400);
  return (
    `<svg class="topology" viewBox="0 0 ${width} 290" width="100%" role="img">` +
    parts.join("") +
    edges.join("") +
    ctrlNodes.join("") +
    `</svg>`
  );
}
