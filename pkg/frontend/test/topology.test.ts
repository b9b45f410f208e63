import { describe, expect, it } from "vitest";

import { topologyView } from "../src/render/topology.js";
import type { WorkspaceDoc } from "../src/types.js";
import { workspaceFixture } from "./fixtures.js";

describe("topology rendering", () => {
  it("draws markets, MSS boxes, switches and controllers with homing edges", () => {
    const svg = topologyView(workspaceFixture(), null, []);
    expect(svg).toContain('data-market-id="metro-a"');
    expect(svg).toContain('data-mss-id="MSS-A"');
    expect(svg).toContain('data-mss-id="MSS-B"');
    for (const id of ["MGW-A1", "MGW-A2", "MGW-B1"]) {
      expect(svg).toContain(`data-switch-id="${id}"`);
    }
    expect(svg).toContain('data-controller-id="RNC-100"');
    expect(svg).toContain('data-controller-id="BSC-200"');
    expect(svg).toContain("homing-edge");
  });

  it("marks the selection", () => {
    const svg = topologyView(workspaceFixture(), "RNC-100", ["MGW-B1"]);
    expect(svg).toMatch(/controller rnc selected/);
    expect(svg).toMatch(/switch mgw target/);
  });

  it("shows the empty-state prompt without a workspace", () => {
    expect(topologyView(null, null, [])).toContain("empty-state");
  });

  it("renders a cross-market gateway outside the active market region", () => {
    const ws = workspaceFixture();
    const out: WorkspaceDoc = JSON.parse(JSON.stringify(ws));
    out.topology.markets.push({ id: "metro-b", name: "Metro B" });
    out.topology.mss.find((m) => m.id === "MSS-B")!.controlled_mgw_ids.push("MGW-BX");
    out.topology.switches.push({
      ...out.topology.switches[0],
      id: "MGW-BX",
      mss_id: "MSS-B",
      market_id: "metro-b",
    });
    const svg = topologyView(out, null, []);
    // market groups render sequentially: a switch's marker sits after its own
    // market marker and before the next one
    const at = (needle: string) => svg.indexOf(needle);
    expect(at('data-switch-id="MGW-BX"')).toBeGreaterThan(at('data-market-id="metro-b"'));
    expect(at('data-switch-id="MGW-B1"')).toBeGreaterThan(at('data-market-id="metro-a"'));
    expect(at('data-switch-id="MGW-B1"')).toBeLessThan(at('data-market-id="metro-b"'));
  });

  it("renders a 50-node topology with every node clickable", () => {
    const ws = workspaceFixture();
    const big: WorkspaceDoc = {
      ...ws,
      topology: {
        markets: [{ id: "m1", name: "Big Market" }],
        mss: Array.from({ length: 10 }, (_, i) => ({
          id: `MSS-${i}`,
          controlled_mgw_ids: [`G-${i}-0`, `G-${i}-1`],
        })),
        switches: Array.from({ length: 10 }, (_, i) =>
          [0, 1].map((j) => ({
            id: `G-${i}-${j}`,
            kind: "mgw3g" as const,
            market_id: "m1",
            mss_id: `MSS-${i}`,
            capacity: ws.topology.switches[0].capacity,
          })),
        ).flat(),
        controllers: Array.from({ length: 30 }, (_, i) => ({
          id: `R-${i}`,
          kind: "rnc" as const,
          homed_to: [`G-${i % 10}-${i % 2}`],
          trunks: 10,
          traffic_erlang: 150,
        })),
      },
    };
    const svg = topologyView(big, null, []);
    const switches = svg.match(/data-switch-id=/g) ?? [];
    const controllers = svg.match(/data-controller-id=/g) ?? [];
    expect(switches.length).toBe(20);
    expect(controllers.length).toBe(30);
  });
});
