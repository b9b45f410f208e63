/** DOM wiring. All rendering is delegated to the pure functions in render/;
 * this layer only routes events, drives the API client and swaps innerHTML. */

import { ApiClient, ApiError } from "./api.js";
import {
  canEvaluate,
  initialState,
  selectController,
  selectMscTarget,
  selectMssTargets,
  setMonth,
  withEvaluation,
  withToast,
  withWorkspace,
  type ViewState,
} from "./state.js";
import { comparisonPanel, violationsBanner } from "./render/panel.js";
import { runbookDownloads, runbookView } from "./render/runbook.js";
import { topologyView } from "./render/topology.js";
import { esc } from "./render/html.js";

const api = new ApiClient("");
let state: ViewState = initialState();
let lastPlanId: string | null = null;

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function render(): void {
  $("topology").innerHTML = topologyView(
    state.workspace,
    state.selectedController,
    state.selectedTargets,
  );
  const banner = violationsBanner(state.violations);
  const panel = state.comparison && state.workspace ? comparisonPanel(state.comparison, state.workspace) : "";
  $("comparison").innerHTML = banner || panel ||
    `<div class="empty-state">Pick a controller, then a target MSS or MSC, and evaluate.</div>`;
  const selection = state.selectedController
    ? `moving <strong>${esc(state.selectedController)}</strong> to ` +
      (state.selectedTargets.length ? esc(state.selectedTargets.join(", ")) : "&#8230;")
    : "no controller selected";
  $("selection").innerHTML = selection;
  ($("evaluate") as HTMLButtonElement).disabled = !canEvaluate(state);
  ($("export-runbook") as HTMLButtonElement).disabled = lastPlanId === null;
  $("toast").textContent = state.toast ?? "";
}

async function refreshWorkspaces(): Promise<void> {
  const entries = await api.listWorkspaces();
  const select = $("workspace-select") as HTMLSelectElement;
  select.innerHTML = entries
    .map((w) => `<option value="${esc(w.id)}">${esc(w.id)} (${esc(w.modified_at)})</option>`)
    .join("");
  if (entries.length > 0) {
    await loadWorkspace(entries[0].id);
  } else {
    render();
  }
}

async function loadWorkspace(id: string): Promise<void> {
  try {
    state = withWorkspace(state, await api.getWorkspace(id));
    lastPlanId = null;
  } catch (err) {
    state = withToast(state, `failed to load workspace: ${(err as Error).message}`);
  }
  render();
}

async function evaluateSelection(): Promise<void> {
  if (!canEvaluate(state) || !state.workspace || !state.selectedController) return;
  const doc = await api
    .evaluate(state.workspace.id, {
      moved_controllers: [state.selectedController],
      target_switch_ids: state.selectedTargets,
      rehoming_month: state.rehomingMonth,
    })
    .catch((err: unknown) => {
      state = withToast(
        state,
        err instanceof ApiError ? `${err.code}: ${err.message}` : "network failure; selection kept",
      );
      return null;
    });
  if (doc) state = withEvaluation(state, doc);
  render();
}

async function runPlanner(): Promise<void> {
  if (!state.workspace) return;
  try {
    const plan = await api.plan(state.workspace.id, {});
    lastPlanId = plan.plan_id;
    const summary =
      `backend ${esc(plan.backend)}, savings <strong data-value="${esc(String(plan.cost_report.savings))}">` +
      `${esc(String(plan.cost_report.savings))}</strong>, feasible: ${plan.feasible}`;
    $("plan-summary").innerHTML = summary;
  } catch (err) {
    state = withToast(state, `planning failed: ${(err as Error).message}`);
  }
  render();
}

function triggerDownload(filename: string, mimeType: string, content: string): void {
  const blob = new Blob([content], { type: mimeType });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}

async function exportRunbook(): Promise<void> {
  if (!state.workspace || !lastPlanId) return;
  try {
    const doc = await api.runbook(state.workspace.id, lastPlanId);
    const text = await api.runbookText(state.workspace.id, lastPlanId);
    $("runbook").innerHTML = runbookView(doc);
    for (const payload of runbookDownloads(doc, text)) {
      triggerDownload(payload.filename, payload.mimeType, payload.content);
    }
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      state = withToast(state, "plan is stale; re-run the optimizer");
      lastPlanId = null;
    } else {
      state = withToast(state, `runbook export failed: ${(err as Error).message}`);
    }
    render();
  }
}

function wire(): void {
  $("topology").addEventListener("click", (event) => {
    const target = event.target as Element;
    const ctrl = target.closest("[data-controller-id]");
    if (ctrl) {
      state = selectController(state, ctrl.getAttribute("data-controller-id")!);
      render();
      return;
    }
    const sw = target.closest("[data-switch-id]");
    if (sw && state.selectedController) {
      if (sw.getAttribute("data-switch-kind") === "msc2g") {
        state = selectMscTarget(state, sw.getAttribute("data-switch-id")!);
      } else {
        const box = target.closest("[data-mss-id]");
        if (box) state = selectMssTargets(state, box.getAttribute("data-mss-id")!);
      }
      render();
      void evaluateSelection();
      return;
    }
    const mss = target.closest("[data-mss-id]");
    if (mss && state.selectedController) {
      state = selectMssTargets(state, mss.getAttribute("data-mss-id")!);
      render();
      void evaluateSelection();
    }
  });

  $("month").addEventListener("change", (event) => {
    state = setMonth(state, Number((event.target as HTMLInputElement).value) || 1);
  });
  $("evaluate").addEventListener("click", () => void evaluateSelection());
  $("plan").addEventListener("click", () => void runPlanner());
  $("export-runbook").addEventListener("click", () => void exportRunbook());
  ($("workspace-select") as HTMLSelectElement).addEventListener("change", (event) => {
    void loadWorkspace((event.target as HTMLSelectElement).value);
  });

  $("upload-form").addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      try {
        const read = async (inputId: string) => {
          const input = $(inputId) as HTMLInputElement;
          const file = input.files?.[0];
          return file ? JSON.parse(await file.text()) : null;
        };
        const topology = await read("upload-topology");
        const forecasts = await read("upload-forecast");
        const config = await read("upload-config");
        if (!topology || !forecasts) {
          state = withToast(state, "topology and forecast files are required");
          render();
          return;
        }
        const ws = await api.createWorkspace({ topology, forecasts, config: config ?? undefined });
        await refreshWorkspaces();
        await loadWorkspace(ws.id);
      } catch (err) {
        state = withToast(state, `upload failed: ${(err as Error).message}`);
        render();
      }
    })();
  });
}

wire();
void refreshWorkspaces().catch(() => {
  state = withToast(state, "cannot reach the planner API");
  render();
});
