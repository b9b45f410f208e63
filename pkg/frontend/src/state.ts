/** View state and its pure transitions.
 *
 * The comparison panel only ever holds a successful evaluate response;
 * violations and comparison data are mutually exclusive by construction.
 * Everything rendered from here came verbatim off the API.
 */

import type { EvaluationDoc, Violation, WorkspaceDoc } from "./types.js";

export interface ViewState {
  workspace: WorkspaceDoc | null;
  selectedController: string | null;
  selectedTargets: string[];
  rehomingMonth: number;
  comparison: EvaluationDoc | null;
  violations: Violation[];
  toast: string | null;
}

export function initialState(): ViewState {
  return {
    workspace: null,
    selectedController: null,
    selectedTargets: [],
    rehomingMonth: 1,
    comparison: null,
    violations: [],
    toast: null,
  };
}

export function withWorkspace(_state: ViewState, workspace: WorkspaceDoc): ViewState {
  return { ...initialState(), workspace };
}

export function selectController(state: ViewState, controllerId: string): ViewState {
  return {
    ...state,
    selectedController: controllerId,
    selectedTargets: [],
    comparison: null,
    violations: [],
  };
}

/** Clicking an MSS selects every MGW it controls in the controller's market. */
export function selectMssTargets(state: ViewState, mssId: string): ViewState {
  if (!state.workspace || !state.selectedController) return state;
  const topo = state.workspace.topology;
  const controller = topo.controllers.find((c) => c.id === state.selectedController);
  if (!controller) return state;
  const homeSwitch = topo.switches.find((s) => s.id === controller.homed_to[0]);
  if (!homeSwitch) return state;
  const mss = topo.mss.find((m) => m.id === mssId);
  if (!mss) return state;
  const targets = topo.switches
    .filter((s) => mss.controlled_mgw_ids.includes(s.id) && s.market_id === homeSwitch.market_id)
    .map((s) => s.id)
    .sort();
  return { ...state, selectedTargets: targets, comparison: null, violations: [] };
}

export function selectMscTarget(state: ViewState, switchId: string): ViewState {
  return { ...state, selectedTargets: [switchId], comparison: null, violations: [] };
}

export function setMonth(state: ViewState, month: number): ViewState {
  return { ...state, rehomingMonth: month };
}

export function withEvaluation(state: ViewState, doc: EvaluationDoc): ViewState {
  if (doc.violations.length > 0) {
    return { ...state, comparison: null, violations: doc.violations };
  }
  return { ...state, comparison: doc, violations: [] };
}

/** Network trouble keeps prior state and surfaces a non-destructive toast. */
export function withToast(state: ViewState, message: string): ViewState {
  return { ...state, toast: message };
}

export function canEvaluate(state: ViewState): boolean {
  return Boolean(state.workspace && state.selectedController && state.selectedTargets.length > 0);
}
