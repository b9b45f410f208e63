/** API document shapes, mirroring the planner's JSON wire formats. */

export interface MonthUtilization {
  n: number;
  traffic_erlang: number;
  bhca: number;
  trunks: number;
  ss7_util: number;
  label?: string;
}

export interface UtilizationSeries {
  switch_id: string;
  phase: "before_rehoming" | "after_rehoming";
  months: MonthUtilization[];
}

export interface Violation {
  rule: string;
  subject: string;
  message: string;
}

export interface ExpansionPlan {
  switch_id: string;
  month: number | null;
  trunks_to_add: number;
  new_switch_count: number;
  trunks_per_new_switch: number | null;
  feasible: boolean;
}

export interface SwitchCostReport {
  trunk_unit_price: number;
  switch_unit_price: number;
  cost_without_rehoming: number;
  cost_with_rehoming: number;
  savings: number;
  expansion_without: ExpansionPlan;
  expansion_with: ExpansionPlan;
}

export interface CostReport {
  trunk_unit_price?: number;
  switch_unit_price?: number;
  cost_without_rehoming: number;
  cost_with_rehoming: number;
  savings: number;
  per_switch: SwitchCostReport[];
}

export interface Classification {
  model_number: number;
  source_kind: string;
  target_kind: string;
}

export interface ScenarioEcho {
  moved_controllers: string[];
  source_switch_ids: string[];
  target_switch_ids: string[];
  rehoming_month: number;
  n_source: number;
  n_target: number;
}

export interface EvaluationDoc {
  scenario: ScenarioEcho;
  violations: Violation[];
  classification: Classification | null;
  deltas: unknown[] | null;
  before: UtilizationSeries[] | null;
  after: UtilizationSeries[] | null;
  cost_report: CostReport | null;
  recommended_rehoming_month: Record<string, number | null> | null;
}

export interface SwitchCapacity {
  bhca_installed: number;
  bhca_max: number;
  trunks_installed: number;
  trunks_max: number;
  ss7_installed: number;
  ss7_max: number;
  trunks_per_card: number;
  redundancy_factor: number;
}

export interface SwitchDoc {
  id: string;
  kind: "mgw3g" | "msc2g";
  market_id: string;
  mss_id?: string;
  capacity: SwitchCapacity;
}

export interface ControllerDoc {
  id: string;
  kind: "rnc" | "bsc";
  homed_to: string[];
  trunks: number;
  traffic_erlang: number;
}

export interface WorkspaceDoc {
  id: string;
  created_at: string;
  modified_at: string;
  topology: {
    markets: { id: string; name: string }[];
    mss: { id: string; controlled_mgw_ids: string[] }[];
    switches: SwitchDoc[];
    controllers: ControllerDoc[];
  };
  forecasts: { switch_id: string; months: { n: number; subscribers: number; label?: string }[] }[];
  config: Record<string, unknown>;
  scenarios: Record<string, unknown>;
  results: Record<string, unknown>;
  topology_violations?: Violation[];
}

export interface RunbookStepDoc {
  index: number;
  description: string;
  phase: string;
  preconditions: { field: string; value: unknown }[];
  effects: { field: string; value: unknown }[];
  depends_on: number[];
  adapted: boolean;
}

export interface RunbookDoc {
  plan_id: string;
  runbooks: { scenario: ScenarioEcho; steps: RunbookStepDoc[] }[];
}

export interface PlanDoc {
  plan_id: string;
  backend: string;
  objective: string;
  objective_value: number;
  feasible: boolean;
  scenarios: ScenarioEcho[];
  cost_report: CostReport;
  peak_utilization: { overall: number; per_switch: Record<string, number>; load_threshold: number };
}
