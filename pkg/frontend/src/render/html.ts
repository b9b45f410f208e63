export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Numbers shown to the planner are stringified API values, nothing computed. */
export function num(value: number): string {
  return esc(String(value));
}
