/**
 * What-if scenario storage and comparison. Scenarios are whole API runs;
 * the diff is computed on the stored payloads, never recomputed.
 */

import type { DesignResultDoc, OptimizeRequest, Scenario } from './types';
import { escapeHtml, fmt } from './format';

export const HISTORY_LIMIT = 10;

/** Bounded FIFO of past runs; the oldest run falls off first. */
export class ScenarioStore {
  private scenarios: Scenario[] = [];

  add(label: string, request: OptimizeRequest, result: DesignResultDoc): void {
    this.scenarios.push({ label, request, result });
    if (this.scenarios.length > HISTORY_LIMIT) {
      this.scenarios.splice(0, this.scenarios.length - HISTORY_LIMIT);
    }
  }

  list(): readonly Scenario[] {
    return this.scenarios;
  }

  get(index: number): Scenario | undefined {
    return this.scenarios[index];
  }

  clear(): void {
    this.scenarios = [];
  }

  get canCompare(): boolean {
    return this.scenarios.length >= 2;
  }
}

export interface DiffRow {
  section: 'requirements' | 'products' | 'performance';
  field: string;
  a: string;
  b: string;
  changed: boolean;
}

function row(
  section: DiffRow['section'],
  field: string,
  a: string,
  b: string,
): DiffRow {
  return { section, field, a, b, changed: a !== b };
}

function num(value: number | null | undefined, digits = 2): string {
  return value === null || value === undefined ? '' : fmt(value, digits);
}

export function diffScenarios(a: Scenario, b: Scenario): DiffRow[] {
  const rows: DiffRow[] = [];

  const reqFields: (keyof OptimizeRequest)[] = [
    'rotor_count',
    'total_weight_n',
    'hover_thrust_n',
    'thrust_ratio',
    'altitude_m',
    'endurance_min',
    'other_current_a',
    'temp_c',
  ];
  for (const field of reqFields) {
    const va = a.request[field];
    const vb = b.request[field];
    if (va === undefined && vb === undefined) continue;
    rows.push(row('requirements', field, num(va), num(vb)));
  }

  const pa = a.result.products;
  const pb = b.result.products;
  rows.push(row('products', 'propeller', pa.propeller.id, pb.propeller.id));
  rows.push(row('products', 'motor', pa.motor.id, pb.motor.id));
  rows.push(row('products', 'esc', pa.esc.id, pb.esc.id));
  rows.push(row('products', 'battery', pa.battery.id, pb.battery.id));

  const fa = a.result.performance;
  const fb = b.result.performance;
  rows.push(row('performance', 'endurance_min', num(fa.endurance_min), num(fb.endurance_min)));
  rows.push(row('performance', 'system_weight_n', num(fa.system_weight_n), num(fb.system_weight_n)));
  rows.push(
    row(
      'performance',
      'hover_battery_current_a',
      num(fa.hover_battery_current_a),
      num(fb.hover_battery_current_a),
    ),
  );
  return rows;
}

export function renderCompare(a: Scenario, b: Scenario): string {
  const rows = diffScenarios(a, b)
    .map(
      (r) =>
        `<tr class="${r.changed ? 'diff-changed' : 'diff-same'}" data-section="${r.section}">` +
        `<td>${escapeHtml(r.field)}</td>` +
        `<td>${escapeHtml(r.a)}</td>` +
        `<td>${escapeHtml(r.b)}</td></tr>`,
    )
    .join('\n    ');
  return `
<section class="whatif">
  <h2>Scenario comparison</h2>
  <table class="diff">
    <thead>
      <tr><th></th><th>${escapeHtml(a.label)}</th><th>${escapeHtml(b.label)}</th></tr>
    </thead>
    <tbody>
    ${rows}
    </tbody>
  </table>
</section>`;
}

export function renderCompareDisabled(count: number): string {
  return `
<section class="whatif whatif-disabled">
  <p>Run at least two scenarios to compare (${count} stored).</p>
</section>`;
}
