/**
 * Results panel rendering. Everything shown comes straight out of the API
 * payload; the only transformations are unit display conversions.
 */

import type { ApiErrorDoc, DesignResultDoc, TraceStepDoc } from './types';
import {
  amps,
  cRate,
  escapeHtml,
  fmt,
  mah,
  metersWithInches,
  minutes,
  newtons,
  percent,
  voltsWithCells,
} from './format';

function productRow(kind: string, id: string, weightN: number): string {
  return `<tr><th>${escapeHtml(kind)}</th>` +
    `<td class="product-id">${escapeHtml(id)}</td>` +
    `<td>${newtons(weightN)}</td></tr>`;
}

function traceRow(step: TraceStepDoc): string {
  const outs = Object.entries(step.outputs)
    .map(([key, value]) => {
      const shown = typeof value === 'number' ? fmt(value, 4) : String(value);
      return `${escapeHtml(key)}=${escapeHtml(shown)}`;
    })
    .join(', ');
  return `<li value="${step.step}"><span class="trace-name">${escapeHtml(step.name)}</span>: ${outs}</li>`;
}

export function renderResults(doc: DesignResultDoc): string {
  const p = doc.products;
  const perf = doc.performance;
  const opt = doc.optimal;

  const violations = perf.violations.length === 0
    ? '<p class="safety-ok">All safety checks passed.</p>'
    : '<ul class="safety-bad">' +
      perf.violations
        .map((v) => `<li>${escapeHtml(v.code)}: ${escapeHtml(v.message)}</li>`)
        .join('') +
      '</ul>';

  return `
<section class="results">
  <h2>Selected products</h2>
  <table class="products">
    <tbody>
      ${productRow('Propeller', p.propeller.id, p.propeller.weight_n)}
      ${productRow('Motor', p.motor.id, p.motor.weight_n)}
      ${productRow('ESC', p.esc.id, p.esc.weight_n)}
      ${productRow('Battery', p.battery.id, p.battery.weight_n)}
    </tbody>
  </table>

  <h2>Performance</h2>
  <dl class="performance">
    <dt>Hover endurance</dt><dd class="endurance">${minutes(perf.endurance_min)}</dd>
    <dt>Hover throttle</dt><dd>${percent(perf.hover.throttle)}</dd>
    <dt>Hover battery current</dt><dd>${amps(perf.hover_battery_current_a)}</dd>
    <dt>System weight</dt><dd>${perf.system_weight_n === null ? 'unknown' : newtons(perf.system_weight_n)}</dd>
    <dt>Motor / ESC / battery efficiency</dt>
    <dd>${percent(perf.motor_efficiency)} / ${percent(perf.esc_efficiency)} / ${percent(perf.battery_efficiency)}</dd>
  </dl>

  <h2>Sizing targets <small>(continuous, before product rounding)</small></h2>
  <dl class="optimal">
    <dt>Blades / pitch angle</dt>
    <dd>${opt.blade_count} blades, ${fmt(opt.pitch_angle_rad, 4)} rad</dd>
    <dt>Diameter</dt><dd>${metersWithInches(opt.diameter_m)}</dd>
    <dt>Motor</dt>
    <dd>${voltsWithCells(opt.motor_max_voltage_v)}, ${amps(opt.motor_max_current_a)}, ${fmt(opt.kv_rpm_per_v, 1)} RPM/V</dd>
    <dt>Battery</dt>
    <dd>${voltsWithCells(opt.battery_voltage_v)}, ${mah(opt.battery_capacity_mah)}, ${cRate(opt.battery_discharge_rate_c)}</dd>
  </dl>

  <h2>Safety checks</h2>
  ${violations}

  <h2>Sizing trace</h2>
  <ol class="trace">
    ${doc.trace.map(traceRow).join('\n    ')}
  </ol>
</section>`;
}

export function renderError(status: number, body: ApiErrorDoc): string {
  const where = body.step !== undefined
    ? `<p class="error-step">Failed at step ${body.step} (${escapeHtml(body.step_name ?? '')}).</p>`
    : '';
  const constraint = body.constraint
    ? `<p class="error-constraint">Binding constraint: ${escapeHtml(body.constraint)}</p>`
    : '';
  const kind = status === 422 ? 'Design infeasible' : 'Request rejected';
  return `
<section class="error-panel">
  <h2>${kind}</h2>
  <p class="error-message">${escapeHtml(body.error)}</p>
  ${where}
  ${constraint}
</section>`;
}
