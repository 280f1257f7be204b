/**
 * Page wiring: requirements form on the left, results panel on the right,
 * scenario history and comparison underneath.
 */

import { ApiError, postOptimize } from './api';
import { renderError, renderResults } from './results';
import { validateForm, type FormFields } from './validation';
import { renderCompare, renderCompareDisabled, ScenarioStore } from './whatif';

const store = new ScenarioStore();

function field(id: string): string {
  return (document.getElementById(id) as HTMLInputElement | null)?.value ?? '';
}

function readForm(): FormFields {
  return {
    rotorCount: field('rotor-count'),
    totalWeightN: field('total-weight-n'),
    hoverThrustN: field('hover-thrust-n'),
    thrustRatio: field('thrust-ratio'),
    altitudeM: field('altitude-m'),
    enduranceMin: field('endurance-min'),
    otherCurrentA: field('other-current-a'),
    tempC: field('temp-c'),
  };
}

function showFieldErrors(errors: Record<string, string>): void {
  document.querySelectorAll('.field-error').forEach((el) => (el.textContent = ''));
  for (const [key, message] of Object.entries(errors)) {
    const idMap: Record<string, string> = {
      rotorCount: 'rotor-count',
      totalWeightN: 'total-weight-n',
      hoverThrustN: 'hover-thrust-n',
      thrustRatio: 'thrust-ratio',
      altitudeM: 'altitude-m',
      enduranceMin: 'endurance-min',
      otherCurrentA: 'other-current-a',
      tempC: 'temp-c',
    };
    const target = document.querySelector(`#${idMap[key]} ~ .field-error`);
    if (target) target.textContent = message;
  }
}

function refreshHistory(): void {
  const list = document.getElementById('history');
  if (!list) return;
  list.innerHTML = store
    .list()
    .map((s, i) => `<li><label><input type="checkbox" value="${i}"> ${s.label}</label></li>`)
    .join('');
}

function refreshCompare(): void {
  const panel = document.getElementById('compare');
  if (!panel) return;
  const checked = Array.from(
    document.querySelectorAll<HTMLInputElement>('#history input:checked'),
  ).map((el) => Number(el.value));
  if (!store.canCompare || checked.length !== 2) {
    panel.innerHTML = renderCompareDisabled(store.list().length);
    return;
  }
  const a = store.get(checked[0]);
  const b = store.get(checked[1]);
  if (a && b) panel.innerHTML = renderCompare(a, b);
}

async function onSubmit(event: Event): Promise<void> {
  event.preventDefault();
  const results = document.getElementById('results');
  if (!results) return;

  const validated = validateForm(readForm());
  if (!validated.ok) {
    showFieldErrors(validated.errors as Record<string, string>);
    return;
  }
  showFieldErrors({});

  try {
    const doc = await postOptimize(validated.request);
    results.innerHTML = renderResults(doc);
    const label = `run ${store.list().length + 1}: ` +
      `${validated.request.endurance_min} min @ ${validated.request.rotor_count} rotors`;
    store.add(label, validated.request, doc);
    refreshHistory();
    refreshCompare();
  } catch (err) {
    if (err instanceof ApiError) {
      results.innerHTML = renderError(err.status, err.body);
    } else if ((err as Error).name !== 'AbortError') {
      results.innerHTML = renderError(0, { error: 'service unreachable' });
    }
  }
}

export function init(): void {
  document.getElementById('requirements-form')?.addEventListener('submit', onSubmit);
  document.getElementById('history')?.addEventListener('change', refreshCompare);
  document.getElementById('clear-history')?.addEventListener('click', () => {
    store.clear();
    refreshHistory();
    refreshCompare();
  });
  refreshCompare();
}

if (typeof document !== 'undefined' && document.readyState !== 'loading') {
  init();
} else if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', init);
}
