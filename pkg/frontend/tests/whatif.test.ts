import { describe, expect, it } from 'vitest';
import { ScenarioStore, diffScenarios, renderCompare } from '../src/whatif';
import type { Scenario } from '../src/types';
import { hover12, hover17 } from './fixtures';

function scenario(label: string, enduranceMin: number, doc = hover17()): Scenario {
  return {
    label,
    request: {
      rotor_count: 4,
      hover_thrust_n: 98.0,
      thrust_ratio: 0.5,
      altitude_m: 0,
      endurance_min: enduranceMin,
    },
    result: doc,
  };
}

describe('what-if compare', () => {
  it('flags only battery deltas for two runs differing only in hover time', () => {
    const a = scenario('17 min hover', 17, hover17());
    const b = scenario('12 min hover', 12, hover12());
    const rows = diffScenarios(a, b);

    const changedProducts = rows.filter((r) => r.section === 'products' && r.changed);
    expect(changedProducts.map((r) => r.field)).toEqual(['battery']);

    const unchangedProducts = rows.filter((r) => r.section === 'products' && !r.changed);
    expect(unchangedProducts.map((r) => r.field).sort()).toEqual(['esc', 'motor', 'propeller']);

    // the only requirement delta is the hover time itself
    const changedReqs = rows.filter((r) => r.section === 'requirements' && r.changed);
    expect(changedReqs.map((r) => r.field)).toEqual(['endurance_min']);
  });

  it('marks battery-driven performance deltas alongside the pack change', () => {
    const rows = diffScenarios(scenario('a', 17, hover17()), scenario('b', 12, hover12()));
    const endurance = rows.find((r) => r.section === 'performance' && r.field === 'endurance_min');
    expect(endurance?.changed).toBe(true);
  });

  it('reports zero changed rows for identical scenarios', () => {
    const rows = diffScenarios(scenario('a', 17), scenario('b', 17));
    expect(rows.some((r) => r.changed)).toBe(false);
  });

  it('renders changed rows with the highlight class and unchanged rows without it', () => {
    const html = renderCompare(scenario('17 min', 17, hover17()), scenario('12 min', 12, hover12()));
    expect(html).toContain('diff-changed');
    expect(html).toContain('diff-same');
    expect(html).toContain('TATTU 6S 15C 16000mAh x2S1P');
    expect(html).toContain('TATTU 6S 15C 12000mAh x2S1P');

    // every highlighted row should be the battery, the hover-time input,
    // or a performance figure; the motor/prop/esc rows stay unhighlighted
    const changedRows = html
      .split('<tr')
      .filter((chunk) => chunk.includes('diff-changed'));
    expect(changedRows.length).toBeGreaterThan(0);
    for (const row of changedRows) {
      expect(row).not.toContain('<td>motor</td>');
      expect(row).not.toContain('<td>propeller</td>');
      expect(row).not.toContain('<td>esc</td>');
    }
  });
});

describe('scenario history', () => {
  it('keeps at most ten scenarios, evicting the oldest first', () => {
    const store = new ScenarioStore();
    for (let i = 0; i < 13; i++) {
      const s = scenario(`run ${i}`, 10 + i);
      store.add(s.label, s.request, s.result);
    }
    const labels = store.list().map((s) => s.label);
    expect(labels).toHaveLength(10);
    expect(labels[0]).toBe('run 3');
    expect(labels[9]).toBe('run 12');
  });

  it('cannot compare with fewer than two stored runs', () => {
    const store = new ScenarioStore();
    expect(store.canCompare).toBe(false);
    const one = scenario('only one', 17);
    store.add(one.label, one.request, one.result);
    expect(store.canCompare).toBe(false);
    const two = scenario('second', 12);
    store.add(two.label, two.request, two.result);
    expect(store.canCompare).toBe(true);
  });

  it('clear empties the history', () => {
    const store = new ScenarioStore();
    const a = scenario('a', 17);
    const b = scenario('b', 12);
    store.add(a.label, a.request, a.result);
    store.add(b.label, b.request, b.result);
    store.clear();
    expect(store.list()).toHaveLength(0);
    expect(store.canCompare).toBe(false);
  });
});
