/**
 * Display formatting. Pure unit conversions for showing the same number in
 * SI and hobbyist conventions; no physics happens here.
 */

const INCH_M = 0.0254;
const CELL_VOLTS = 4.0;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function fmt(value: number, digits = 1): string {
  return value.toFixed(digits);
}

/** "0.7366 m (29.0 in)" */
export function metersWithInches(m: number): string {
  return `${fmt(m, 4)} m (${fmt(m / INCH_M, 1)} in)`;
}

/** "48 V (12S)" */
export function voltsWithCells(v: number): string {
  return `${fmt(v, 0)} V (${Math.round(v / CELL_VOLTS)}S)`;
}

export function minutes(min: number): string {
  return `${fmt(min, 1)} min`;
}

export function newtons(n: number): string {
  return `${fmt(n, 1)} N`;
}

export function amps(a: number): string {
  return `${fmt(a, 1)} A`;
}

export function mah(c: number): string {
  return `${fmt(c, 0)} mAh`;
}

export function cRate(k: number): string {
  return `${fmt(k, 1)} C`;
}

export function percent(x: number): string {
  return `${fmt(100 * x, 1)}%`;
}
