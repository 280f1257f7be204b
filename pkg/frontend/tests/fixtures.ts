import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import type { ApiErrorDoc, DesignResultDoc } from '../src/types';

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, '..', 'fixtures', name), 'utf-8')) as T;
}

/** Recorded response for the 196 N / 4-rotor / 17-minute reference run. */
export const hover17 = (): DesignResultDoc => load('optimize-hover17.json');

/** Same requirements, only the hover time lowered to 12 minutes. */
export const hover12 = (): DesignResultDoc => load('optimize-hover12.json');

/** Recorded 422 body for an absurd weight. */
export const infeasible = (): ApiErrorDoc => load('optimize-infeasible.json');
