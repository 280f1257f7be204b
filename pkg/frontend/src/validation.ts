/**
 * Client-side form validation mirroring the server's invariants, so most
 * bad requests never leave the browser. The server remains the authority;
 * anything that slips through still gets a 400/422 back.
 */

import type { OptimizeRequest } from './types';

export interface FormFields {
  rotorCount: string;
  totalWeightN: string;
  hoverThrustN: string;
  thrustRatio: string;
  altitudeM: string;
  enduranceMin: string;
  otherCurrentA: string;
  tempC: string;
}

export type ValidationResult =
  | { ok: true; request: OptimizeRequest }
  | { ok: false; errors: Partial<Record<keyof FormFields, string>> };

function parseNumber(raw: string): number | null {
  if (raw.trim() === '') return null;
  const value = Number(raw);
  return Number.isFinite(value) ? value : NaN;
}

export function validateForm(fields: FormFields): ValidationResult {
  const errors: Partial<Record<keyof FormFields, string>> = {};

  const rotors = parseNumber(fields.rotorCount);
  if (rotors === null || Number.isNaN(rotors) || !Number.isInteger(rotors) || rotors < 2) {
    errors.rotorCount = 'rotor count must be an integer of at least 2';
  }

  const weight = parseNumber(fields.totalWeightN);
  const thrust = parseNumber(fields.hoverThrustN);
  if (Number.isNaN(weight)) errors.totalWeightN = 'not a number';
  if (Number.isNaN(thrust)) errors.hoverThrustN = 'not a number';
  const hasWeight = weight !== null && !Number.isNaN(weight);
  const hasThrust = thrust !== null && !Number.isNaN(thrust);
  if (hasWeight === hasThrust) {
    errors.totalWeightN = 'give exactly one of total weight or hover thrust';
  } else if (hasWeight && weight! <= 0) {
    errors.totalWeightN = 'weight must be positive';
  } else if (hasThrust && thrust! <= 0) {
    errors.hoverThrustN = 'thrust must be positive';
  }

  const gamma = parseNumber(fields.thrustRatio);
  if (gamma === null || Number.isNaN(gamma) || gamma <= 0 || gamma >= 1) {
    errors.thrustRatio = 'thrust ratio must be strictly between 0 and 1';
  }

  const altitude = parseNumber(fields.altitudeM);
  if (altitude === null || Number.isNaN(altitude) || altitude < 0) {
    errors.altitudeM = 'altitude must be zero or positive';
  }

  const endurance = parseNumber(fields.enduranceMin);
  if (endurance === null || Number.isNaN(endurance) || endurance <= 0) {
    errors.enduranceMin = 'endurance must be positive';
  }

  const other = parseNumber(fields.otherCurrentA);
  if (other !== null && (Number.isNaN(other) || other < 0)) {
    errors.otherCurrentA = 'avionics current must be zero or positive';
  }

  const temp = parseNumber(fields.tempC);
  if (temp !== null && Number.isNaN(temp)) {
    errors.tempC = 'not a number';
  }

  if (Object.keys(errors).length > 0) {
    return { ok: false, errors };
  }

  const request: OptimizeRequest = {
    rotor_count: rotors as number,
    thrust_ratio: gamma as number,
    altitude_m: altitude as number,
    endurance_min: endurance as number,
  };
  if (hasWeight) request.total_weight_n = weight as number;
  if (hasThrust) request.hover_thrust_n = thrust as number;
  if (other !== null) request.other_current_a = other;
  if (temp !== null) request.temp_c = temp;
  return { ok: true, request };
}
