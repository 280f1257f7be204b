/**
 * Shapes of the JSON documents the sizing service returns.
 * These mirror the server's serializer; the UI never invents fields.
 */

export interface RequirementsDoc {
  rotor_count: number;
  hover_thrust_n: number;
  max_thrust_n: number;
  thrust_ratio: number;
  altitude_m: number;
  endurance_min: number;
  other_current_a: number;
  total_weight_n: number | null;
  temp_c: number;
}

export interface OperatingPointDoc {
  speed_rpm: number;
  torque_nm: number;
  thrust_n: number;
  motor_voltage_v: number;
  motor_current_a: number;
  throttle: number;
  esc_voltage_v: number;
  esc_current_a: number;
  battery_current_a: number;
}

export interface ProductDoc {
  id: string;
  class: string;
  params: Record<string, number>;
  weight_n: number;
  source: string;
}

export interface BatteryPackDoc {
  id: string;
  base: ProductDoc;
  series: number;
  parallel: number;
  params: Record<string, number>;
  weight_n: number;
}

export interface SafetyViolationDoc {
  code: string;
  message: string;
  limit: number;
  actual: number;
}

export interface PerformanceDoc {
  hover: OperatingPointDoc;
  hover_battery_current_a: number;
  endurance_min: number;
  full_throttle: OperatingPointDoc | null;
  system_weight_n: number | null;
  prop_efficiency_index: number;
  motor_efficiency: number;
  esc_efficiency: number;
  battery_efficiency: number;
  feasible: boolean;
  violations: SafetyViolationDoc[];
}

export interface TraceStepDoc {
  step: number;
  name: string;
  inputs: Record<string, unknown>;
  outputs: Record<string, unknown>;
}

export interface OptimalDoc {
  blade_count: number;
  pitch_angle_rad: number;
  diameter_m: number;
  pitch_m: number;
  motor_max_voltage_v: number;
  motor_max_current_a: number;
  kv_rpm_per_v: number;
  esc_max_voltage_v: number;
  esc_max_current_a: number;
  battery_voltage_v: number;
  battery_capacity_mah: number;
  battery_discharge_rate_c: number;
  max_thrust_n: number;
  kv_scale: number;
  motor_resistance_ohm: number;
  motor_no_load_current_a: number;
  esc_resistance_ohm: number;
  battery_resistance_ohm: number;
}

export interface DesignResultDoc {
  requirements: RequirementsDoc;
  optimal: OptimalDoc;
  products: {
    propeller: ProductDoc;
    motor: ProductDoc;
    esc: ProductDoc;
    battery: BatteryPackDoc;
  };
  performance: PerformanceDoc;
  trace: TraceStepDoc[];
}

/** 422 body: the design is infeasible; 400 body: the request was malformed. */
export interface ApiErrorDoc {
  error: string;
  constraint?: string;
  step?: number;
  step_name?: string;
}

/** What the requirements form submits to POST /api/optimize. */
export interface OptimizeRequest {
  rotor_count: number;
  total_weight_n?: number;
  hover_thrust_n?: number;
  thrust_ratio: number;
  altitude_m: number;
  endurance_min: number;
  other_current_a?: number;
  temp_c?: number;
}

/** One stored run: what was asked plus what came back. */
export interface Scenario {
  label: string;
  request: OptimizeRequest;
  result: DesignResultDoc;
}
