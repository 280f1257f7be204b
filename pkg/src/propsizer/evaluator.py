"""Forward performance evaluation of a fully specified propulsion system.

Given concrete component parameters, computes the hover operating point
(with the ESC/battery voltage coupling resolved by fixed-point iteration),
the full-throttle capability (bisection on rotational speed), endurance and
the safety-constraint check used by both the analytical optimizer and the
brute-force baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BrownoutError,
    ConvergenceError,
    DomainError,
    ModelInconsistencyError,
    ThrottleInfeasibleError,
)
from .models import (
    BatteryParams,
    BladeCoeffs,
    CARBON_FIBER_BLADES,
    DEFAULT_OTHER_CURRENT,
    Environment,
    EscParams,
    MotorParams,
    OperatingPoint,
    PropellerParams,
    discharge_time,
    esc_efficiency,
    motor_efficiency,
    motor_im_um,
    motor_limits,
    motor_theoretical_max_thrust,
    prop_speed_for_thrust,
    prop_thrust_torque,
)

HOVER_TOL_A = 1e-6
HOVER_MAX_ITER = 100
FULL_THROTTLE_REL_TOL = 1e-6


class EvalCounter:
    """Counts evaluator invocations; used for complexity accounting."""

    def __init__(self):
        self.hover_evals = 0
        self.full_throttle_evals = 0


@dataclass(frozen=True)
class PropulsionSystem:
    propeller: PropellerParams
    motor: MotorParams
    esc: EscParams
    battery: BatteryParams
    rotor_count: int
    environment: Environment = Environment(0.0)
    other_current_a: float = DEFAULT_OTHER_CURRENT
    blades: BladeCoeffs = CARBON_FIBER_BLADES

    def coeffs(self) -> tuple[float, float]:
        return self.propeller.coeffs(self.blades)


@dataclass(frozen=True)
class SafetyViolation:
    code: str
    message: str
    limit: float
    actual: float


@dataclass(frozen=True)
class PerformanceReport:
    hover: OperatingPoint
    hover_battery_current_a: float
    endurance_min: float
    full_throttle: OperatingPoint | None
    system_weight_n: float | None
    prop_efficiency_index: float   # thrust/torque coefficient ratio
    motor_efficiency: float
    esc_efficiency: float
    battery_efficiency: float
    violations: tuple[SafetyViolation, ...] = ()

    @property
    def feasible(self) -> bool:
        return not self.violations


def _bus_throttle(u_m: float, i_m: float, system: PropulsionSystem) -> tuple[float, float, float]:
    """Resolve the ESC/battery coupling for one motor state.

    Returns (sigma, esc current, bus voltage). The coupling is a fixed point
    because the bus voltage sags with the total current, which itself scales
    with throttle; iteration converges quickly for realistic resistances and
    a 0.5 damping factor covers oscillatory cases.
    """
    u_b = system.battery.voltage_v
    r_b = system.battery.resistance_ohm
    r_e = system.esc.resistance_ohm
    n_p = system.rotor_count
    i_other = system.other_current_a

    u_e = u_b
    i_b = 0.0
    prev_delta = None
    damping = 1.0
    for _ in range(HOVER_MAX_ITER):
        if u_e <= 0:
            raise BrownoutError(f"bus voltage collapsed to {u_e:.2f} V")
        sigma = (u_m + i_m * r_e) / u_e
        i_e = sigma * i_m
        i_b_new = n_p * i_e + i_other
        delta = i_b_new - i_b
        if prev_delta is not None and delta * prev_delta < 0:
            damping = 0.5
        i_b = i_b + damping * delta
        prev_delta = delta
        u_e = u_b - i_b * r_b
        if abs(delta) < HOVER_TOL_A:
            if u_e <= 0:
                raise BrownoutError(f"bus voltage collapsed to {u_e:.2f} V")
            return sigma, i_e, u_e
    raise ConvergenceError("ESC/battery coupling did not converge")


def hover_point(
    system: PropulsionSystem,
    hover_thrust_n: float,
    counter: EvalCounter | None = None,
) -> tuple[OperatingPoint, float]:
    """Operating point holding a per-propeller thrust, and the battery current."""
    if hover_thrust_n <= 0:
        raise DomainError("hover thrust must be positive")
    if counter is not None:
        counter.hover_evals += 1
    rho = system.environment.air_density
    c_t, c_m = system.coeffs()
    d_p = system.propeller.diameter_m

    speed = prop_speed_for_thrust(hover_thrust_n, d_p, c_t, rho)
    thrust, torque = prop_thrust_torque(speed, d_p, c_t, c_m, rho)
    i_m, u_m = motor_im_um(torque, speed, system.motor)
    sigma, i_e, u_e = _bus_throttle(u_m, i_m, system)
    if sigma > 1.0:
        raise ThrottleInfeasibleError(
            f"hover needs throttle {sigma:.3f}; system cannot hold "
            f"{hover_thrust_n:.1f} N per propeller"
        )
    i_b = system.rotor_count * i_e + system.other_current_a
    point = OperatingPoint(
        speed_rpm=speed,
        torque_nm=torque,
        thrust_n=thrust,
        motor_voltage_v=u_m,
        motor_current_a=i_m,
        throttle=sigma,
        esc_voltage_v=u_e,
        esc_current_a=i_e,
        battery_current_a=i_b,
    )
    return point, i_b


def full_throttle_point(system: PropulsionSystem, counter: EvalCounter | None = None) -> OperatingPoint:
    """Steady state at full throttle: speed where the circuit balances sigma=1."""
    if counter is not None:
        counter.full_throttle_evals += 1
    rho = system.environment.air_density
    c_t, c_m = system.coeffs()
    d_p = system.propeller.diameter_m
    n_ideal = system.battery.voltage_v * system.motor.kv_rpm_per_v

    def throttle_needed(speed: float) -> float:
        _, torque = prop_thrust_torque(speed, d_p, c_t, c_m, rho)
        i_m, u_m = motor_im_um(torque, speed, system.motor)
        try:
            sigma, _, _ = _bus_throttle(u_m, i_m, system)
        except BrownoutError:
            # a probe speed that collapses the bus is just deep into the
            # over-throttle region; keep bisecting downward
            return math.inf
        return sigma

    lo, hi = 0.0, 1.5 * n_ideal
    if throttle_needed(hi) < 1.0:
        raise ModelInconsistencyError(
            "no full-throttle balance below 1.5x the ideal no-load speed"
        )
    # sigma(N) is monotone increasing, so plain bisection is robust.
    while hi - lo > FULL_THROTTLE_REL_TOL * n_ideal:
        mid = 0.5 * (lo + hi)
        if throttle_needed(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    speed = 0.5 * (lo + hi)
    thrust, torque = prop_thrust_torque(speed, d_p, c_t, c_m, rho)
    i_m, u_m = motor_im_um(torque, speed, system.motor)
    sigma, i_e, u_e = _bus_throttle(u_m, i_m, system)
    i_b = system.rotor_count * i_e + system.other_current_a
    return OperatingPoint(
        speed_rpm=speed,
        torque_nm=torque,
        thrust_n=thrust,
        motor_voltage_v=u_m,
        motor_current_a=i_m,
        throttle=sigma,
        esc_voltage_v=u_e,
        esc_current_a=i_e,
        battery_current_a=i_b,
    )


def endurance(
    system: PropulsionSystem,
    hover_thrust_n: float,
    counter: EvalCounter | None = None,
) -> float:
    """Hover endurance in minutes with the 15% capacity reserve."""
    _, i_b = hover_point(system, hover_thrust_n, counter)
    return discharge_time(system.battery.capacity_mah, i_b)


def check_safety(
    system: PropulsionSystem,
    max_thrust_n: float,
    counter: EvalCounter | None = None,
) -> list[SafetyViolation]:
    """Cross-component safety constraints; an empty list means all pass."""
    v: list[SafetyViolation] = []
    mot, esc, bat = system.motor, system.esc, system.battery

    if bat.voltage_v > mot.max_voltage_v:
        v.append(
            SafetyViolation(
                "battery-voltage-motor",
                "battery voltage exceeds the motor voltage rating",
                mot.max_voltage_v,
                bat.voltage_v,
            )
        )
    if bat.voltage_v > esc.max_voltage_v:
        v.append(
            SafetyViolation(
                "battery-voltage-esc",
                "battery voltage exceeds the ESC voltage rating",
                esc.max_voltage_v,
                bat.voltage_v,
            )
        )
    if mot.max_current_a > esc.max_current_a:
        v.append(
            SafetyViolation(
                "motor-current-esc",
                "motor current rating exceeds the ESC current rating",
                esc.max_current_a,
                mot.max_current_a,
            )
        )

    c_t, c_m = system.coeffs()
    rho = system.environment.air_density
    try:
        t_p_max = motor_theoretical_max_thrust(mot, c_t, c_m, rho)
    except Exception as exc:
        v.append(SafetyViolation("motor-envelope", str(exc), 0.0, 0.0))
        t_p_max = None
    if t_p_max is not None and t_p_max < max_thrust_n:
        v.append(
            SafetyViolation(
                "max-thrust",
                "motor/propeller pair cannot reach the required maximum thrust",
                max_thrust_n,
                t_p_max,
            )
        )

    try:
        ft = full_throttle_point(system, counter)
    except Exception as exc:
        v.append(SafetyViolation("full-throttle", str(exc), 0.0, 0.0))
    else:
        if ft.motor_current_a > mot.max_current_a:
            v.append(
                SafetyViolation(
                    "motor-current",
                    "full-throttle motor current exceeds the motor rating",
                    mot.max_current_a,
                    ft.motor_current_a,
                )
            )

    required = system.rotor_count * mot.max_current_a + system.other_current_a
    if bat.max_discharge_current_a < required:
        v.append(
            SafetyViolation(
                "battery-discharge",
                "battery cannot supply the full-throttle system current",
                required,
                bat.max_discharge_current_a,
            )
        )
    return v


def system_weight(
    system: PropulsionSystem,
    weight_models=None,
    max_thrust_n: float | None = None,
) -> float:
    """Total propulsion weight: per-rotor components plus the battery.

    Missing component weights are predicted from the fitted weight surfaces
    when available; the battery falls back to the energy-density model.
    """
    from .models import battery_weight

    def component_weight(params, predictor, *features):
        if params.weight_n is not None:
            return params.weight_n
        if weight_models is None:
            raise DomainError(
                "component weight unknown and no weight models supplied"
            )
        return predictor.predict(*features)

    g_p = component_weight(
        system.propeller,
        weight_models.propeller if weight_models else None,
        float(system.propeller.blade_count),
        system.propeller.diameter_m,
    )
    if system.motor.weight_n is not None:
        g_m = system.motor.weight_n
    else:
        if weight_models is None:
            raise DomainError("component weight unknown and no weight models supplied")
        c_t, c_m = system.coeffs()
        t_ref = max_thrust_n if max_thrust_n is not None else motor_theoretical_max_thrust(
            system.motor, c_t, c_m, system.environment.air_density
        )
        g_m = weight_models.motor.predict(system.motor.max_voltage_v, t_ref)
    g_e = component_weight(
        system.esc,
        weight_models.esc if weight_models else None,
        system.esc.max_voltage_v,
        system.esc.max_current_a,
    )
    if system.battery.weight_n is not None:
        g_b = system.battery.weight_n
    else:
        g_b = battery_weight(
            system.battery.capacity_mah,
            system.battery.voltage_v,
            system.battery.energy_density_wh_per_kg,
        )
    return system.rotor_count * (g_p + g_m + g_e) + g_b


def evaluate(
    system: PropulsionSystem,
    hover_thrust_n: float,
    max_thrust_n: float | None = None,
    weight_models=None,
    counter: EvalCounter | None = None,
) -> PerformanceReport:
    """Full report: hover state, endurance, full-throttle state, efficiencies."""
    point, i_b = hover_point(system, hover_thrust_n, counter)
    t_hover = discharge_time(system.battery.capacity_mah, i_b)
    c_t, c_m = system.coeffs()

    eta_m = motor_efficiency(
        point.motor_voltage_v,
        point.motor_current_a,
        system.motor.resistance_ohm,
        system.motor.no_load_current_a,
    )
    eta_e = esc_efficiency(
        point.motor_voltage_v, point.motor_current_a, system.esc.resistance_ohm
    )
    eta_b = (1.0 - i_b * system.battery.resistance_ohm / system.battery.voltage_v) * (
        1.0 - system.other_current_a / i_b
    )
    if not 0.0 < eta_b <= 1.0:
        raise ModelInconsistencyError(f"battery efficiency {eta_b:.4f} outside (0, 1]")

    t_max = max_thrust_n if max_thrust_n is not None else hover_thrust_n
    violations = tuple(check_safety(system, t_max, counter))
    try:
        ft = full_throttle_point(system, counter)
    except Exception:
        ft = None
    try:
        weight = system_weight(system, weight_models, max_thrust_n=t_max)
    except DomainError:
        weight = None
    return PerformanceReport(
        hover=point,
        hover_battery_current_a=i_b,
        endurance_min=t_hover,
        full_throttle=ft,
        system_weight_n=weight,
        prop_efficiency_index=c_t / c_m,
        motor_efficiency=eta_m,
        esc_efficiency=eta_e,
        battery_efficiency=eta_b,
        violations=violations,
    )
