"""The twelve-step analytical sizing pipeline.

Order of business: propeller geometry targets, motor sizing and selection,
optimal propeller diameter from the selected motor, propeller selection, ESC
sizing/selection, then battery sizing/selection. Each step appends a trace
record so a result can be explained after the fact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .catalog import (
    BatteryPack,
    Catalogs,
    ProductRecord,
    select_battery,
    select_esc,
    select_motor,
    select_propeller,
)
from .errors import (
    CatalogRangeError,
    InfeasibleError,
    SelectionError,
)
from .evaluator import (
    EvalCounter,
    PerformanceReport,
    PropulsionSystem,
    evaluate,
    hover_point,
)
from .models import (
    BatteryParams,
    BladeCoeffs,
    CARBON_FIBER_BLADES,
    DesignRequirements,
    Environment,
    USABLE_CAPACITY_FRACTION,
    aero_coeffs,
    motor_limits,
)
from .statmodels import StatModels

# Catalog-mean fallback kicks in when fewer props than this sit near the
# analytically optimal pitch angle.
PITCH_FALLBACK_MIN_PRODUCTS = 3
PITCH_FALLBACK_BAND = 0.20


@dataclass(frozen=True)
class OptimalParams:
    """Continuous sizing targets before any product rounding."""

    blade_count: int
    pitch_angle_rad: float
    diameter_m: float
    pitch_m: float
    motor_max_voltage_v: float
    motor_max_current_a: float
    kv_rpm_per_v: float
    esc_max_voltage_v: float
    esc_max_current_a: float
    battery_voltage_v: float
    battery_capacity_mah: float
    battery_discharge_rate_c: float
    max_thrust_n: float          # the thrust the sizing is anchored to
    kv_scale: float              # intermediate constant of the KV expression
    # Efficiency targets: parasitics as close to zero as products allow.
    motor_resistance_ohm: float = 0.0
    motor_no_load_current_a: float = 0.0
    esc_resistance_ohm: float = 0.0
    battery_resistance_ohm: float = 0.0


@dataclass(frozen=True)
class TraceStep:
    step: int
    name: str
    inputs: dict
    outputs: dict


@dataclass(frozen=True)
class DesignResult:
    requirements: DesignRequirements
    optimal: OptimalParams
    propeller: ProductRecord
    motor: ProductRecord
    esc: ProductRecord
    battery: BatteryPack
    performance: PerformanceReport
    trace: tuple[TraceStep, ...] = field(default=())


def step1_blade_geometry(
    blades: BladeCoeffs,
    catalog=None,
    min_nearby: int = PITCH_FALLBACK_MIN_PRODUCTS,
) -> tuple[int, float]:
    """Blade count and pitch angle maximizing the thrust/torque ratio.

    Two blades always win (the ratio scales as 1/blade count) and the best
    pitch angle has a closed form. If the catalog carries too few products
    near that angle, the catalog mean is used instead so selection has
    something to work with.
    """
    blade_count = 2
    phi = math.sqrt(blades.k_m1 / blades.k_m2)
    if catalog is not None:
        angles = [r.params.pitch_angle_rad for r in catalog.records]
        if not angles:
            raise SelectionError(
                "no propeller satisfies: nonempty catalog",
                constraint="nonempty catalog",
            )
        nearby = [a for a in angles if abs(a - phi) <= PITCH_FALLBACK_BAND * phi]
        if len(nearby) < min_nearby:
            phi = sum(angles) / len(angles)
    return blade_count, phi


def kv_scale_constant(c_t: float, c_m: float, rho: float, kv_correction: float) -> float:
    """Constant folding the aero coefficients into the KV sizing expression."""
    return (kv_correction * 255.0 * rho * c_t**5 / (math.pi**4 * c_m**4)) ** 0.2


def step2_motor_sizing(
    max_thrust_n: float,
    rho: float,
    c_t: float,
    c_m: float,
    stat: StatModels,
    force_voltage_v: float | None = None,
) -> tuple[float, float, float, float]:
    """Voltage class, current rating and KV targets for the motor.

    The smallest voltage tier admitting the thrust sets the voltage; the
    power-to-thrust constant converts the resulting electrical power budget
    into a current rating; the KV target follows from the motor limit
    equations with the small parasitics dropped and a fitted correction.
    """
    u_mmax = (
        force_voltage_v
        if force_voltage_v is not None
        else stat.voltage_tiers.lookup(max_thrust_n)
    )
    i_mmax = stat.power_thrust.max_current_for(max_thrust_n, u_mmax)
    k_tm = kv_scale_constant(c_t, c_m, rho, stat.kv_correction)
    kv = k_tm**2.5 * i_mmax**2 * u_mmax / max_thrust_n**2.5
    return u_mmax, i_mmax, kv, k_tm


def step3_motor_efficiency_targets() -> tuple[float, float]:
    """Parasitic targets: zero resistance, zero no-load current."""
    return 0.0, 0.0


def step5_optimal_diameter(
    motor, rho: float, c_m: float, pitch_angle_rad: float
) -> tuple[float, float]:
    """Diameter at which the propeller load meets the motor's limits exactly.

    Using the selected product's actual ratings rather than the continuous
    targets keeps the propeller matched to the motor that will be bought.
    """
    n_max, m_max = motor_limits(motor)
    d_p = (3600.0 * m_max / (rho * c_m * n_max**2)) ** 0.2
    h_p = math.pi * d_p * math.tan(pitch_angle_rad)
    return d_p, h_p


def step7_esc_sizing(u_mmax: float, i_mmax: float) -> tuple[float, float]:
    """The ESC must cover exactly what the motor can draw."""
    return u_mmax, i_mmax


def step11_battery_sizing(
    system_sans_battery: tuple[ProductRecord, ProductRecord, ProductRecord],
    battery_voltage_v: float,
    motor_max_current_a: float,
    req: DesignRequirements,
    env: Environment,
    blades: BladeCoeffs,
    counter: EvalCounter | None = None,
) -> tuple[float, float, float]:
    """Capacity and discharge-rate targets from the hover current draw.

    The hover current is computed against an ideal pack (no internal
    resistance) at the target voltage; actual-pack endurance is re-checked
    after selection.
    """
    prop, motor, esc = system_sans_battery
    ideal = BatteryParams(
        voltage_v=battery_voltage_v,
        capacity_mah=1e6,
        max_discharge_rate_c=1e3,
        resistance_ohm=0.0,
    )
    system = PropulsionSystem(
        propeller=prop.params,
        motor=motor.params,
        esc=esc.params,
        battery=ideal,
        rotor_count=req.rotor_count,
        environment=env,
        other_current_a=req.other_current_a,
        blades=blades,
    )
    _, i_b0 = hover_point(system, req.hover_thrust_n, counter)
    capacity = req.endurance_min * i_b0 * 1000.0 / (USABLE_CAPACITY_FRACTION * 60.0)
    rate = 1000.0 * (req.rotor_count * motor_max_current_a + req.other_current_a) / capacity
    return capacity, rate, i_b0


def _fail(step: int, name: str, exc: Exception) -> InfeasibleError:
    err = InfeasibleError(f"step {step} ({name}): {exc}")
    err.step = step
    err.step_name = name
    err.__cause__ = exc
    return err


def optimize(
    req: DesignRequirements,
    catalogs: Catalogs,
    stat: StatModels,
    blades: BladeCoeffs = CARBON_FIBER_BLADES,
    max_series: int = 8,
    max_parallel: int = 8,
    counter: EvalCounter | None = None,
) -> DesignResult:
    """Run the full pipeline and return the sized and selected system."""
    env = Environment(altitude_m=req.altitude_m, temp_c=req.temp_c)
    rho = env.air_density
    t_max = req.max_thrust_n
    trace: list[TraceStep] = []

    def record(step, name, inputs, outputs):
        trace.append(TraceStep(step=step, name=name, inputs=inputs, outputs=outputs))

    # Steps 1-3: continuous propeller geometry and motor targets.
    blade_count, phi = step1_blade_geometry(blades, catalogs.propellers)
    c_t, c_m = aero_coeffs(blade_count, phi, blades)
    record(
        1,
        "propeller efficiency targets",
        {"k_m1": blades.k_m1, "k_m2": blades.k_m2},
        {"blade_count": blade_count, "pitch_angle_rad": phi},
    )

    # The smallest voltage tier may hold no buyable motor; escalate through
    # the remaining tiers before giving up.
    tier_voltages = [u for _, u in stat.voltage_tiers.tiers]
    try:
        first_voltage = stat.voltage_tiers.lookup(t_max)
    except CatalogRangeError as exc:
        raise _fail(2, "motor sizing", exc)
    candidates = [u for u in tier_voltages if u >= first_voltage]

    motor_rec = None
    last_selection_error: Exception | None = None
    for tier_v in candidates:
        u_mmax, i_mmax, kv, k_tm = step2_motor_sizing(
            t_max, rho, c_t, c_m, stat, force_voltage_v=tier_v
        )
        try:
            motor_rec = select_motor(catalogs.motors, u_mmax, i_mmax, kv)
            break
        except SelectionError as exc:
            last_selection_error = exc
    if motor_rec is None:
        raise _fail(4, "motor selection", last_selection_error)
    record(
        2,
        "motor sizing",
        {"max_thrust_n": t_max, "air_density": rho},
        {
            "motor_max_voltage_v": u_mmax,
            "motor_max_current_a": i_mmax,
            "kv_rpm_per_v": kv,
            "kv_scale": k_tm,
        },
    )
    r_m_opt, i_m0_opt = step3_motor_efficiency_targets()
    record(
        3,
        "motor efficiency targets",
        {},
        {"motor_resistance_ohm": r_m_opt, "motor_no_load_current_a": i_m0_opt},
    )
    record(
        4,
        "motor selection",
        {
            "motor_max_voltage_v": u_mmax,
            "motor_max_current_a": i_mmax,
            "kv_rpm_per_v": kv,
        },
        {"motor": motor_rec.identifier},
    )

    # Steps 5-6: propeller diameter from the selected motor, then the product.
    d_p, h_p = step5_optimal_diameter(motor_rec.params, rho, c_m, phi)
    record(
        5,
        "optimal propeller diameter",
        {"motor": motor_rec.identifier, "air_density": rho},
        {"diameter_m": d_p, "pitch_m": h_p},
    )
    try:
        prop_rec = select_propeller(catalogs.propellers, blade_count, phi, d_p)
    except SelectionError as exc:
        raise _fail(6, "propeller selection", exc)
    record(
        6,
        "propeller selection",
        {"blade_count": blade_count, "pitch_angle_rad": phi, "max_diameter_m": d_p},
        {"propeller": prop_rec.identifier},
    )

    # Steps 7-9: ESC targets mirror the motor; parasitic target is zero.
    u_emax, i_emax = step7_esc_sizing(u_mmax, i_mmax)
    record(
        7,
        "esc sizing",
        {"motor_max_voltage_v": u_mmax, "motor_max_current_a": i_mmax},
        {"esc_max_voltage_v": u_emax, "esc_max_current_a": i_emax},
    )
    record(8, "esc efficiency targets", {}, {"esc_resistance_ohm": 0.0})
    try:
        esc_rec = select_esc(catalogs.escs, u_emax, i_emax)
    except SelectionError as exc:
        raise _fail(9, "esc selection", exc)
    record(
        9,
        "esc selection",
        {"esc_max_voltage_v": u_emax, "esc_max_current_a": i_emax},
        {"esc": esc_rec.identifier},
    )

    # Steps 10-12: battery voltage, capacity/rate targets, pack selection.
    u_b = u_mmax
    record(10, "battery voltage", {"motor_max_voltage_v": u_mmax}, {"battery_voltage_v": u_b})
    try:
        capacity, rate, i_b0 = step11_battery_sizing(
            (prop_rec, motor_rec, esc_rec), u_b, i_mmax, req, env, blades, counter
        )
    except InfeasibleError as exc:
        raise _fail(11, "battery sizing", exc)
    record(
        11,
        "battery sizing",
        {"hover_battery_current_a": i_b0, "endurance_min": req.endurance_min},
        {"battery_capacity_mah": capacity, "battery_discharge_rate_c": rate},
    )

    optimal = OptimalParams(
        blade_count=blade_count,
        pitch_angle_rad=phi,
        diameter_m=d_p,
        pitch_m=h_p,
        motor_max_voltage_v=u_mmax,
        motor_max_current_a=i_mmax,
        kv_rpm_per_v=kv,
        esc_max_voltage_v=u_emax,
        esc_max_current_a=i_emax,
        battery_voltage_v=u_b,
        battery_capacity_mah=capacity,
        battery_discharge_rate_c=rate,
        max_thrust_n=t_max,
        kv_scale=k_tm,
    )

    # Product rounding can cost endurance (the real pack sags under load),
    # so selection is retried with a larger capacity floor until the
    # evaluated endurance meets the requirement or the catalog runs out.
    required_capacity = capacity
    battery = None
    performance = None
    for _ in range(32):
        try:
            battery = select_battery(
                catalogs.batteries,
                u_b,
                required_capacity,
                rate,
                max_series=max_series,
                max_parallel=max_parallel,
            )
        except SelectionError as exc:
            if battery is not None:
                # At least one pack met the targets but fell short on
                # evaluated endurance and nothing larger exists.
                raise _fail(
                    12,
                    "battery selection",
                    InfeasibleError(
                        f"no pack sustains {req.endurance_min:g} min "
                        f"(best evaluated endurance {performance.endurance_min:.1f} min)"
                    ),
                )
            raise _fail(12, "battery selection", exc)
        system = PropulsionSystem(
            propeller=prop_rec.params,
            motor=motor_rec.params,
            esc=esc_rec.params,
            battery=battery.params,
            rotor_count=req.rotor_count,
            environment=env,
            other_current_a=req.other_current_a,
            blades=blades,
        )
        try:
            performance = evaluate(
                system,
                req.hover_thrust_n,
                max_thrust_n=t_max,
                weight_models=stat.weights,
                counter=counter,
            )
        except InfeasibleError as exc:
            raise _fail(12, "battery selection", exc)
        if performance.endurance_min >= req.endurance_min * (1.0 - 1e-9):
            break
        required_capacity = max(
            battery.params.capacity_mah * (1.0 + 1e-9),
            required_capacity * req.endurance_min / performance.endurance_min,
        )
    record(
        12,
        "battery selection",
        {
            "battery_voltage_v": u_b,
            "battery_capacity_mah": required_capacity,
            "battery_discharge_rate_c": rate,
        },
        {"battery": battery.identifier, "endurance_min": performance.endurance_min},
    )

    if performance.violations:
        detail = "; ".join(v.message for v in performance.violations)
        raise _fail(12, "safety check", InfeasibleError(detail))

    return DesignResult(
        requirements=req,
        optimal=optimal,
        propeller=prop_rec,
        motor=motor_rec,
        esc=esc_rec,
        battery=battery,
        performance=performance,
        trace=tuple(trace),
    )
