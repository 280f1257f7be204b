"""Component models: propeller, motor, ESC, battery and the atmosphere.

All quantities are SI internally (meters, newtons, volts, amperes, radians,
N*m torque, RPM for rotational speed). Hobbyist units (inches, S cells,
C rate) are converted at the I/O boundary only.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    BrownoutError,
    DomainError,
    MotorLimitError,
    ThrottleInfeasibleError,
)

STANDARD_AIR_DENSITY = 1.293  # kg/m^3 at 0 m, 0 degC
GRAVITY = 9.8  # m/s^2
LIPO_CELL_VOLTS = 4.0  # average volts per series cell
LIPO_ENERGY_DENSITY = 140.0  # Wh/kg
DEFAULT_OTHER_CURRENT = 0.5  # A, flight controller etc.
USABLE_CAPACITY_FRACTION = 0.85  # 15% reserve against over-discharge
DEFAULT_AMBIENT_TEMP_C = 25.0
INCH = 0.0254


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class DesignRequirements:
    """What the designer asks for: thrust levels, altitude and endurance."""

    rotor_count: int
    hover_thrust_n: float          # per propeller
    thrust_ratio: float            # hover/full-throttle, in (0, 1)
    altitude_m: float
    endurance_min: float
    other_current_a: float = DEFAULT_OTHER_CURRENT
    total_weight_n: float | None = None
    temp_c: float = DEFAULT_AMBIENT_TEMP_C

    def __post_init__(self):
        if self.rotor_count < 1:
            raise DomainError("rotor_count must be >= 1")
        if not 0.0 < self.thrust_ratio < 1.0:
            raise DomainError("thrust_ratio must lie in (0, 1)")
        if self.hover_thrust_n <= 0:
            raise DomainError("hover_thrust_n must be positive")
        if self.endurance_min <= 0:
            raise DomainError("endurance_min must be positive")
        if self.other_current_a < 0:
            raise DomainError("other_current_a must be nonnegative")

    @property
    def max_thrust_n(self) -> float:
        """Per-propeller full-throttle thrust implied by the thrust ratio."""
        return self.hover_thrust_n / self.thrust_ratio

    @classmethod
    def from_total_weight(
        cls,
        total_weight_n: float,
        rotor_count: int,
        thrust_ratio: float = 0.5,
        *,
        altitude_m: float = 0.0,
        endurance_min: float = 15.0,
        other_current_a: float = DEFAULT_OTHER_CURRENT,
        temp_c: float = DEFAULT_AMBIENT_TEMP_C,
    ) -> "DesignRequirements":
        """Split the vehicle weight evenly over the rotors."""
        if total_weight_n <= 0:
            raise DomainError("total_weight_n must be positive")
        if rotor_count < 1:
            raise DomainError("rotor_count must be >= 1")
        return cls(
            rotor_count=rotor_count,
            hover_thrust_n=total_weight_n / rotor_count,
            thrust_ratio=thrust_ratio,
            altitude_m=altitude_m,
            endurance_min=endurance_min,
            other_current_a=other_current_a,
            total_weight_n=total_weight_n,
            temp_c=temp_c,
        )


@dataclass(frozen=True)
class Environment:
    """Flight environment; air density follows the standard atmosphere."""

    altitude_m: float = 0.0
    temp_c: float = DEFAULT_AMBIENT_TEMP_C

    @property
    def air_density(self) -> float:
        return air_density(self.altitude_m, self.temp_c)


@dataclass(frozen=True)
class BladeCoeffs:
    """Fit constants for the simplified blade thrust/torque coefficients."""

    k_t0: float
    k_m0: float
    k_m1: float
    k_m2: float

    def __post_init__(self):
        if min(self.k_t0, self.k_m0, self.k_m1, self.k_m2) <= 0:
            raise DomainError("blade coefficients must all be positive")


# Constants fitted for carbon fiber propellers.
CARBON_FIBER_BLADES = BladeCoeffs(k_t0=0.323, k_m0=0.0432, k_m1=0.01, k_m2=0.9)


@dataclass(frozen=True)
class PropellerParams:
    diameter_m: float
    pitch_m: float
    blade_count: int
    weight_n: float | None = None

    def __post_init__(self):
        if self.diameter_m <= 0:
            raise DomainError("propeller diameter must be positive")
        if self.blade_count < 2:
            raise DomainError("blade_count must be >= 2")
        if self.pitch_m <= 0:
            raise DomainError("propeller pitch must be positive")

    @property
    def pitch_angle_rad(self) -> float:
        return math.atan(self.pitch_m / (math.pi * self.diameter_m))

    def coeffs(self, blades: BladeCoeffs = CARBON_FIBER_BLADES) -> tuple[float, float]:
        return aero_coeffs(self.blade_count, self.pitch_angle_rad, blades)


@dataclass(frozen=True)
class MotorParams:
    max_voltage_v: float       # nominal maximum voltage rating
    max_current_a: float       # nominal maximum current rating
    kv_rpm_per_v: float
    no_load_current_a: float
    resistance_ohm: float
    no_load_voltage_v: float = 10.0   # manufacturer test voltage convention
    weight_n: float | None = None

    def __post_init__(self):
        if self.max_voltage_v <= 0 or self.kv_rpm_per_v <= 0:
            raise DomainError("motor voltage and KV must be positive")
        if self.no_load_current_a < 0 or self.resistance_ohm < 0:
            raise DomainError("motor no-load current and resistance must be >= 0")
        if self.max_current_a <= self.no_load_current_a:
            raise DomainError("max_current_a must exceed no_load_current_a")
        if self.no_load_voltage_v <= self.no_load_current_a * self.resistance_ohm:
            raise DomainError("no-load voltage must exceed no-load resistive drop")


@dataclass(frozen=True)
class EscParams:
    max_voltage_v: float
    max_current_a: float
    resistance_ohm: float
    weight_n: float | None = None

    def __post_init__(self):
        if self.max_voltage_v <= 0 or self.max_current_a <= 0:
            raise DomainError("ESC ratings must be positive")
        if self.resistance_ohm < 0:
            raise DomainError("ESC resistance must be >= 0")


@dataclass(frozen=True)
class BatteryParams:
    voltage_v: float
    capacity_mah: float
    max_discharge_rate_c: float
    resistance_ohm: float
    energy_density_wh_per_kg: float = LIPO_ENERGY_DENSITY
    weight_n: float | None = None

    def __post_init__(self):
        if self.voltage_v <= 0 or self.capacity_mah <= 0:
            raise DomainError("battery voltage and capacity must be positive")
        if self.max_discharge_rate_c <= 0:
            raise DomainError("max_discharge_rate_c must be positive")
        if self.resistance_ohm < 0:
            raise DomainError("battery resistance must be >= 0")

    @property
    def max_discharge_current_a(self) -> float:
        return self.max_discharge_rate_c * self.capacity_mah / 1000.0

    @property
    def cell_count(self) -> int:
        return volts_to_cells(self.voltage_v).cells


@dataclass(frozen=True)
class OperatingPoint:
    """One converged electrical/mechanical state of the whole chain."""

    speed_rpm: float
    torque_nm: float
    thrust_n: float
    motor_voltage_v: float
    motor_current_a: float
    throttle: float
    esc_voltage_v: float
    esc_current_a: float
    battery_current_a: float   # system level (all rotors + avionics)


# ---------------------------------------------------------------------------
# Atmosphere


def air_density(altitude_m: float, temp_c: float = DEFAULT_AMBIENT_TEMP_C) -> float:
    """Air density from the standard-atmosphere pressure lapse, in kg/m^3."""
    if not 0.0 <= altitude_m <= 10000.0:
        raise DomainError(f"altitude {altitude_m} m outside [0, 10000]")
    if not -40.0 <= temp_c <= 60.0:
        raise DomainError(f"temperature {temp_c} degC outside [-40, 60]")
    t_abs = 273.0 + temp_c
    return (273.0 / t_abs) * (1.0 - 0.0065 * altitude_m / t_abs) ** 5.2561 * STANDARD_AIR_DENSITY


# ---------------------------------------------------------------------------
# Propeller


def aero_coeffs(
    blade_count: int, pitch_angle_rad: float, blades: BladeCoeffs = CARBON_FIBER_BLADES
) -> tuple[float, float]:
    """Thrust and torque coefficients (C_T, C_M) for a blade geometry."""
    if blade_count < 2:
        raise DomainError("blade_count must be >= 2")
    if not 0.0 < pitch_angle_rad < math.pi / 2:
        raise DomainError("pitch angle must lie in (0, pi/2)")
    c_t = blades.k_t0 * blade_count * pitch_angle_rad
    c_m = blades.k_m0 * blade_count**2 * (blades.k_m1 + blades.k_m2 * pitch_angle_rad**2)
    return c_t, c_m


def prop_thrust_torque(
    speed_rpm: float, diameter_m: float, c_t: float, c_m: float, rho: float
) -> tuple[float, float]:
    """Thrust (N) and torque (N*m) of a fixed-pitch propeller at a given speed."""
    if speed_rpm < 0:
        raise DomainError("speed must be nonnegative")
    if diameter_m <= 0:
        raise DomainError("diameter must be positive")
    revs = speed_rpm / 60.0
    thrust = c_t * rho * revs**2 * diameter_m**4
    torque = c_m * rho * revs**2 * diameter_m**5
    return thrust, torque


def prop_speed_for_thrust(thrust_n: float, diameter_m: float, c_t: float, rho: float) -> float:
    """Speed (RPM) at which the propeller produces a given thrust."""
    if diameter_m <= 0 or c_t <= 0 or rho <= 0:
        raise DomainError("diameter, C_T and density must be positive")
    if thrust_n < 0:
        raise DomainError("thrust must be nonnegative")
    return 60.0 * math.sqrt(thrust_n / (c_t * rho * diameter_m**4))


def eta_tm(
    blade_count: int, pitch_angle_rad: float, blades: BladeCoeffs = CARBON_FIBER_BLADES
) -> float:
    """Thrust-to-torque coefficient ratio, the propeller efficiency index."""
    c_t, c_m = aero_coeffs(blade_count, pitch_angle_rad, blades)
    return c_t / c_m


# ---------------------------------------------------------------------------
# Motor


def motor_im_um(torque_nm: float, speed_rpm: float, motor: MotorParams) -> tuple[float, float]:
    """Motor equivalent current and voltage for a given shaft load."""
    if torque_nm < 0 or speed_rpm < 0:
        raise DomainError("torque and speed must be nonnegative")
    back_emf_scale = motor.no_load_voltage_v - motor.no_load_current_a * motor.resistance_ohm
    if back_emf_scale <= 0:
        raise DomainError("degenerate motor: U_m0 <= I_m0 * R_m")
    i_m = (
        math.pi * torque_nm * motor.kv_rpm_per_v * motor.no_load_voltage_v
        / (30.0 * back_emf_scale)
        + motor.no_load_current_a
    )
    u_m = i_m * motor.resistance_ohm + back_emf_scale * speed_rpm / (
        motor.kv_rpm_per_v * motor.no_load_voltage_v
    )
    return i_m, u_m


def motor_limits(motor: MotorParams) -> tuple[float, float]:
    """Maximum speed (RPM) and torque (N*m) at the motor's electrical ratings."""
    if motor.max_voltage_v <= motor.resistance_ohm * motor.max_current_a:
        raise MotorLimitError(
            "resistive drop at rated current exceeds rated voltage; "
            "motor has no valid operating envelope"
        )
    back_emf_scale = motor.no_load_voltage_v - motor.no_load_current_a * motor.resistance_ohm
    n_max = (
        (motor.max_voltage_v - motor.resistance_ohm * motor.max_current_a)
        * motor.kv_rpm_per_v
        * motor.no_load_voltage_v
        / back_emf_scale
    )
    m_max = (
        30.0
        * (motor.max_current_a - motor.no_load_current_a)
        * back_emf_scale
        / (math.pi * motor.kv_rpm_per_v * motor.no_load_voltage_v)
    )
    return n_max, m_max


def motor_theoretical_max_thrust(motor: MotorParams, c_t: float, c_m: float, rho: float) -> float:
    """Largest thrust a propeller matched to this motor's limits can produce."""
    n_max, m_max = motor_limits(motor)
    return (
        (c_t / c_m)
        * m_max ** (4.0 / 5.0)
        * rho ** (1.0 / 5.0)
        * c_m ** (1.0 / 5.0)
        * n_max ** (2.0 / 5.0)
        / 60.0 ** (2.0 / 5.0)
    )


def motor_efficiency(
    motor_voltage_v: float,
    motor_current_a: float,
    resistance_ohm: float,
    no_load_current_a: float,
) -> float:
    """Shaft power over electrical power; raises if outside [0, 1]."""
    if motor_voltage_v <= 0 or motor_current_a <= 0:
        raise DomainError("voltage and current must be positive")
    eta = (1.0 - motor_current_a * resistance_ohm / motor_voltage_v) * (
        1.0 - no_load_current_a / motor_current_a
    )
    if not 0.0 <= eta <= 1.0:
        from .errors import ModelInconsistencyError

        raise ModelInconsistencyError(f"motor efficiency {eta:.4f} outside [0, 1]")
    return eta


def correct_motor_resistance(
    battery_voltage_v: float,
    kv_rpm_per_v: float,
    full_throttle_current_a: float,
    full_throttle_speed_rpm: float,
    nominal_resistance_ohm: float | None = None,
) -> float:
    """Actual winding resistance inferred from a full-throttle test point.

    Manufacturer resistance figures are optimistic; the value backed out of
    full-throttle current/speed test data is typically 2-3x the nominal one.
    A warning is emitted when the inferred value falls outside [1.5, 4] times
    a supplied nominal.
    """
    if full_throttle_current_a <= 0:
        raise DomainError("full-throttle current must be positive")
    r_m = (
        battery_voltage_v - full_throttle_speed_rpm / kv_rpm_per_v
    ) / full_throttle_current_a
    if r_m < 0:
        raise DomainError(
            "inconsistent test data: observed speed exceeds the no-drop limit"
        )
    if nominal_resistance_ohm is not None and nominal_resistance_ohm > 0:
        ratio = r_m / nominal_resistance_ohm
        if not 1.5 <= ratio <= 4.0:
            warnings.warn(
                f"inferred resistance is {ratio:.2f}x nominal; expected 1.5-4x",
                stacklevel=2,
            )
    return r_m


# ---------------------------------------------------------------------------
# ESC


def esc_solve(
    motor_voltage_v: float,
    motor_current_a: float,
    esc_voltage_v: float,
    resistance_ohm: float,
) -> tuple[float, float]:
    """Throttle and ESC input current needed to hold a motor state."""
    if esc_voltage_v <= 0:
        raise DomainError("ESC supply voltage must be positive")
    sigma = (motor_voltage_v + motor_current_a * resistance_ohm) / esc_voltage_v
    if sigma < 0:
        raise DomainError("negative throttle implies inconsistent inputs")
    if sigma > 1.0:
        raise ThrottleInfeasibleError(
            f"required throttle {sigma:.3f} exceeds full throttle"
        )
    return sigma, sigma * motor_current_a


def esc_efficiency(
    motor_voltage_v: float, motor_current_a: float, resistance_ohm: float
) -> float:
    """Motor-side power over battery-side power through the ESC."""
    if motor_voltage_v <= 0:
        raise DomainError("motor voltage must be positive")
    return 1.0 / (1.0 + motor_current_a * resistance_ohm / motor_voltage_v)


# ---------------------------------------------------------------------------
# Battery


def battery_chain(
    esc_current_a: float,
    rotor_count: int,
    other_current_a: float,
    battery_voltage_v: float,
    battery_resistance_ohm: float,
) -> tuple[float, float]:
    """Total battery current and the sagged bus voltage feeding the ESCs."""
    if min(esc_current_a, other_current_a, battery_voltage_v, battery_resistance_ohm) < 0:
        raise DomainError("battery chain inputs must be nonnegative")
    i_b = rotor_count * esc_current_a + other_current_a
    u_e = battery_voltage_v - i_b * battery_resistance_ohm
    if u_e <= 0:
        raise BrownoutError(
            f"bus voltage {u_e:.2f} V collapses under {i_b:.1f} A load"
        )
    return i_b, u_e


def discharge_time(capacity_mah: float, battery_current_a: float) -> float:
    """Usable discharge time in minutes, keeping a 15% capacity reserve."""
    if battery_current_a <= 0:
        raise DomainError(
            "discharge current must be positive (zero current means endurance "
            "is unbounded, which must be handled explicitly by the caller)"
        )
    return (USABLE_CAPACITY_FRACTION * capacity_mah / battery_current_a) * (60.0 / 1000.0)


def capacity_for_endurance(endurance_min: float, battery_current_a: float) -> float:
    """Capacity (mAh) needed to sustain a current for a given time. Inverse of
    :func:`discharge_time`."""
    if endurance_min <= 0 or battery_current_a <= 0:
        raise DomainError("endurance and current must be positive")
    return endurance_min * battery_current_a * 1000.0 / (USABLE_CAPACITY_FRACTION * 60.0)


def battery_weight(
    capacity_mah: float,
    voltage_v: float,
    energy_density_wh_per_kg: float = LIPO_ENERGY_DENSITY,
    gravity: float = GRAVITY,
) -> float:
    """Battery weight in newtons from stored energy and pack energy density.

    Energy (Wh) over density (Wh/kg) gives mass in kg; weight requires a
    multiplication by g.
    """
    if capacity_mah < 0 or voltage_v <= 0 or energy_density_wh_per_kg <= 0:
        raise DomainError("capacity, voltage and energy density must be positive")
    return gravity * (capacity_mah * voltage_v / 1000.0) / energy_density_wh_per_kg


class CellCount(NamedTuple):
    cells: int
    exact: bool


def cells_to_volts(cells: int) -> float:
    """Series cell count -> nominal pack voltage (4.0 V per cell)."""
    if cells < 1:
        raise DomainError("cell count must be >= 1")
    return LIPO_CELL_VOLTS * cells


def volts_to_cells(voltage_v: float) -> CellCount:
    """Nominal pack voltage -> series cell count; flags non-integer results."""
    if voltage_v <= 0:
        raise DomainError("voltage must be positive")
    cells = voltage_v / LIPO_CELL_VOLTS
    nearest = max(1, round(cells))
    exact = abs(cells - nearest) <= 1e-9 * max(1.0, abs(cells))
    return CellCount(nearest, exact)
