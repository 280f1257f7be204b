"""Brute-force combination search used as an optimality oracle.

Enumerates every (propeller, motor, ESC, battery pack) combination, keeps
the ones that pass the safety checks and meet the endurance target, and
returns the lightest. Quartic in catalog size, which is exactly the point:
it bounds what the analytical pipeline can possibly achieve and shows why
the analytical route is worth having.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .catalog import BatteryPack, Catalogs, ProductRecord, enumerate_packs
from .errors import InfeasibleError, PropsizerError
from .evaluator import (
    EvalCounter,
    PropulsionSystem,
    check_safety,
    hover_point,
    system_weight,
)
from .models import (
    BladeCoeffs,
    CARBON_FIBER_BLADES,
    DesignRequirements,
    Environment,
    discharge_time,
    motor_theoretical_max_thrust,
)
from .optimizer import DesignResult, optimize
from .statmodels import StatModels

DEFAULT_COMBINATION_CAP = 10**6


@dataclass(frozen=True)
class BruteForceResult:
    propeller: ProductRecord
    motor: ProductRecord
    esc: ProductRecord
    battery: BatteryPack
    system_weight_n: float
    endurance_min: float
    combinations_total: int
    combinations_feasible: int
    hover_evals: int
    full_throttle_evals: int


@dataclass(frozen=True)
class ComparisonReport:
    analytical: DesignResult
    brute: BruteForceResult
    analytical_weight_n: float
    brute_weight_n: float
    analytical_endurance_min: float
    brute_endurance_min: float
    analytical_seconds: float
    brute_seconds: float
    analytical_hover_evals: int
    brute_hover_evals: int


def _prefilter(system: PropulsionSystem, req: DesignRequirements) -> bool:
    """Cheap rating checks that reject most combinations before any solve."""
    mot, esc, bat = system.motor, system.esc, system.battery
    if bat.voltage_v > mot.max_voltage_v or bat.voltage_v > esc.max_voltage_v:
        return False
    if mot.max_current_a > esc.max_current_a:
        return False
    required = req.rotor_count * mot.max_current_a + req.other_current_a
    if bat.max_discharge_current_a < required:
        return False
    c_t, c_m = system.coeffs()
    try:
        t_p_max = motor_theoretical_max_thrust(
            mot, c_t, c_m, system.environment.air_density
        )
    except PropsizerError:
        return False
    return t_p_max >= req.max_thrust_n


def brute_force(
    req: DesignRequirements,
    catalogs: Catalogs,
    max_series: int = 8,
    max_parallel: int = 8,
    combination_cap: int = DEFAULT_COMBINATION_CAP,
    blades: BladeCoeffs = CARBON_FIBER_BLADES,
    weight_models=None,
) -> BruteForceResult:
    """Exhaustive search returning the lightest feasible combination."""
    env = Environment(altitude_m=req.altitude_m, temp_c=req.temp_c)
    packs = enumerate_packs(catalogs.batteries, max_series, max_parallel)
    total = (
        len(catalogs.propellers.records)
        * len(catalogs.motors.records)
        * len(catalogs.escs.records)
        * len(packs)
    )
    if total > combination_cap:
        raise PropsizerError(
            f"combination space has {total} entries, above the cap of "
            f"{combination_cap}; shrink the catalogs or raise the cap"
        )
    if total == 0:
        raise InfeasibleError("at least one catalog is empty")

    counter = EvalCounter()
    best = None
    best_key = None
    feasible = 0
    for prop in catalogs.propellers.records:
        for motor in catalogs.motors.records:
            for esc in catalogs.escs.records:
                for pack in packs:
                    system = PropulsionSystem(
                        propeller=prop.params,
                        motor=motor.params,
                        esc=esc.params,
                        battery=pack.params,
                        rotor_count=req.rotor_count,
                        environment=env,
                        other_current_a=req.other_current_a,
                        blades=blades,
                    )
                    if not _prefilter(system, req):
                        continue
                    try:
                        _, i_b0 = hover_point(system, req.hover_thrust_n, counter)
                    except PropsizerError:
                        continue
                    endurance = discharge_time(pack.params.capacity_mah, i_b0)
                    if endurance < req.endurance_min:
                        continue
                    if check_safety(system, req.max_thrust_n, counter):
                        continue
                    try:
                        weight = system_weight(
                            system, weight_models, max_thrust_n=req.max_thrust_n
                        )
                    except PropsizerError:
                        continue
                    feasible += 1
                    key = (
                        weight,
                        prop.identifier,
                        motor.identifier,
                        esc.identifier,
                        pack.identifier,
                    )
                    if best_key is None or key < best_key:
                        best_key = key
                        best = (prop, motor, esc, pack, weight, endurance)
    if best is None:
        raise InfeasibleError(
            f"no combination out of {total} satisfies the requirements"
        )
    prop, motor, esc, pack, weight, endurance = best
    return BruteForceResult(
        propeller=prop,
        motor=motor,
        esc=esc,
        battery=pack,
        system_weight_n=weight,
        endurance_min=endurance,
        combinations_total=total,
        combinations_feasible=feasible,
        hover_evals=counter.hover_evals,
        full_throttle_evals=counter.full_throttle_evals,
    )


def compare(
    req: DesignRequirements,
    catalogs: Catalogs,
    stat: StatModels,
    blades: BladeCoeffs = CARBON_FIBER_BLADES,
    max_series: int = 8,
    max_parallel: int = 8,
    combination_cap: int = DEFAULT_COMBINATION_CAP,
) -> ComparisonReport:
    """Run both methods on the same inputs and report weights and costs."""
    t0 = time.perf_counter()
    analytical_counter = EvalCounter()
    analytical = optimize(
        req,
        catalogs,
        stat,
        blades,
        max_series=max_series,
        max_parallel=max_parallel,
        counter=analytical_counter,
    )
    t1 = time.perf_counter()
    brute = brute_force(
        req,
        catalogs,
        max_series=max_series,
        max_parallel=max_parallel,
        combination_cap=combination_cap,
        blades=blades,
        weight_models=stat.weights,
    )
    t2 = time.perf_counter()
    return ComparisonReport(
        analytical=analytical,
        brute=brute,
        analytical_weight_n=analytical.performance.system_weight_n,
        brute_weight_n=brute.system_weight_n,
        analytical_endurance_min=analytical.performance.endurance_min,
        brute_endurance_min=brute.endurance_min,
        analytical_seconds=t1 - t0,
        brute_seconds=t2 - t1,
        analytical_hover_evals=analytical_counter.hover_evals,
        brute_hover_evals=brute.hover_evals,
    )
