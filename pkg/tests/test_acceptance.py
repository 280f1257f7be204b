"""End-to-end acceptance checks, one printed verdict line per criterion.

Run with -s to see the verdict lines; each test prints exactly one
"Ax: PASS"/"Ax: FAIL" line.
"""

import math
import random
import statistics
import time
from contextlib import contextmanager

import pytest

from propsizer import (
    BatteryParams,
    CARBON_FIBER_BLADES,
    Catalog,
    Catalogs,
    DesignRequirements,
    Environment,
    EscParams,
    EvalCounter,
    InfeasibleError,
    MotorParams,
    ProductRecord,
    PropellerParams,
    PropsizerError,
    PropulsionSystem,
    aero_coeffs,
    brute_force,
    enumerate_packs,
    full_throttle_point,
    hover_point,
    optimize,
    prop_speed_for_thrust,
    prop_thrust_torque,
    select_motor,
    select_propeller,
)
from propsizer.optimizer import step1_blade_geometry, step5_optimal_diameter
from propsizer.statmodels import fit_stat_models

SEED = 20240811

VC_REQ = DesignRequirements(
    rotor_count=4, hover_thrust_n=49.0, thrust_ratio=0.5,
    altitude_m=50.0, endurance_min=17.0,
)


@contextmanager
def verdict(label):
    try:
        yield
    except BaseException:
        print(f"{label}: FAIL")
        raise
    print(f"{label}: PASS")


def test_a1_optimal_pitch_angle(catalogs):
    with verdict("A1"):
        blade_count, phi = step1_blade_geometry(CARBON_FIBER_BLADES, catalogs.propellers)
        assert blade_count == 2
        assert abs(phi - 0.10540) < 1e-4
        # diameter over pitch for a helical blade at that angle
        ratio = 1.0 / (math.pi * math.tan(phi))
        assert ratio == pytest.approx(3.00, abs=0.05)


def test_a2_optimal_diameter_for_bench_motor():
    with verdict("A2"):
        motor = MotorParams(
            max_voltage_v=48.0, max_current_a=36.0, kv_rpm_per_v=90.0,
            no_load_current_a=0.7, resistance_ohm=0.3, no_load_voltage_v=10.0,
        )
        _, c_m = aero_coeffs(2, 0.105409)
        rho = Environment(altitude_m=0.0, temp_c=0.0).air_density
        d_p, _ = step5_optimal_diameter(motor, rho, c_m, 0.105409)
        assert d_p == pytest.approx(0.754, rel=0.03)
        # selection over 27/28/29/30-inch blades lands on the 29-inch one:
        # 30 in would exceed the ceiling and overheat the motor
        candidates = Catalog("propeller", tuple(
            ProductRecord(
                component_class="propeller",
                identifier=f"{n}in",
                params=PropellerParams(
                    diameter_m=n * 0.0254,
                    pitch_m=pitch * 0.0254,
                    blade_count=2,
                ),
                weight_n=1.0,
            )
            for n, pitch in ((27, 8.8), (28, 8.8), (29, 9.5), (30, 10.5))
        ))
        pick = select_propeller(candidates, 2, 0.105409, d_p)
        assert pick.identifier == "29in"


def test_a3_reference_mission_end_to_end(catalogs, stat):
    with verdict("A3"):
        t0 = time.perf_counter()
        req = DesignRequirements.from_total_weight(
            196.0, 4, 0.5, altitude_m=50.0, endurance_min=17.0
        )
        assert req.hover_thrust_n == 49.0
        assert req.max_thrust_n == 98.0
        result = optimize(req, catalogs, stat)
        opt = result.optimal
        assert opt.motor_max_voltage_v == 48.0
        assert 30.0 <= opt.motor_max_current_a <= 38.0
        assert 80.0 <= opt.kv_rpm_per_v <= 102.0
        assert opt.diameter_m == pytest.approx(0.7468, rel=0.03)
        assert opt.battery_capacity_mah == pytest.approx(16000.0, rel=0.20)
        assert opt.battery_discharge_rate_c == pytest.approx(10.0, rel=0.20)
        assert result.propeller.identifier == "29x9.5CF 2-blade"
        assert result.motor.identifier == "U11 KV90"
        assert result.esc.identifier == "FLAME 60A HV"
        assert result.battery.identifier == "TATTU 6S 15C 16000mAh x2S1P"
        assert result.performance.endurance_min >= 17.0
        assert time.perf_counter() - t0 < 1.0


def test_a4_forward_model_fidelity():
    with verdict("A4"):
        system = PropulsionSystem(
            propeller=PropellerParams(diameter_m=0.7366, pitch_m=0.2413, blade_count=2),
            motor=MotorParams(
                max_voltage_v=48.0, max_current_a=36.0, kv_rpm_per_v=90.0,
                no_load_current_a=0.7, resistance_ohm=0.3,
            ),
            esc=EscParams(max_voltage_v=48.0, max_current_a=100.0, resistance_ohm=0.0),
            battery=BatteryParams(
                voltage_v=48.0, capacity_mah=16000.0,
                max_discharge_rate_c=15.0, resistance_ohm=0.0,
            ),
            rotor_count=1,
            environment=Environment(altitude_m=0.0, temp_c=25.0),
        )
        point = full_throttle_point(system)
        assert point.motor_current_a == pytest.approx(31.9, rel=0.20)
        assert point.speed_rpm == pytest.approx(3602.0, rel=0.20)
        assert point.thrust_n == pytest.approx(98.8, rel=0.20)
        assert point.torque_nm == pytest.approx(3.41, rel=0.20)


# ----------------------------------------------------------------------------
# Synthetic catalog machinery for A5/A6.


def _jitter_weight(rec, rng, suffix, scale=0.10):
    """Copy a catalog record with its weight nudged; ratings stay intact.

    Jittering only the weight keeps every synthetic catalog physically
    consistent with the statistics the sizing constants were fitted on, which
    is what makes the analytical optimum reachable by construction.
    """
    w = rec.weight_n * rng.uniform(1.0 - scale, 1.0 + scale)
    kwargs = dict(vars(rec.params))
    kwargs["weight_n"] = w
    return ProductRecord(
        component_class=rec.component_class,
        identifier=rec.identifier + suffix,
        params=rec.params.__class__(**kwargs),
        weight_n=w,
    )


def _synthetic_catalogs(base, rng, n):
    """n products per class, each a weight-jittered copy of a bundled one."""
    out = {}
    for name, cat in (
        ("propellers", base.propellers),
        ("motors", base.motors),
        ("escs", base.escs),
        ("batteries", base.batteries),
    ):
        picks = [rng.choice(cat.records) for _ in range(n)]
        out[name] = Catalog(cat.component_class, tuple(
            _jitter_weight(rec, rng, f"#{i}") for i, rec in enumerate(picks)
        ))
    return Catalogs(**out)


def test_a5_oracle_equivalence(catalogs):
    with verdict("A5"):
        rng = random.Random(SEED)
        t0 = time.perf_counter()
        done = 0
        attempts = 0
        while done < 20:
            attempts += 1
            assert attempts < 200, "could not build 20 feasible synthetic catalogs"
            cats = _synthetic_catalogs(catalogs, rng, 5)
            try:
                stat = fit_stat_models(cats)
                analytical = optimize(VC_REQ, cats, stat, max_series=2, max_parallel=2)
            except PropsizerError:
                # this seed's catalog has no feasible analytical design
                # (or too little data to fit); draw another
                continue
            brute = brute_force(
                VC_REQ, cats, max_series=2, max_parallel=2,
                weight_models=stat.weights,
            )
            a_w = analytical.performance.system_weight_n
            b_w = brute.system_weight_n
            assert b_w <= a_w + 1e-9
            assert a_w <= 1.15 * b_w
            assert not analytical.performance.violations
            assert analytical.performance.endurance_min >= VC_REQ.endurance_min * (1 - 1e-9)
            assert brute.endurance_min >= VC_REQ.endurance_min
            done += 1
        assert time.perf_counter() - t0 < 30.0


def _padded_catalogs(base, rng, n):
    """Size-n catalogs built from a fixed core plus selector-proof filler.

    The filler products cannot win selection (wrong blade count, far-off KV,
    undersized ESC rating, odd cell voltage), so both methods keep the same
    winner while the search space grows with n.
    """
    core = {
        "propellers": [r for r in base.propellers.records
                       if r.identifier in ("29x9.5CF 2-blade", "27x8.8CF", "26x8.0CF")],
        "motors": [r for r in base.motors.records
                   if r.identifier in ("U11 KV90", "U13 KV65", "U10 KV130")],
        "escs": [r for r in base.escs.records
                 if r.identifier in ("FLAME 60A HV", "FLAME 80A HV", "ALPHA 40A LV")],
        "batteries": [r for r in base.batteries.records
                      if r.identifier in ("TATTU 6S 15C 16000mAh", "TATTU 6S 15C 12000mAh",
                                          "TATTU 4S 35C 10000mAh")],
    }

    def make_filler(rec, i):
        ident = f"{rec.identifier}-fill{i}"
        p = rec.params
        if rec.component_class == "propeller":
            params = PropellerParams(
                diameter_m=p.diameter_m, pitch_m=p.pitch_m,
                blade_count=3, weight_n=rec.weight_n * 2,
            )
        elif rec.component_class == "motor":
            params = MotorParams(
                max_voltage_v=p.max_voltage_v, max_current_a=p.max_current_a,
                kv_rpm_per_v=p.kv_rpm_per_v * 3.0,
                no_load_current_a=p.no_load_current_a,
                resistance_ohm=p.resistance_ohm, weight_n=rec.weight_n * 2,
            )
        elif rec.component_class == "esc":
            params = EscParams(
                max_voltage_v=p.max_voltage_v,
                max_current_a=p.max_current_a * 0.3,
                resistance_ohm=p.resistance_ohm, weight_n=rec.weight_n * 2,
            )
        else:
            params = BatteryParams(
                voltage_v=p.voltage_v * 1.17, capacity_mah=p.capacity_mah,
                max_discharge_rate_c=p.max_discharge_rate_c,
                resistance_ohm=p.resistance_ohm, weight_n=rec.weight_n * 2,
            )
        return ProductRecord(
            component_class=rec.component_class, identifier=ident,
            params=params, weight_n=params.weight_n,
        )

    out = {}
    for name, recs in core.items():
        filler = [
            make_filler(rng.choice(recs), i) for i in range(n - len(recs))
        ]
        out[name] = Catalog(recs[0].component_class, tuple(recs + filler))
    return Catalogs(**out)


def test_a6_complexity_scaling(catalogs, stat):
    with verdict("A6"):
        rng = random.Random(SEED + 6)
        sizes = [4, 6, 8, 10]
        analytical_counts = []
        ratios = []
        for n in sizes:
            cats = _padded_catalogs(catalogs, rng, n)

            # the statistics come from the bundled catalog so the sizing
            # targets (and therefore the analytical work) are fixed across n
            t_analytical = math.inf
            for _ in range(5):
                counter = EvalCounter()
                t0 = time.perf_counter()
                optimize(VC_REQ, cats, stat, max_series=2, max_parallel=2,
                         counter=counter)
                t_analytical = min(t_analytical, time.perf_counter() - t0)
            analytical_counts.append(counter.hover_evals)

            t_brute = math.inf
            for _ in range(5):
                t0 = time.perf_counter()
                brute = brute_force(VC_REQ, cats, max_series=2, max_parallel=2,
                                    weight_models=stat.weights)
                t_brute = min(t_brute, time.perf_counter() - t0)

            packs = len(enumerate_packs(cats.batteries, 2, 2))
            assert brute.combinations_total == n * n * n * packs
            ratios.append(t_brute / max(t_analytical, 1e-9))

        # the analytical pipeline does a fixed number of physics solves
        assert len(set(analytical_counts)) == 1
        # brute force falls further behind as the catalogs grow
        assert all(a < b for a, b in zip(ratios, ratios[1:]))

        # median end-to-end latency on the bundled catalogs
        times = []
        for _ in range(11):
            t0 = time.perf_counter()
            optimize(VC_REQ, catalogs, stat)
            times.append(time.perf_counter() - t0)
        assert statistics.median(times) <= 0.100


def test_a7_property_suite(catalogs):
    with verdict("A7"):
        rng = random.Random(SEED + 7)
        c_t0, c_m0 = aero_coeffs(2, 0.105409)
        for _ in range(1000):
            # propeller law round trip: thrust -> speed -> thrust
            d = rng.uniform(0.3, 0.9)
            rho = Environment(rng.uniform(0, 4000), rng.uniform(-10, 40)).air_density
            thrust = rng.uniform(5.0, 120.0)
            speed = prop_speed_for_thrust(thrust, d, c_t0, rho)
            back, torque = prop_thrust_torque(speed, d, c_t0, c_m0, rho)
            assert back == pytest.approx(thrust, rel=1e-9)
            assert torque > 0

            # the closed-form pitch angle maximizes the thrust/torque ratio
            phi_opt = math.sqrt(0.01 / 0.9)
            phi = rng.uniform(0.03, 0.4)
            def index(p):
                ct, cm = aero_coeffs(2, p)
                return ct / cm
            assert index(phi_opt) >= index(phi) - 1e-12

            # motor selection: hard constraints hold and shuffling the
            # catalog never changes the pick
            recs = tuple(
                ProductRecord(
                    component_class="motor", identifier=f"m{i}",
                    params=MotorParams(
                        max_voltage_v=rng.choice([24.0, 48.0]),
                        max_current_a=rng.uniform(10.0, 80.0),
                        kv_rpm_per_v=rng.uniform(60.0, 400.0),
                        no_load_current_a=rng.uniform(0.1, 1.0),
                        resistance_ohm=rng.uniform(0.02, 0.3),
                        weight_n=rng.uniform(1.0, 12.0),
                    ),
                    weight_n=1.0,
                )
                for i in range(rng.randint(1, 8))
            )
            cat = Catalog("motor", recs)
            u = rng.uniform(10.0, 50.0)
            i_req = rng.uniform(10.0, 70.0)
            kv = rng.uniform(60.0, 400.0)
            try:
                pick = select_motor(cat, u, i_req, kv)
            except Exception:
                pick = None
            if pick is not None:
                assert pick.params.max_voltage_v >= u
                assert pick.params.max_current_a >= i_req
                shuffled = list(recs)
                rng.shuffle(shuffled)
                assert select_motor(Catalog("motor", tuple(shuffled)), u, i_req, kv) == pick

        # power conservation over random hover solves (fewer cases; each
        # involves a fixed-point solve)
        for _ in range(200):
            system = PropulsionSystem(
                propeller=PropellerParams(
                    diameter_m=rng.uniform(0.4, 0.8), pitch_m=rng.uniform(0.1, 0.25),
                    blade_count=2,
                ),
                motor=MotorParams(
                    max_voltage_v=48.0, max_current_a=rng.uniform(20, 60),
                    kv_rpm_per_v=rng.uniform(80, 200),
                    no_load_current_a=rng.uniform(0, 1),
                    resistance_ohm=rng.uniform(0, 0.2),
                ),
                esc=EscParams(max_voltage_v=48.0, max_current_a=100.0,
                              resistance_ohm=rng.uniform(0, 0.01)),
                battery=BatteryParams(voltage_v=48.0, capacity_mah=16000.0,
                                      max_discharge_rate_c=25.0,
                                      resistance_ohm=rng.uniform(0, 0.01)),
                rotor_count=4,
                environment=Environment(rng.uniform(0, 2000), 25.0),
            )
            try:
                point, i_b = hover_point(system, rng.uniform(10.0, 50.0))
            except Exception:
                continue
            p_bat = 48.0 * i_b
            p_esc = 4 * point.esc_voltage_v * point.esc_current_a
            p_mot = 4 * point.motor_voltage_v * point.motor_current_a
            p_shaft = 4 * point.torque_nm * 2 * math.pi * point.speed_rpm / 60.0
            assert p_bat >= p_esc * (1 - 1e-9) >= 0
            assert p_esc >= p_mot * (1 - 1e-9)
            assert p_mot >= p_shaft * (1 - 1e-9)
