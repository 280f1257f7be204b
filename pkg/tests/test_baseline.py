import pytest

from propsizer import (
    BatteryParams,
    Catalog,
    Catalogs,
    DesignRequirements,
    EscParams,
    InfeasibleError,
    MotorParams,
    ProductRecord,
    PropellerParams,
    PropsizerError,
    brute_force,
    compare,
    enumerate_packs,
)


def rec(klass, ident, params, weight):
    return ProductRecord(component_class=klass, identifier=ident, params=params, weight_n=weight)


def tiny_catalogs():
    props = Catalog("propeller", (
        rec("propeller", "29x9.5", PropellerParams(0.7366, 0.2413, 2, weight_n=1.81), 1.81),
        rec("propeller", "27x8.8", PropellerParams(0.6858, 0.22352, 2, weight_n=1.32), 1.32),
    ))
    motors = Catalog("motor", (
        rec("motor", "M90", MotorParams(48.0, 40.0, 90.0, 0.2, 0.08, weight_n=7.57), 7.57),
        rec("motor", "M130", MotorParams(48.0, 30.0, 130.0, 0.3, 0.09, weight_n=6.08), 6.08),
    ))
    escs = Catalog("esc", (
        rec("esc", "E60", EscParams(48.0, 60.0, 0.006, weight_n=0.78), 0.78),
    ))
    batteries = Catalog("battery", (
        rec("battery", "B16", BatteryParams(24.0, 16000.0, 15.0, 0.0048, weight_n=18.62), 18.62),
    ))
    return Catalogs(propellers=props, motors=motors, escs=escs, batteries=batteries)


VC_REQ = DesignRequirements(
    rotor_count=4, hover_thrust_n=49.0, thrust_ratio=0.5,
    altitude_m=50.0, endurance_min=17.0,
)


class TestBruteForce:
    def test_combination_count_is_exact(self):
        cats = tiny_catalogs()
        result = brute_force(VC_REQ, cats, max_series=2, max_parallel=2)
        packs = enumerate_packs(cats.batteries, 2, 2)
        assert result.combinations_total == 2 * 2 * 1 * len(packs)
        assert 0 < result.combinations_feasible <= result.combinations_total

    def test_finds_the_expected_winner(self):
        result = brute_force(VC_REQ, tiny_catalogs(), max_series=2, max_parallel=2)
        # the 29-inch blade on the KV90 motor with a 2-series pack is the
        # only feasible family, and the single-parallel pack is lightest
        assert result.propeller.identifier == "29x9.5"
        assert result.motor.identifier == "M90"
        assert result.battery.series == 2
        assert result.endurance_min >= 17.0

    def test_singleton_catalog_is_trivially_optimal(self):
        cats = tiny_catalogs()
        solo = Catalogs(
            propellers=Catalog("propeller", cats.propellers.records[:1]),
            motors=Catalog("motor", cats.motors.records[:1]),
            escs=cats.escs,
            batteries=cats.batteries,
        )
        result = brute_force(VC_REQ, solo, max_series=2, max_parallel=1)
        assert result.combinations_total == 2
        assert result.propeller.identifier == "29x9.5"

    def test_cap_refusal_reports_size(self):
        with pytest.raises(PropsizerError) as info:
            brute_force(VC_REQ, tiny_catalogs(), max_series=8, max_parallel=8, combination_cap=10)
        assert "cap" in str(info.value)
        # the message carries the true size so the caller can raise the cap
        packs = 8 * 8
        assert str(2 * 2 * 1 * packs) in str(info.value)

    def test_empty_catalog_is_infeasible(self):
        cats = tiny_catalogs()
        empty = Catalogs(
            propellers=cats.propellers, motors=cats.motors,
            escs=cats.escs, batteries=Catalog("battery", ()),
        )
        with pytest.raises(InfeasibleError):
            brute_force(VC_REQ, empty)

    def test_no_feasible_combination_is_infeasible(self):
        req = DesignRequirements(
            rotor_count=4, hover_thrust_n=4000.0, thrust_ratio=0.5,
            altitude_m=0.0, endurance_min=17.0,
        )
        with pytest.raises(InfeasibleError):
            brute_force(req, tiny_catalogs(), max_series=2, max_parallel=2)

    def test_weight_dominance(self, stat):
        # nothing feasible weighs less than the winner; re-run with a forced
        # heavier battery to confirm the weight ordering actually binds
        cats = tiny_catalogs()
        result = brute_force(VC_REQ, cats, max_series=2, max_parallel=2,
                             weight_models=stat.weights)
        heavy_bat = Catalog("battery", (
            rec("battery", "B16H", BatteryParams(24.0, 16000.0, 15.0, 0.0048, weight_n=25.0), 25.0),
            cats.batteries.records[0],
        ))
        both = Catalogs(propellers=cats.propellers, motors=cats.motors,
                        escs=cats.escs, batteries=heavy_bat)
        again = brute_force(VC_REQ, both, max_series=2, max_parallel=2,
                            weight_models=stat.weights)
        assert again.battery.base.identifier == "B16"
        assert again.system_weight_n == pytest.approx(result.system_weight_n)


class TestCompare:
    def test_bundled_comparison(self, catalogs, stat):
        report = compare(VC_REQ, catalogs, stat, max_series=4, max_parallel=2)
        # the brute-force optimum bounds the analytical result from below
        assert report.brute_weight_n <= report.analytical_weight_n + 1e-9
        assert report.analytical_weight_n <= 1.15 * report.brute_weight_n
        assert report.analytical_endurance_min >= 17.0
        assert report.brute_endurance_min >= 17.0
        # the analytical route does dramatically fewer physics solves
        assert report.analytical_hover_evals < report.brute_hover_evals / 10
        assert report.analytical_seconds >= 0
        assert report.brute_seconds >= 0
