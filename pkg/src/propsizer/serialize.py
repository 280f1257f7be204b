"""Canonical JSON views of results.

The CLI and the HTTP service both go through these functions so the two
paths emit byte-identical documents for identical inputs: all numbers SI,
snake_case field names, keys sorted on dump.
"""

from __future__ import annotations

import json
from dataclasses import asdict

from .baseline import BruteForceResult, ComparisonReport
from .catalog import BatteryPack, ProductRecord
from .errors import DomainError
from .evaluator import PerformanceReport, PropulsionSystem
from .models import (
    DEFAULT_AMBIENT_TEMP_C,
    DEFAULT_OTHER_CURRENT,
    BatteryParams,
    DesignRequirements,
    Environment,
    EscParams,
    MotorParams,
    OperatingPoint,
    PropellerParams,
)
from .optimizer import DesignResult


def requirements_from_dict(doc: dict) -> DesignRequirements:
    """Build requirements from a JSON document.

    Accepts either a total vehicle weight (split evenly over the rotors) or
    a direct per-propeller hover thrust; exactly one must be given.
    """
    if not isinstance(doc, dict):
        raise DomainError("requirements must be a JSON object")
    unknown = set(doc) - {
        "rotor_count",
        "total_weight_n",
        "hover_thrust_n",
        "thrust_ratio",
        "altitude_m",
        "endurance_min",
        "other_current_a",
        "temp_c",
    }
    if unknown:
        raise DomainError(f"unknown requirement fields: {sorted(unknown)}")
    try:
        rotor_count = int(doc["rotor_count"])
        thrust_ratio = float(doc.get("thrust_ratio", 0.5))
        altitude_m = float(doc.get("altitude_m", 0.0))
        endurance_min = float(doc["endurance_min"])
        other_current_a = float(doc.get("other_current_a", DEFAULT_OTHER_CURRENT))
        temp_c = float(doc.get("temp_c", DEFAULT_AMBIENT_TEMP_C))
        has_weight = doc.get("total_weight_n") is not None
        has_thrust = doc.get("hover_thrust_n") is not None
        if has_weight == has_thrust:
            raise DomainError(
                "give exactly one of total_weight_n or hover_thrust_n"
            )
        if has_weight:
            return DesignRequirements.from_total_weight(
                float(doc["total_weight_n"]),
                rotor_count,
                thrust_ratio,
                altitude_m=altitude_m,
                endurance_min=endurance_min,
                other_current_a=other_current_a,
                temp_c=temp_c,
            )
        return DesignRequirements(
            rotor_count=rotor_count,
            hover_thrust_n=float(doc["hover_thrust_n"]),
            thrust_ratio=thrust_ratio,
            altitude_m=altitude_m,
            endurance_min=endurance_min,
            other_current_a=other_current_a,
            temp_c=temp_c,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed requirements: {exc}") from exc


def requirements_to_dict(req: DesignRequirements) -> dict:
    return {
        "rotor_count": req.rotor_count,
        "hover_thrust_n": req.hover_thrust_n,
        "max_thrust_n": req.max_thrust_n,
        "thrust_ratio": req.thrust_ratio,
        "altitude_m": req.altitude_m,
        "endurance_min": req.endurance_min,
        "other_current_a": req.other_current_a,
        "total_weight_n": req.total_weight_n,
        "temp_c": req.temp_c,
    }


def system_from_dict(doc: dict) -> PropulsionSystem:
    """Build a concrete system description from a JSON document."""
    if not isinstance(doc, dict):
        raise DomainError("system must be a JSON object")
    try:
        return PropulsionSystem(
            propeller=PropellerParams(**doc["propeller"]),
            motor=MotorParams(**doc["motor"]),
            esc=EscParams(**doc["esc"]),
            battery=BatteryParams(**doc["battery"]),
            rotor_count=int(doc["rotor_count"]),
            environment=Environment(
                altitude_m=float(doc.get("altitude_m", 0.0)),
                temp_c=float(doc.get("temp_c", DEFAULT_AMBIENT_TEMP_C)),
            ),
            other_current_a=float(doc.get("other_current_a", DEFAULT_OTHER_CURRENT)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed system description: {exc}") from exc


def operating_point_to_dict(pt: OperatingPoint) -> dict:
    return asdict(pt)


def product_to_dict(rec: ProductRecord) -> dict:
    params = {
        k: v
        for k, v in vars(rec.params).items()
        if v is not None and k != "energy_density_wh_per_kg"
    }
    return {
        "id": rec.identifier,
        "class": rec.component_class,
        "params": params,
        "weight_n": rec.weight_n,
        "source": rec.source,
    }


def battery_pack_to_dict(pack: BatteryPack) -> dict:
    return {
        "id": pack.identifier,
        "base": product_to_dict(pack.base),
        "series": pack.series,
        "parallel": pack.parallel,
        "params": {
            k: v for k, v in vars(pack.params).items() if k != "energy_density_wh_per_kg"
        },
        "weight_n": pack.weight_n,
    }


def performance_to_dict(report: PerformanceReport) -> dict:
    return {
        "hover": operating_point_to_dict(report.hover),
        "hover_battery_current_a": report.hover_battery_current_a,
        "endurance_min": report.endurance_min,
        "full_throttle": (
            operating_point_to_dict(report.full_throttle)
            if report.full_throttle is not None
            else None
        ),
        "system_weight_n": report.system_weight_n,
        "prop_efficiency_index": report.prop_efficiency_index,
        "motor_efficiency": report.motor_efficiency,
        "esc_efficiency": report.esc_efficiency,
        "battery_efficiency": report.battery_efficiency,
        "feasible": report.feasible,
        "violations": [asdict(v) for v in report.violations],
    }


def design_result_to_dict(result: DesignResult) -> dict:
    return {
        "requirements": requirements_to_dict(result.requirements),
        "optimal": asdict(result.optimal),
        "products": {
            "propeller": product_to_dict(result.propeller),
            "motor": product_to_dict(result.motor),
            "esc": product_to_dict(result.esc),
            "battery": battery_pack_to_dict(result.battery),
        },
        "performance": performance_to_dict(result.performance),
        "trace": [asdict(step) for step in result.trace],
    }


def brute_force_to_dict(result: BruteForceResult) -> dict:
    return {
        "products": {
            "propeller": product_to_dict(result.propeller),
            "motor": product_to_dict(result.motor),
            "esc": product_to_dict(result.esc),
            "battery": battery_pack_to_dict(result.battery),
        },
        "system_weight_n": result.system_weight_n,
        "endurance_min": result.endurance_min,
        "combinations_total": result.combinations_total,
        "combinations_feasible": result.combinations_feasible,
        "hover_evals": result.hover_evals,
        "full_throttle_evals": result.full_throttle_evals,
    }


def comparison_to_dict(report: ComparisonReport) -> dict:
    return {
        "analytical": design_result_to_dict(report.analytical),
        "brute_force": brute_force_to_dict(report.brute),
        "analytical_weight_n": report.analytical_weight_n,
        "brute_weight_n": report.brute_weight_n,
        "analytical_endurance_min": report.analytical_endurance_min,
        "brute_endurance_min": report.brute_endurance_min,
        "analytical_seconds": report.analytical_seconds,
        "brute_seconds": report.brute_seconds,
        "analytical_hover_evals": report.analytical_hover_evals,
        "brute_hover_evals": report.brute_hover_evals,
    }


def dump_json(doc: dict) -> str:
    """The one JSON encoder both the CLI and the service use."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
