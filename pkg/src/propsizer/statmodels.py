"""Fitted catalog statistics that tie products to the analytical pipeline.

Three families of models are fitted from product records:

* a through-origin linear law between motor maximum input power and the
  theoretical maximum thrust of a matched propeller,
* a piecewise (tiered) map from required maximum thrust to the smallest
  motor voltage class that covers it,
* log-space power-law weight surfaces per component class, with exponents
  constrained nonnegative so predicted weight is monotone in every argument.
"""

from __future__ import annotations

import datetime
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import nnls

from .errors import CatalogRangeError, FitError
from .models import (
    BladeCoeffs,
    CARBON_FIBER_BLADES,
    MotorParams,
    STANDARD_AIR_DENSITY,
    aero_coeffs,
    motor_theoretical_max_thrust,
)

SCHEMA_VERSION = 1

# Default power-to-thrust constant fitted for the sampled motor family (N/W).
DEFAULT_POWER_THRUST_CONST = 0.0624
# Compensates the no-load current and winding resistance neglected when
# reducing the motor limit equations to the KV sizing expression.
DEFAULT_KV_CORRECTION = 0.82


@dataclass(frozen=True)
class PowerThrustModel:
    """T_pMax ~= g_wconst * (U_mMax * I_mMax)."""

    g_wconst: float                 # N/W
    residual_rms: float = 0.0
    n_records: int = 0

    def __post_init__(self):
        if self.g_wconst <= 0:
            raise FitError("power-thrust constant must be positive")

    def max_current_for(self, thrust_n: float, voltage_v: float) -> float:
        return thrust_n / (self.g_wconst * voltage_v)


@dataclass(frozen=True)
class VoltageTierModel:
    """Step map from maximum thrust to the smallest adequate voltage class.

    ``tiers`` is an ascending list of (thrust ceiling N, voltage V) pairs.
    """

    tiers: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.tiers:
            raise FitError("voltage tier model needs at least one tier")
        prev_t, prev_u = 0.0, 0.0
        for t, u in self.tiers:
            if t <= prev_t or u < prev_u:
                raise FitError("tiers must increase in thrust and not decrease in voltage")
            prev_t, prev_u = t, u

    def lookup(self, thrust_n: float) -> float:
        if thrust_n <= 0:
            raise FitError("thrust must be positive")
        for ceiling, volts in self.tiers:
            if thrust_n <= ceiling:
                return volts
        raise CatalogRangeError(
            f"thrust {thrust_n:.1f} N exceeds the {self.tiers[-1][0]:.1f} N "
            "ceiling of the fitted voltage tiers"
        )


@dataclass(frozen=True)
class PowerLawSurface:
    """G = a * prod(x_i ** b_i) with b_i >= 0 (monotone nondecreasing)."""

    coefficient: float
    exponents: tuple[float, ...]
    features: tuple[str, ...]

    def predict(self, *values: float) -> float:
        if len(values) != len(self.exponents):
            raise ValueError(f"expected {len(self.exponents)} features")
        out = self.coefficient
        for v, b in zip(values, self.exponents):
            if v <= 0:
                raise ValueError("power-law features must be positive")
            out *= v**b
        return out


@dataclass(frozen=True)
class WeightModels:
    propeller: PowerLawSurface   # features (blade_count, diameter_m)
    motor: PowerLawSurface       # features (max_voltage_v, max_thrust_n)
    esc: PowerLawSurface         # features (max_voltage_v, max_current_a)


@dataclass(frozen=True)
class StatModels:
    """The full bundle the optimizer consumes, with fit provenance."""

    power_thrust: PowerThrustModel
    voltage_tiers: VoltageTierModel
    weights: WeightModels
    kv_correction: float = DEFAULT_KV_CORRECTION
    provenance: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Fitting


def fit_power_thrust(records: list[tuple[float, float]]) -> PowerThrustModel:
    """Least-squares slope through the origin of max thrust vs input power.

    ``records`` holds (U_mMax * I_mMax, T_pMax) pairs.
    """
    if len(records) < 3:
        raise FitError("need at least 3 motor records to fit the power-thrust law")
    x = np.array([r[0] for r in records], dtype=float)
    y = np.array([r[1] for r in records], dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise FitError("power and thrust values must be positive")
    slope = float(np.dot(x, y) / np.dot(x, x))
    residual_rms = float(np.sqrt(np.mean((y - slope * x) ** 2)))
    return PowerThrustModel(g_wconst=slope, residual_rms=residual_rms, n_records=len(x))


def fit_voltage_tiers(records: list[tuple[float, float]]) -> VoltageTierModel:
    """Tier table from (U_mMax, T_pMax) motor records.

    Each distinct voltage class contributes a ceiling at its largest thrust;
    classes whose ceiling does not exceed a lower-voltage class are merged
    upward so the table stays monotone.
    """
    if not records:
        raise FitError("cannot fit voltage tiers from an empty record set")
    by_voltage: dict[float, float] = {}
    for volts, thrust in records:
        if volts <= 0 or thrust <= 0:
            raise FitError("voltage and thrust must be positive")
        by_voltage[volts] = max(by_voltage.get(volts, 0.0), thrust)
    tiers: list[tuple[float, float]] = []
    for volts in sorted(by_voltage):
        ceiling = by_voltage[volts]
        while tiers and tiers[-1][0] >= ceiling:
            # A lower-voltage class already covers at least as much thrust;
            # replace it with this (higher-voltage) class's coverage.
            ceiling = max(ceiling, tiers.pop()[0])
        tiers.append((ceiling, volts))
    return VoltageTierModel(tiers=tuple(tiers))


def _fit_power_law(
    xs: list[tuple[float, ...]], ys: list[float], features: tuple[str, ...]
) -> PowerLawSurface:
    """Log-space least squares with exponents constrained to be >= 0."""
    if len(ys) < 5:
        raise FitError("need at least 5 records to fit a weight model")
    if any(y <= 0 for y in ys) or any(v <= 0 for row in xs for v in row):
        raise FitError("weight-model features and weights must be positive")
    logx = np.log(np.array(xs, dtype=float))
    logy = np.log(np.array(ys, dtype=float))
    n = logx.shape[0]
    # Columns: [+1, -1, features...]; splitting the intercept into a positive
    # and a negative part lets NNLS leave it unconstrained while keeping all
    # exponents nonnegative.
    design = np.hstack([np.ones((n, 1)), -np.ones((n, 1)), logx])
    if np.linalg.matrix_rank(design[:, 2:]) < logx.shape[1] and logx.shape[1] > 1:
        # NNLS tolerates rank deficiency; a fully constant column does not.
        if np.allclose(logx, logx[0]):
            raise FitError("degenerate design matrix: all records identical")
    sol, _ = nnls(design, logy)
    intercept = sol[0] - sol[1]
    exponents = tuple(float(b) for b in sol[2:])
    return PowerLawSurface(
        coefficient=float(math.exp(intercept)), exponents=exponents, features=features
    )


def motor_reference_max_thrust(
    motor: MotorParams,
    blades: BladeCoeffs = CARBON_FIBER_BLADES,
    rho: float = STANDARD_AIR_DENSITY,
) -> float:
    """T_pMax of a motor under the reference 2-blade optimal-pitch propeller.

    Used as the common thrust scale when fitting catalog-wide statistics.
    """
    phi_opt = math.sqrt(blades.k_m1 / blades.k_m2)
    c_t, c_m = aero_coeffs(2, phi_opt, blades)
    return motor_theoretical_max_thrust(motor, c_t, c_m, rho)


def fit_weight_models(
    prop_records: list[tuple[int, float, float]],
    motor_records: list[tuple[float, float, float]],
    esc_records: list[tuple[float, float, float]],
) -> WeightModels:
    """Fit the three component weight surfaces.

    Records are (feature..., weight_n) tuples:
    propellers (blade_count, diameter_m, G), motors (U_mMax, T_pMax, G),
    ESCs (U_eMax, I_eMax, G).
    """
    prop = _fit_power_law(
        [(float(b), d) for b, d, _ in prop_records],
        [g for *_, g in prop_records],
        ("blade_count", "diameter_m"),
    )
    motor = _fit_power_law(
        [(u, t) for u, t, _ in motor_records],
        [g for *_, g in motor_records],
        ("max_voltage_v", "max_thrust_n"),
    )
    esc = _fit_power_law(
        [(u, i) for u, i, _ in esc_records],
        [g for *_, g in esc_records],
        ("max_voltage_v", "max_current_a"),
    )
    return WeightModels(propeller=prop, motor=motor, esc=esc)


# ---------------------------------------------------------------------------
# Serialization


def _surface_to_dict(s: PowerLawSurface) -> dict:
    return {
        "coefficient": s.coefficient,
        "exponents": list(s.exponents),
        "features": list(s.features),
    }


def _surface_from_dict(d: dict) -> PowerLawSurface:
    return PowerLawSurface(
        coefficient=float(d["coefficient"]),
        exponents=tuple(float(x) for x in d["exponents"]),
        features=tuple(d["features"]),
    )


def stat_models_to_dict(models: StatModels) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "power_thrust": {
            "g_wconst": models.power_thrust.g_wconst,
            "residual_rms": models.power_thrust.residual_rms,
            "n_records": models.power_thrust.n_records,
        },
        "voltage_tiers": [[t, u] for t, u in models.voltage_tiers.tiers],
        "weight_models": {
            "propeller": _surface_to_dict(models.weights.propeller),
            "motor": _surface_to_dict(models.weights.motor),
            "esc": _surface_to_dict(models.weights.esc),
        },
        "k_c": models.kv_correction,
        "provenance": models.provenance,
    }


def stat_models_from_dict(doc: dict) -> StatModels:
    for key in ("schema_version", "power_thrust", "voltage_tiers", "weight_models", "k_c"):
        if key not in doc:
            raise FitError(f"stat-models document missing required field '{key}'")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise FitError(
            f"unsupported stat-models schema version {doc['schema_version']}"
        )
    pt = doc["power_thrust"]
    wm = doc["weight_models"]
    return StatModels(
        power_thrust=PowerThrustModel(
            g_wconst=float(pt["g_wconst"]),
            residual_rms=float(pt.get("residual_rms", 0.0)),
            n_records=int(pt.get("n_records", 0)),
        ),
        voltage_tiers=VoltageTierModel(
            tiers=tuple((float(t), float(u)) for t, u in doc["voltage_tiers"])
        ),
        weights=WeightModels(
            propeller=_surface_from_dict(wm["propeller"]),
            motor=_surface_from_dict(wm["motor"]),
            esc=_surface_from_dict(wm["esc"]),
        ),
        kv_correction=float(doc["k_c"]),
        provenance=dict(doc.get("provenance", {})),
    )


def save_stat_models(models: StatModels, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(stat_models_to_dict(models), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_stat_models(path: str) -> StatModels:
    with open(path) as fh:
        return stat_models_from_dict(json.load(fh))


def fit_stat_models(catalogs, blades: BladeCoeffs = CARBON_FIBER_BLADES) -> StatModels:
    """Fit the whole model bundle from loaded catalogs.

    Motor thrust scales use the reference propeller so records from
    different voltage classes are comparable.
    """
    motor_points = [
        (rec.params, motor_reference_max_thrust(rec.params, blades))
        for rec in catalogs.motors.records
    ]
    power = fit_power_thrust(
        [(m.max_voltage_v * m.max_current_a, t) for m, t in motor_points]
    )
    tiers = fit_voltage_tiers([(m.max_voltage_v, t) for m, t in motor_points])
    weights = fit_weight_models(
        [
            (r.params.blade_count, r.params.diameter_m, r.weight_n)
            for r in catalogs.propellers.records
        ],
        [(m.max_voltage_v, t, rec.weight_n)
         for (m, t), rec in zip(motor_points, catalogs.motors.records)],
        [
            (r.params.max_voltage_v, r.params.max_current_a, r.weight_n)
            for r in catalogs.escs.records
        ],
    )
    return StatModels(
        power_thrust=power,
        voltage_tiers=tiers,
        weights=weights,
        provenance=fit_provenance(catalogs.combined_hash()),
    )


def fit_provenance(catalog_hash: str) -> dict:
    return {
        "catalog_hash": catalog_hash,
        "fitted_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
