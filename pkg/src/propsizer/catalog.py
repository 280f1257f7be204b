"""Product catalogs: schema, ingestion/validation and selection algorithms.

Catalog files are JSON documents of the form::

    {"schema_version": 1, "class": "motor",
     "records": [{"id": "...", "params": {...SI units...},
                  "weight_n": 7.4, "source": "..."}]}

A CSV importer is provided for convenience; its column names carry unit
suffixes (``diameter_in`` is accepted and converted to meters).
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from dataclasses import dataclass
from typing import Iterable

from .errors import CatalogError, DomainError, SelectionError
from .models import (
    INCH,
    BatteryParams,
    EscParams,
    MotorParams,
    PropellerParams,
    cells_to_volts,
)

SCHEMA_VERSION = 1
COMPONENT_CLASSES = ("propeller", "motor", "esc", "battery")

ParamSet = PropellerParams | MotorParams | EscParams | BatteryParams


@dataclass(frozen=True)
class ProductRecord:
    component_class: str
    identifier: str
    params: ParamSet
    weight_n: float
    source: str = ""
    price: float | None = None

    def __post_init__(self):
        if self.component_class not in COMPONENT_CLASSES:
            raise CatalogError(f"unknown component class '{self.component_class}'")
        if self.weight_n < 0:
            raise CatalogError("weight must be nonnegative")


@dataclass(frozen=True)
class Catalog:
    """Validated records of one component class, with a stable content hash."""

    component_class: str
    records: tuple[ProductRecord, ...]
    validation_report: tuple[str, ...] = ()

    @property
    def content_hash(self) -> str:
        canonical = json.dumps(
            sorted((_record_to_dict(r) for r in self.records), key=lambda d: d["id"]),
            sort_keys=True,
        )
        return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass(frozen=True)
class Catalogs:
    propellers: Catalog
    motors: Catalog
    escs: Catalog
    batteries: Catalog

    def combined_hash(self) -> str:
        h = hashlib.sha256()
        for cat in (self.propellers, self.motors, self.escs, self.batteries):
            h.update(cat.content_hash.encode())
        return h.hexdigest()


@dataclass(frozen=True)
class BatteryPack:
    """A series/parallel composition of one catalog battery product."""

    base: ProductRecord
    series: int
    parallel: int

    @property
    def units(self) -> int:
        return self.series * self.parallel

    @property
    def params(self) -> BatteryParams:
        cell = self.base.params
        return BatteryParams(
            voltage_v=cell.voltage_v * self.series,
            capacity_mah=cell.capacity_mah * self.parallel,
            max_discharge_rate_c=cell.max_discharge_rate_c,
            resistance_ohm=cell.resistance_ohm * self.series / self.parallel,
            energy_density_wh_per_kg=cell.energy_density_wh_per_kg,
            weight_n=self.weight_n,
        )

    @property
    def weight_n(self) -> float:
        return self.base.weight_n * self.units

    @property
    def identifier(self) -> str:
        return f"{self.base.identifier} x{self.series}S{self.parallel}P"


# ---------------------------------------------------------------------------
# Ingestion


_PARAM_BUILDERS = {
    "propeller": lambda p, w: PropellerParams(
        diameter_m=float(p["diameter_m"]),
        pitch_m=float(p["pitch_m"]),
        blade_count=int(p["blade_count"]),
        weight_n=w,
    ),
    "motor": lambda p, w: MotorParams(
        max_voltage_v=float(p["max_voltage_v"]),
        max_current_a=float(p["max_current_a"]),
        kv_rpm_per_v=float(p["kv_rpm_per_v"]),
        no_load_current_a=float(p["no_load_current_a"]),
        resistance_ohm=float(p["resistance_ohm"]),
        no_load_voltage_v=float(p.get("no_load_voltage_v", 10.0)),
        weight_n=w,
    ),
    "esc": lambda p, w: EscParams(
        max_voltage_v=float(p["max_voltage_v"]),
        max_current_a=float(p["max_current_a"]),
        resistance_ohm=float(p["resistance_ohm"]),
        weight_n=w,
    ),
    "battery": lambda p, w: BatteryParams(
        voltage_v=float(p["voltage_v"]),
        capacity_mah=float(p["capacity_mah"]),
        max_discharge_rate_c=float(p["max_discharge_rate_c"]),
        resistance_ohm=float(p["resistance_ohm"]),
        weight_n=w,
    ),
}


def _record_to_dict(rec: ProductRecord) -> dict:
    params = {
        k: v
        for k, v in vars(rec.params).items()
        if k not in ("weight_n", "energy_density_wh_per_kg") and v is not None
    }
    return {
        "id": rec.identifier,
        "params": params,
        "weight_n": rec.weight_n,
        "source": rec.source,
    }


def catalog_to_dict(cat: Catalog) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "class": cat.component_class,
        "records": [_record_to_dict(r) for r in cat.records],
    }


def load_catalog(path: str) -> Catalog:
    """Load and validate one catalog file.

    Invalid records are rejected with record-addressed diagnostics collected
    in the validation report; a fully unreadable file raises.
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CatalogError(f"cannot read catalog file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog file {path} is not valid JSON: {exc}") from exc

    if doc.get("schema_version") != SCHEMA_VERSION:
        raise CatalogError(
            f"{path}: unsupported schema version {doc.get('schema_version')!r}"
        )
    klass = doc.get("class")
    if klass not in COMPONENT_CLASSES:
        raise CatalogError(f"{path}: unknown component class {klass!r}")

    records: list[ProductRecord] = []
    problems: list[str] = []
    seen: set[str] = set()
    for idx, raw in enumerate(doc.get("records", [])):
        where = f"{os.path.basename(path)} record {idx}"
        try:
            identifier = str(raw["id"])
            if identifier in seen:
                raise CatalogError(f"duplicate identifier '{identifier}'")
            weight = float(raw["weight_n"])
            params = _PARAM_BUILDERS[klass](raw["params"], weight)
            records.append(
                ProductRecord(
                    component_class=klass,
                    identifier=identifier,
                    params=params,
                    weight_n=weight,
                    source=str(raw.get("source", "")),
                    price=raw.get("price"),
                )
            )
            seen.add(identifier)
        except (KeyError, TypeError, ValueError, DomainError, CatalogError) as exc:
            problems.append(f"{where}: rejected ({exc})")
    return Catalog(
        component_class=klass,
        records=tuple(records),
        validation_report=tuple(problems),
    )


_CATALOG_FILES = {
    "propellers.json": "propeller",
    "motors.json": "motor",
    "escs.json": "esc",
    "batteries.json": "battery",
}


def load_catalogs(directory: str) -> Catalogs:
    """Load the four per-class catalog files from a directory."""
    loaded: dict[str, Catalog] = {}
    for filename, klass in _CATALOG_FILES.items():
        path = os.path.join(directory, filename)
        if not os.path.exists(path):
            raise CatalogError(f"missing catalog file {path}")
        cat = load_catalog(path)
        if cat.component_class != klass:
            raise CatalogError(f"{path}: expected class '{klass}', got '{cat.component_class}'")
        loaded[klass] = cat
    return Catalogs(
        propellers=loaded["propeller"],
        motors=loaded["motor"],
        escs=loaded["esc"],
        batteries=loaded["battery"],
    )


def bundled_catalog_dir() -> str:
    """Directory holding the sample catalogs shipped with the package."""
    return os.path.join(os.path.dirname(__file__), "data")


# CSV import: header-driven with unit suffixes; these columns are converted.
_CSV_CONVERSIONS = {
    "diameter_in": ("diameter_m", lambda v: float(v) * INCH),
    "pitch_in": ("pitch_m", lambda v: float(v) * INCH),
    "weight_g": ("weight_n", lambda v: float(v) * 9.8 / 1000.0),
    "weight_kg": ("weight_n", lambda v: float(v) * 9.8),
    "voltage_s": ("voltage_v", lambda v: cells_to_volts(int(v))),
    "max_voltage_s": ("max_voltage_v", lambda v: cells_to_volts(int(v))),
}


def import_csv(path: str, component_class: str) -> Catalog:
    """Build a catalog from a CSV file with unit-suffixed headers."""
    if component_class not in COMPONENT_CLASSES:
        raise CatalogError(f"unknown component class '{component_class}'")
    rows: list[dict] = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            converted: dict = {}
            for key, value in row.items():
                if value is None or value == "":
                    continue
                key = key.strip()
                if key in _CSV_CONVERSIONS:
                    target, conv = _CSV_CONVERSIONS[key]
                    converted[target] = conv(value)
                else:
                    converted[key] = value
            rows.append(converted)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "class": component_class,
        "records": [
            {
                "id": r.pop("id"),
                "weight_n": float(r.pop("weight_n")),
                "source": r.pop("source", ""),
                "params": r,
            }
            for r in rows
        ],
    }
    tmp = path + ".tmp.json"
    with open(tmp, "w") as fh:
        json.dump(doc, fh)
    try:
        return load_catalog(tmp)
    finally:
        os.unlink(tmp)


# ---------------------------------------------------------------------------
# Selection


def _require(records: Iterable[ProductRecord], what: str, constraint: str):
    out = list(records)
    if not out:
        raise SelectionError(f"no {what} satisfies: {constraint}", constraint=constraint)
    return out


def select_motor(
    catalog: Catalog,
    max_voltage_v: float,
    max_current_a: float,
    kv_rpm_per_v: float,
) -> ProductRecord:
    """Pick the motor product closest to the sizing targets.

    Comparison order: voltage class (smallest rating at or above the target),
    nearest KV, then the smallest adequate current rating, then lower
    resistance and no-load current; remaining ties go to weight and id.
    """
    recs = _require(catalog.records, "motor", "nonempty catalog")
    recs = _require(
        (r for r in recs if r.params.max_voltage_v >= max_voltage_v),
        "motor",
        f"max_voltage_v >= {max_voltage_v:g} V",
    )
    min_v = min(r.params.max_voltage_v for r in recs)
    recs = [r for r in recs if r.params.max_voltage_v == min_v]
    best_kv = min(abs(r.params.kv_rpm_per_v - kv_rpm_per_v) for r in recs)
    recs = [r for r in recs if abs(r.params.kv_rpm_per_v - kv_rpm_per_v) == best_kv]
    recs = _require(
        (r for r in recs if r.params.max_current_a >= max_current_a),
        "motor",
        f"max_current_a >= {max_current_a:.1f} A in the {min_v:g} V class",
    )
    return min(
        recs,
        key=lambda r: (
            r.params.max_current_a,
            r.params.resistance_ohm,
            r.params.no_load_current_a,
            r.weight_n,
            r.identifier,
        ),
    )


def select_propeller(
    catalog: Catalog,
    blade_count: int,
    pitch_angle_rad: float,
    max_diameter_m: float,
) -> ProductRecord:
    """Pick the propeller product for a diameter ceiling.

    Blade count must match exactly and the diameter must not exceed the
    ceiling (a larger propeller would overload the motor). Among admissible
    records the pitch angle closest to the target wins; the largest diameter
    breaks pitch-angle ties since the ceiling is also what the thrust
    requirement asks for, then weight, then id.
    """
    recs = _require(catalog.records, "propeller", "nonempty catalog")
    recs = _require(
        (r for r in recs if r.params.blade_count == blade_count),
        "propeller",
        f"blade_count == {blade_count}",
    )
    recs = _require(
        (r for r in recs if r.params.diameter_m <= max_diameter_m + 1e-12),
        "propeller",
        f"diameter_m <= {max_diameter_m:.4f} m",
    )
    return min(
        recs,
        key=lambda r: (
            abs(r.params.pitch_angle_rad - pitch_angle_rad),
            -r.params.diameter_m,
            r.weight_n,
            r.identifier,
        ),
    )


def select_esc(
    catalog: Catalog, max_voltage_v: float, max_current_a: float
) -> ProductRecord:
    """Smallest ESC rating covering the motor's voltage and current."""
    recs = _require(catalog.records, "esc", "nonempty catalog")
    recs = _require(
        (r for r in recs if r.params.max_voltage_v >= max_voltage_v),
        "esc",
        f"max_voltage_v >= {max_voltage_v:g} V",
    )
    min_v = min(r.params.max_voltage_v for r in recs)
    recs = [r for r in recs if r.params.max_voltage_v == min_v]
    recs = _require(
        (r for r in recs if r.params.max_current_a >= max_current_a),
        "esc",
        f"max_current_a >= {max_current_a:.1f} A in the {min_v:g} V class",
    )
    return min(
        recs,
        key=lambda r: (
            r.params.max_current_a,
            r.params.resistance_ohm,
            r.weight_n,
            r.identifier,
        ),
    )


def enumerate_packs(
    catalog: Catalog, max_series: int = 8, max_parallel: int = 8
) -> list[BatteryPack]:
    """All series/parallel compositions within the enumeration caps."""
    return [
        BatteryPack(base=rec, series=s, parallel=p)
        for rec in catalog.records
        for s in range(1, max_series + 1)
        for p in range(1, max_parallel + 1)
    ]


def select_battery(
    catalog: Catalog,
    voltage_v: float,
    capacity_mah: float,
    discharge_rate_c: float,
    max_series: int = 8,
    max_parallel: int = 8,
) -> BatteryPack:
    """Lightest pack composition meeting voltage (exactly), capacity and MDR."""
    if not catalog.records:
        raise SelectionError("no battery satisfies: nonempty catalog", constraint="nonempty catalog")
    packs = enumerate_packs(catalog, max_series, max_parallel)
    voltage_ok = [
        p for p in packs if abs(p.params.voltage_v - voltage_v) <= 1e-9 * max(1.0, voltage_v)
    ]
    if not voltage_ok:
        nearest = min(packs, key=lambda p: abs(p.params.voltage_v - voltage_v))
        raise SelectionError(
            f"no pack composition reaches {voltage_v:g} V exactly "
            f"(nearest achievable is {nearest.params.voltage_v:g} V)",
            constraint=f"voltage == {voltage_v:g} V",
        )
    feasible = [
        p
        for p in voltage_ok
        if p.params.capacity_mah >= capacity_mah
        and p.params.max_discharge_rate_c >= discharge_rate_c
    ]
    if not feasible:
        raise SelectionError(
            f"no {voltage_v:g} V pack composition provides "
            f">= {capacity_mah:.0f} mAh at >= {discharge_rate_c:.1f} C",
            constraint="capacity/discharge-rate",
        )
    return min(feasible, key=lambda p: (p.weight_n, p.units, p.identifier))
