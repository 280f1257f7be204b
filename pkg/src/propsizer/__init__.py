"""Analytical sizing of multicopter electric propulsion systems.

Pick propeller, motor, ESC and battery products from catalogs so a vehicle
of a given weight hovers efficiently and meets its endurance target, with a
forward evaluator and a brute-force search for cross-checking.
"""

from .baseline import BruteForceResult, ComparisonReport, brute_force, compare
from .catalog import (
    BatteryPack,
    Catalog,
    Catalogs,
    ProductRecord,
    bundled_catalog_dir,
    enumerate_packs,
    import_csv,
    load_catalog,
    load_catalogs,
    select_battery,
    select_esc,
    select_motor,
    select_propeller,
)
from .errors import (
    BrownoutError,
    CatalogError,
    CatalogRangeError,
    ConvergenceError,
    DomainError,
    FitError,
    InfeasibleError,
    ModelInconsistencyError,
    MotorLimitError,
    PropsizerError,
    SelectionError,
    ThrottleInfeasibleError,
)
from .evaluator import (
    EvalCounter,
    PerformanceReport,
    PropulsionSystem,
    SafetyViolation,
    check_safety,
    endurance,
    evaluate,
    full_throttle_point,
    hover_point,
    system_weight,
)
from .models import (
    CARBON_FIBER_BLADES,
    BatteryParams,
    BladeCoeffs,
    DesignRequirements,
    Environment,
    EscParams,
    MotorParams,
    OperatingPoint,
    PropellerParams,
    aero_coeffs,
    air_density,
    battery_chain,
    battery_weight,
    capacity_for_endurance,
    cells_to_volts,
    correct_motor_resistance,
    discharge_time,
    esc_efficiency,
    esc_solve,
    eta_tm,
    motor_efficiency,
    motor_im_um,
    motor_limits,
    motor_theoretical_max_thrust,
    prop_speed_for_thrust,
    prop_thrust_torque,
    volts_to_cells,
)
from .optimizer import DesignResult, OptimalParams, TraceStep, optimize
from .statmodels import (
    PowerLawSurface,
    PowerThrustModel,
    StatModels,
    VoltageTierModel,
    WeightModels,
    fit_power_thrust,
    fit_stat_models,
    fit_voltage_tiers,
    fit_weight_models,
    load_stat_models,
    save_stat_models,
)

__version__ = "0.1.0"
