"""Quantum resource estimation and desk-scale exact solving for CVRP.

The package parses capacitated vehicle routing instances, sizes the qubit
registers, Hamiltonian terms, circuit volume, and measurement budgets of
two standard quantum encodings, classifies instances against hardware
profiles, renders the benchmark tables and feasibility diagrams, and builds
small exact penalty models that a brute-force solver can certify.
"""

from __future__ import annotations

from .encoding import (
    DEFAULT_LAYERS,
    EncodingKind,
    LogMode,
    ResourceEstimate,
    SizeConvention,
    circuit_volume,
    depth_estimate,
    error_rate_threshold,
    estimate_instance,
    hamiltonian_terms,
    hobo_qubits,
    measurement_estimate,
    quantum_volume,
    qubo_qubits,
)
from .errors import (
    CvrpError,
    DimensionMismatch,
    DuplicateName,
    EmptyInput,
    IndexOutOfRange,
    InvalidInstance,
    LengthMismatch,
    MalformedLine,
    MissingSection,
    SchemaError,
    TooLarge,
    UnsupportedEdgeWeightType,
)
from .hardware import (
    FeasibilityVerdict,
    HardwareProfile,
    classify,
    default_profiles,
    feasibility_point,
    get_profile,
    load_profiles,
)
from .instances import (
    CvrpInstance,
    WeightKind,
    infer_vehicle_count,
    parse_instance,
    serialize_instance,
)
from .qubo import (
    AUTO,
    QuboModel,
    RouteDecoding,
    VariableMap,
    Violation,
    brute_force_solve,
    build_qubo,
    count_terms,
    decode_routes,
    energy,
    export_model,
    parse_model,
)
from .report import (
    DiagramPoint,
    InstanceParams,
    bundled_gap_csv,
    bundled_params,
    diagram_points,
    feasibility_diagram,
    load_params_csv,
    params_estimate,
    render_gap_table,
    render_resource_table,
)
from .value import (
    GapDenominator,
    GapRecord,
    ImpactEstimate,
    gap_records_from_csv,
    impact_estimate,
    optimality_gap,
)

__version__ = "0.1.0"

__all__ = [
    "AUTO",
    "CvrpError",
    "CvrpInstance",
    "DEFAULT_LAYERS",
    "DiagramPoint",
    "DimensionMismatch",
    "DuplicateName",
    "EmptyInput",
    "EncodingKind",
    "FeasibilityVerdict",
    "GapDenominator",
    "GapRecord",
    "HardwareProfile",
    "ImpactEstimate",
    "IndexOutOfRange",
    "InstanceParams",
    "InvalidInstance",
    "LengthMismatch",
    "LogMode",
    "MalformedLine",
    "MissingSection",
    "QuboModel",
    "ResourceEstimate",
    "RouteDecoding",
    "SchemaError",
    "SizeConvention",
    "TooLarge",
    "UnsupportedEdgeWeightType",
    "VariableMap",
    "Violation",
    "WeightKind",
    "brute_force_solve",
    "build_qubo",
    "bundled_gap_csv",
    "bundled_params",
    "circuit_volume",
    "classify",
    "count_terms",
    "decode_routes",
    "default_profiles",
    "depth_estimate",
    "diagram_points",
    "energy",
    "error_rate_threshold",
    "estimate_instance",
    "export_model",
    "feasibility_diagram",
    "feasibility_point",
    "gap_records_from_csv",
    "get_profile",
    "hamiltonian_terms",
    "hobo_qubits",
    "impact_estimate",
    "infer_vehicle_count",
    "load_params_csv",
    "load_profiles",
    "measurement_estimate",
    "optimality_gap",
    "params_estimate",
    "parse_instance",
    "parse_model",
    "quantum_volume",
    "qubo_qubits",
    "render_gap_table",
    "render_resource_table",
    "serialize_instance",
]
