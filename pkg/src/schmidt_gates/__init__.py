"""Geometric two-qubit gates induced by loops on the Schmidt sphere.

The package constructs holonomy gates from closed paths of Schmidt
coordinates, reverse-engineers the piecewise Hamiltonian schedules that
drive them, simulates those schedules (including Trotterized pulse
sequences), and classifies the resulting gates by their local invariants.
"""

from .linalg import (
    ATOL_ALGEBRAIC,
    ATOL_PIPELINE,
    gate_fidelity,
    herm_exp,
    phase_aligned_distance,
    tensor_product,
)
from .sphere import (
    SchmidtCoordinates,
    SchmidtDecomposition,
    SchmidtPath,
    LinearSegment,
    RotationSegment,
    SampledSegment,
    assemble_state,
    concurrence,
    equator_arc,
    meridian_arc,
    schmidt_decompose,
    solid_angle,
    sphere_point,
)
from .gates import (
    GeometricGateSpec,
    frame_unitaries,
    lambda_gate,
    schmidt_gate,
    u_general,
)
from .invariants import (
    EntanglerClass,
    LocalInvariants,
    bell_transform,
    classify,
    closed_form_invariants,
    makhlin_invariants,
)
from .dynamics import (
    ConstantPulse,
    HamiltonianSchedule,
    SampledPulse,
    SpinOperators,
    TrotterPlan,
    composed_tilted_gate,
    dynamical_phase,
    extract_rotation_angle,
    orange_slice_path,
    propagate,
    reverse_engineer,
    tilted_schedule,
    tilted_segment_propagator,
    trotter_propagate,
    two_pulse_schedule,
)

__version__ = "0.1.0"
