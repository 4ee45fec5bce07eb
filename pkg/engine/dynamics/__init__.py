from dynamics.orbit import NOTE_TERM_LIMIT, NOTE_ZERO_FUNCTION, OrbitReport, orbit
from dynamics.families import (
    KIND_CONSTANT,
    KIND_FIXED,
    KIND_NONE,
    KIND_PERIOD2,
    Classification,
    CyclePair,
    check_constant_difference,
    classify,
    construct_fixed,
    construct_logistic,
    construct_period2,
    fixed_point_residual,
    is_period2_pair,
    riccati_residual,
)
