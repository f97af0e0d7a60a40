"""Exact representation-function statistics and finite checks of their inequalities."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AddrepError,
    CapacityError,
    ConfigError,
    ConstructionError,
    DomainError,
    OutOfBoundError,
    PositivityError,
    SequenceParseError,
    TruncationError,
)
from .sequences import (  # noqa: E402
    IntegerSequence,
    complement,
    counting_function,
    density_in,
    parse_sequence_text,
    read_sequence,
    sumset,
    write_sequence,
)
from .repfuncs import RepProfile, naive_profiles, rep_profiles  # noqa: E402
from .partial_sums import SumProfile, l1_sum, m_of, s_profile, t_of, t_plus  # noqa: E402
from .analytic import (  # noqa: E402
    AnalyticValue,
    dyadic_sum,
    g_of,
    g_two_ways,
    h_cascade,
    h_cascade_recurrence,
    identity28_check,
    ineq33_check,
    psi,
)
from .constructions import (  # noqa: E402
    build_instance,
    greedy_sidon,
    is_sidon,
    monotonicity_violations,
    powers_of_two,
)
from .harness import VerificationReport, run_experiment  # noqa: E402
