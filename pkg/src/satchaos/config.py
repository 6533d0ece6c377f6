"""Global tolerances and resource guards.

Every numeric tolerance used across the package lives here so that tests,
the CLI, and library callers agree on one set of constants.
"""

# Numerical tolerances.
SINGLE_OP_ATOL = 1e-12      # one gate application / one channel step / linearity
ACCUMULATED_ATOL = 1e-10    # norm budget for a whole pipeline, scaled by op count
UNITARITY_ATOL = 1e-14      # max-abs deviation of U†U from the identity
AMPLITUDE_PRUNE_EPS = 1e-15 # machine branches below this magnitude are dropped
STATE_DUMP_EPS = 1e-14      # amplitudes below this are omitted from state dumps
SAT_DECISION_EPS = 1e-12    # q² above this counts as nonzero (exact decision)
INTEGRALITY_ATOL = 1e-6     # q²·2^n must sit this close to an integer

# Resource guards (refusals, not crashes).
DEFAULT_MAX_QUBITS = 26     # 2^26 complex128 amplitudes is about 1 GiB
DEFAULT_MAX_ENUM_VARS = 30  # brute-force assignment enumeration cap
DEFAULT_MAX_MACHINE_VARS = 3  # full superposed machine runs (2^n branches)

# Amplifier defaults.
DEFAULT_LOGISTIC_A = 3.71
DEFAULT_THRESHOLD = 0.5


class GuardExceeded(RuntimeError):
    """A configured resource guard refused the requested computation."""
