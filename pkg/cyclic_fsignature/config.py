"""Package-wide defaults and desk-scale guards."""

DEFAULT_TRIALS = 16
DEFAULT_SEED = 0

# Coefficient fields for the randomized rank oracle live in characteristic p.
MIN_FIELD_SIZE = 64
MAX_FIELD_SIZE = 2048

# q^2 caps, lifted on the command line with --unsafe-large.
ENUMERATION_GUARD = 10**6
ESTIMATOR_GUARD = 10**4

# Generators of the target up to this count get the full subset Hall bound.
HALL_SUBSET_CAP = 10

SEED_ENV_VAR = "FSIG_SEED"
