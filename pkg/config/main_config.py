# config/main_config.py

# --- Numerical Tolerances ---
# Residual allowed for the stationarity equation e^x = 2x + 1 at x*
ROOT_RESIDUAL_TOLERANCE = 1e-10
# Relative tolerance for the parameter identity chain (b, p, alpha, ell)
IDENTITY_TOLERANCE = 1e-10
# Bracket and iteration count for the bisection that finds x*
LAMBDA_BRACKET = (1e-3, 10.0)
LAMBDA_BISECTION_ITERATIONS = 60


# --- Construction Defaults ---
# c from the headline statement; used only when reporting c^t
DEFAULT_C = 0.5
# Resampling attempts for G(d, p) in construct_g0
DEFAULT_G0_RETRIES = 50


# --- Minor Search Budgets ---
# Branch-and-bound nodes explored before a search is declared inconclusive
DEFAULT_NODE_LIMIT = 1_000_000
# Wall-clock seconds before a search is declared inconclusive
DEFAULT_TIME_LIMIT = 60.0
# The naive oracle refuses hosts larger than this
NAIVE_MAX_VERTICES = 9
# Largest host graph the estimate pipeline will hand to the minor search
MAX_HOST_VERTICES = 60


# --- Enumeration Budgets ---
# Work estimate above which exhaustive enumerations refuse to run
ENUMERATION_BUDGET = 10_000_000
# Random blobbings drawn when the good-pair minimum is sampled
GOOD_PAIR_SAMPLES = 2000


# --- Property (star) Verification ---
STAR_SAMPLES = 2000
STAR_RESTARTS = 200
# Non-improving local-search moves tolerated before a restart ends
STAR_PATIENCE = 50
# Rejection-sampling attempts per sampled collection of disjoint sets
STAR_REJECTION_ATTEMPTS = 1000


# --- Reporting ---
CONFIDENCE_LEVEL = 0.95
# Significant digits used in the flat key=value params record
PARAMS_SIGNIFICANT_DIGITS = 12


# --- Application Behavior ---
# Environment variable consulted when --seed is not given on the command line
SEED_ENV_VAR = "MINORS_SEED"
# Set to True to enable verbose logging for debugging purposes
VERBOSE_LOGGING = True
