"""Numerical tolerances shared across the package."""

# Row sums of P^t must stay within this of 1.
PROBABILITY_SUM_TOL = 1e-12

# Walk-signature entries with |value| <= SIGN_TIE_RTOL * max|value| count as
# zero (and therefore go to the first cluster). The signature is carried
# relative to its own scale, so the tie test is relative too.
SIGN_TIE_RTOL = 1e-10

# Absolute slack on the split-acceptance test Q(C1) + Q(C2) > Q(C).
SPLIT_ACCEPT_SLACK = 1e-12

# Refinement sweeps (two-way modularity repair) are capped at this many.
REFINE_SWEEP_CAP = 100

# Louvain: stop when a level improves modularity by no more than this.
DEFAULT_MIN_GAIN = 1e-9
DEFAULT_MAX_LEVELS = 100
# Hard stop for a single local-moving phase; never reached on integer weights.
LOCAL_MOVE_PASS_CAP = 10_000

# Slack for the runtime monotonicity assertions.
MONOTONE_SLACK = 1e-12

# Power iteration for the second eigenpair.
EIGVEC_CHANGE_TOL = 1e-10
EIGEN_RESIDUAL_TOL = 1e-8
EIGEN_MAX_ITER = 100_000
EIGEN_PLATEAU_ITER = 10_000
EIGEN_PLATEAU_TOL = 1e-6
DEGENERATE_GAP_TOL = 1e-6
