from __future__ import annotations

import os


LOG_LEVEL = os.getenv("FRACLAP_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"

# Reserved: the solver paths are deterministic. The test suite seeds its generator from it.
RANDOM_SEED = int(os.getenv("FRACLAP_SEED", "0") or 0)

# Seed ("fine") rules the Lanczos compression starts from.
SEED_RULES = ("gauss-jacobi", "midpoint")
DEFAULT_SEED_RULE = "gauss-jacobi"
DEFAULT_FINE_N = {
    "gauss-jacobi": int(os.getenv("FRACLAP_FINE_N", "600") or 600),
    "midpoint": 20000,
}
LANCZOS_BREAKDOWN_TOL = 1e-14

# Reference truncations the experiment errors are measured against.
N_REF = 5
N_REF_OSCILLATORY = 40
N_REF_CONVERGENCE = 50
DT_REF = 2.0**-12
DIFFUSION_MODES = 10
DIFFUSION_T_FINAL = 1.0
DEFAULT_DTS = tuple(2.0**-k for k in range(4, 10))

# Error-measurement grids.
ERROR_GRID_RADIAL = 1000
ERROR_GRID_THETA_2D = 32
ERROR_GRID_THETA_3D = 16
ERROR_GRID_PHI_3D = 16
POISSON_TABLE_R_MIN = 0.5
# (-Delta)^{alpha/2} (1 - |x|^2)_+^s is unbounded at the sphere for s = 1, alpha > 1
CONVERGENCE_R_MAX = 0.9

# Output grids of the apply/solve commands.
OUTPUT_GRID_RADIAL = 21
OUTPUT_GRID_THETA = 8
OUTPUT_GRID_PHI = 8

# Thresholds of the internal checks run by the CLI.
MOMENT_CHECK_TOL = 1e-10
EXACT_CHECK_TOL = 1e-8
NONRADIAL_CHECK_TOL = 1e-5
DIFFUSION_SLOPE_RANGE = (0.85, 1.15)

DEFAULT_ALPHAS = (0.5, 1.0, 1.5)
DEFAULT_S_VALUES = (0, 1, 2, 3)
DEFAULT_N_VALUES = (0, 1, 2, 3, 4)
DEFAULT_OSCILLATORY_N = (5, 10, 15, 20, 25, 30)
DEFAULT_CONVERGENCE_S = (1, 2, 3)
DEFAULT_CONVERGENCE_N = (2, 4, 8, 16, 32)
