"""Permutationally invariant binary quantum codes.

Compressed weight-basis condition engine, a dense Knill-Laflamme oracle,
a self-validating code catalog and the 9-qubit family/no-go machinery.
"""

__version__ = "0.1.0"

# Default thresholds shared across modules.
ZERO_TOL = 1e-10  # oracle equality on unit-normalized states
KL_TOL = 1e-8  # Gram-matrix violation threshold
ENGINE_TOL = 1e-9  # scale-free condition residual threshold
