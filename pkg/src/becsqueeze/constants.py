"""Physical constants (SI, CODATA 2018)."""

HBAR = 1.054571817e-34  # J s
ATOMIC_MASS = 1.66053906660e-27  # kg

# Convenience atomic masses for common BEC species, kg.
MASS_NA23 = 22.98976928 * ATOMIC_MASS
MASS_RB87 = 86.909180531 * ATOMIC_MASS
