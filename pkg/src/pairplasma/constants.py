"""Physical constants (CODATA 2018) and the derived strong-field scales.

SI units throughout. The rest of the package works in normalized units
(lengths in Compton wavelengths, times in Compton times, momenta in m_e*c,
fields in units of the critical field, densities in a reference density n0);
these constants are only needed by the SI-unit rate kernel and by the
SI <-> normalized conversion identity.
"""

C = 299792458.0  # speed of light (m/s)
M_E = 9.1093837015e-31  # electron mass (kg)
E_CHARGE = 1.602176634e-19  # elementary charge (C)
HBAR = 1.054571817e-34  # reduced Planck constant (J s)
ALPHA_FINE_STRUCTURE = 7.2973525693e-3  # fine-structure constant

# Critical field at which vacuum pair creation becomes unsuppressed (~1.3e16 V/cm).
E_CRIT = M_E**2 * C**3 / (E_CHARGE * HBAR)  # V/m

COMPTON_LENGTH = HBAR / (M_E * C)  # m
COMPTON_TIME = HBAR / (M_E * C**2)  # s
