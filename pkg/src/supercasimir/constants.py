"""Physical constants in the eV / nm / K unit system used throughout.

Frequencies are carried as energies (hbar * xi in eV), lengths in nm.
"""

from scipy import constants as _c
from scipy.special import zeta as _zeta

#: hbar * c in eV nm (197.3269804...)
HBAR_C = _c.hbar * _c.c / _c.e * 1e9
#: Boltzmann constant in eV / K
K_B = _c.k / _c.e
#: 1 eV / nm^3 expressed in Pa
EV_PER_NM3_TO_PA = _c.e * 1e27
#: 1 eV / nm expressed in N
EV_PER_NM_TO_N = _c.e * 1e9
#: 1 eV / nm^2 expressed in N / m
EV_PER_NM2_TO_N_PER_M = _c.e * 1e18

ZETA3 = float(_zeta(3.0))
ZETA5 = float(_zeta(5.0))

#: upper limit of the scaled variable y = 2 a q; the integrands decay as exp(-y)
Y_MAX = 60.0
