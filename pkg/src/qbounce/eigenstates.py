"""Bound states of a neutron bouncing on a horizontal mirror.

The stationary states are shifted Airy functions

    psi_n(z) = norm_n * Ai(z/z0 - lambda_n),   z >= 0,

with lambda_n the n-th zero magnitude of Ai, z0 the gravitational
length scale and E_n = lambda_n * m*g*z0.  The table caches the zeros,
energies and normalizations once; every operation afterwards is pure,
so a table can be shared freely across threads.

Matrix elements are evaluated by adaptive quadrature in the
dimensionless coordinate u = z/z0 (integrands are O(1) there, so the
absolute quadrature target translates directly into relative accuracy
of the results).  Closed forms such as <n|z|n> = (2/3) lambda_n z0
exist and are used by the test suite as independent oracles; the
implementation deliberately does not shortcut through them.
"""

from dataclasses import dataclass

import numpy as np

from .airy import airy_ai, airy_ai_and_prime, airy_zeros
from .constants import (GravityScales, PhysicalConstants, joules_to_hz,
                        joules_to_pev)
from .quadrature import adaptive_gauss

# quadrature window extends this many scale units past the outer turning
# point; the Airy tail decays super-exponentially, so the truncated mass
# is below 1e-12
TAIL_UNITS = 15.0
QUAD_TOL = 1e-9


@dataclass(frozen=True)
class MeanHeight:
    """Quantum mean height and classical turning point of one level (m)."""

    mean: float
    turning_point: float


class EigenstateTable:
    """Cached spectrum of the quantum bouncer for levels 1..n_max."""

    def __init__(self, n_max=100, constants=None):
        if n_max < 1:
            raise ValueError("EigenstateTable: n_max must be >= 1")
        self.constants = constants if constants is not None else PhysicalConstants()
        self.scales = GravityScales.from_constants(self.constants)
        self.n_max = int(n_max)
        self._lambda = airy_zeros(self.n_max)
        _, aip = airy_ai_and_prime(-self._lambda)
        # integral of Ai(u - lam)^2 over u >= 0 = Ai'(-lam)^2 when Ai(-lam) = 0
        self._norm = 1.0 / (np.sqrt(self.scales.z0) * np.abs(aip))
        self._aip_abs = np.abs(aip)
        self._me_cache = {}

    # -- bookkeeping -------------------------------------------------------

    def _check_level(self, n):
        if n != int(n) or not 1 <= n <= self.n_max:
            raise IndexError(
                f"level {n} outside the cached table (1..{self.n_max})")
        return int(n)

    @property
    def levels(self):
        return range(1, self.n_max + 1)

    def lam(self, n):
        """Dimensionless zero magnitude lambda_n."""
        return float(self._lambda[self._check_level(n) - 1])

    def norm(self, n):
        """Normalization constant of psi_n, in m^(-1/2)."""
        return float(self._norm[self._check_level(n) - 1])

    # -- energies ----------------------------------------------------------

    def energy(self, n):
        """Level energy E_n = lambda_n * e0, in J."""
        return self.lam(n) * self.scales.e0

    def energy_pev(self, n):
        return joules_to_pev(self.energy(n))

    def frequency_hz(self, n):
        """E_n / h."""
        return joules_to_hz(self.energy(n), self.constants)

    def transition_energy(self, m, n):
        """E_n - E_m (signed), in J."""
        return self.energy(n) - self.energy(m)

    def transition_frequency_hz(self, m, n):
        return joules_to_hz(self.transition_energy(m, n), self.constants)

    def transition_omega(self, m, n):
        """(E_n - E_m)/hbar, rad/s (signed)."""
        return self.transition_energy(m, n) / self.constants.hbar

    # -- wave functions ----------------------------------------------------

    def wavefunction(self, n, z):
        """psi_n(z) in m^(-1/2); z >= 0 (the mirror fills z < 0)."""
        n = self._check_level(n)
        z = np.asarray(z, dtype=np.float64)
        if np.any(z < 0):
            raise ValueError("wavefunction: z < 0 is inside the mirror")
        u = z / self.scales.z0 - self._lambda[n - 1]
        out = self._norm[n - 1] * airy_ai(u)
        return float(out) if np.isscalar(z) or z.ndim == 0 else out

    def _dimensionless_pair(self, m, n):
        """Ai(u-lam_m)*Ai(u-lam_n) normalized to unit overlap integrals."""
        lam_m = self._lambda[m - 1]
        lam_n = self._lambda[n - 1]
        inv = 1.0 / (self._aip_abs[m - 1] * self._aip_abs[n - 1])

        def product(u):
            return inv * airy_ai(u - lam_m) * airy_ai(u - lam_n)

        upper = max(lam_m, lam_n) + TAIL_UNITS
        return product, upper

    # -- matrix elements ----------------------------------------------------

    def overlap(self, m, n):
        """<m|n> by quadrature (1 on the diagonal, 0 off it)."""
        m, n = self._check_level(m), self._check_level(n)
        product, upper = self._dimensionless_pair(m, n)
        return adaptive_gauss(product, 0.0, upper, tol=QUAD_TOL)

    def matrix_element_z(self, m, n):
        """<m|z|n> by quadrature, in m.  Symmetric in (m, n)."""
        m, n = self._check_level(m), self._check_level(n)
        key = ("z", min(m, n), max(m, n))
        cached = self._me_cache.get(key)
        if cached is None:
            product, upper = self._dimensionless_pair(m, n)
            value = adaptive_gauss(lambda u: u * product(u), 0.0, upper,
                                   tol=QUAD_TOL)
            cached = value * self.scales.z0
            self._me_cache[key] = cached
        return cached

    def matrix_element_phase(self, n, q, m=None):
        """<m|exp(i q z)|n> by quadrature (m defaults to n); |result| <= 1."""
        n = self._check_level(n)
        m = n if m is None else self._check_level(m)
        if not np.isfinite(q):
            raise ValueError("matrix_element_phase: wavenumber must be finite")
        product, upper = self._dimensionless_pair(m, n)
        qz = q * self.scales.z0

        def integrand(u):
            return product(u) * np.exp(1j * qz * u)

        return complex(adaptive_gauss(integrand, 0.0, upper, tol=QUAD_TOL))

    def mean_height(self, n):
        """Mean height <n|z|n> and turning point lambda_n*z0 (= 3/2 mean)."""
        n = self._check_level(n)
        return MeanHeight(mean=self.matrix_element_z(n, n),
                          turning_point=self.lam(n) * self.scales.z0)
