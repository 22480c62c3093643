"""Geometric loss channels of a neutron trap built from mirrors.

Three mechanisms empty a quantum level:

* waviness of the bottom mirror: the moving neutron sees the surface
  profile as a time-dependent boundary; the loss rate into level n is
  (m g / hbar)^2 (1/v) PSD(f_Nn / v) with PSD the surface power
  spectral density at the transition's spatial frequency;
* a side wall tilted by alpha from vertical: each bounce is a sudden
  momentum kick q = (m v / hbar) sin(2 alpha), and the survival
  probability of level N is |<N|exp(i q z)|N>|^2;
* a brink at the mirror edge, treated as free fall (no mirror) for the
  traversal time, after which the overlap with the original state has
  decayed.

The free-fall step is propagated by a split-operator FFT scheme; for a
linear potential the Strang splitting is exact up to a global phase
(all nested commutators beyond the c-number one vanish), so the grid
resolution is the only source of error.  A direct quadrature of the
free-fall kernel is kept as an independent cross-check; it carries the
global phase term -m g^2 t^3 / (24 hbar) that the split-step scheme
accumulates implicitly, so the two agree pointwise, not just in
modulus.
"""

import math
import struct
import warnings
from dataclasses import dataclass

import numpy as np

NM2_MM_TO_M3 = 1e-21   # 1 nm^2 mm in m^3


class TruncationWarning(UserWarning):
    """The evolved packet reached the edge of its grid."""


# ---------------------------------------------------------------------------
# surface roughness spectrum

@dataclass(frozen=True)
class PSDModel:
    """Power-law roughness spectrum amplitude*(K/k_ref)^exponent.

    amplitude is quoted in nm^2 mm at the reference wavenumber
    (defaults: 2e-4 nm^2 mm at 1/mm with exponent -2.9, the measured
    spectrum of a high-quality polished Si substrate).
    """

    amplitude_nm2_mm: float = 2e-4
    exponent: float = -2.9
    k_ref: float = 1e3           # 1/m

    def __post_init__(self):
        if self.amplitude_nm2_mm <= 0:
            raise ValueError("PSDModel: amplitude must be > 0")
        if self.k_ref <= 0:
            raise ValueError("PSDModel: reference wavenumber must be > 0")


def psd_eval(model, k):
    """Model spectral density at wavenumber k (cycles/m), in m^3; k > 0."""
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0):
        raise ValueError("psd_eval: wavenumber must be > 0 (power law diverges)")
    out = model.amplitude_nm2_mm * NM2_MM_TO_M3 * (k / model.k_ref) ** model.exponent
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class SurfaceProfile:
    """Height samples xi_j at uniform spacing dx, heights and dx in m."""

    samples: np.ndarray
    spacing: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size < 2:
            raise ValueError("SurfaceProfile: need at least 2 samples")
        if not np.all(np.isfinite(samples)):
            raise ValueError("SurfaceProfile: samples must be finite")
        if not (self.spacing > 0 and math.isfinite(self.spacing)):
            raise ValueError("SurfaceProfile: spacing must be positive")

    @property
    def length(self):
        return self.samples.size * self.spacing

    @classmethod
    def from_xy(cls, x, xi, rtol=1e-6):
        """Build from coordinate/height columns, requiring uniform spacing."""
        x = np.asarray(x, dtype=float)
        xi = np.asarray(xi, dtype=float)
        if x.size != xi.size or x.size < 2:
            raise ValueError("SurfaceProfile: mismatched or too-short columns")
        steps = np.diff(x)
        dx = steps.mean()
        if dx <= 0 or np.any(np.abs(steps - dx) > rtol * abs(dx)):
            raise ValueError("SurfaceProfile: sampling must be uniform")
        return cls(samples=xi, spacing=float(dx))


def psd_estimate(profile, k_grid, window=None):
    """Periodogram (1/L)|sum_j xi_j exp(2 pi i K x_j) dx|^2 on a K grid.

    Two-sided in K (pass negative wavenumbers for the mirror half).
    window=None is the plain rectangular estimate matching the
    definition; window="hann" trades resolution for leakage control.
    """
    k = np.asarray(k_grid, dtype=float)
    xi = profile.samples
    if window is None:
        data = xi
        norm = profile.length
    elif window == "hann":
        w = np.hanning(xi.size)
        data = xi * w
        # keep the estimate unbiased for broadband signals
        norm = np.sum(w ** 2) * profile.spacing
    else:
        raise ValueError(f"psd_estimate: unknown window {window!r}")
    x = np.arange(xi.size) * profile.spacing
    out = np.empty(k.shape, dtype=float)
    flat = out.reshape(-1)
    kf = k.reshape(-1)
    chunk = max(1, int(4e6 // max(xi.size, 1)))
    for i in range(0, kf.size, chunk):
        phases = np.exp(2j * math.pi * np.outer(kf[i:i + chunk], x))
        amp = phases @ data * profile.spacing
        flat[i:i + chunk] = np.abs(amp) ** 2 / norm
    return out if out.ndim else float(out)


def read_profile_text(path):
    """Two-column text file (x in m, height in m)."""
    data = np.loadtxt(path)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError("profile text file must have two columns (x, xi)")
    return SurfaceProfile.from_xy(data[:, 0], data[:, 1])


_PROFILE_HEADER = struct.Struct("<Qd")   # sample count, spacing (m)


def read_profile_binary(path):
    """Binary profile: little-endian uint64 count, float64 spacing, samples."""
    with open(path, "rb") as fh:
        head = fh.read(_PROFILE_HEADER.size)
        if len(head) != _PROFILE_HEADER.size:
            raise ValueError("profile binary file: truncated header")
        count, spacing = _PROFILE_HEADER.unpack(head)
        samples = np.fromfile(fh, dtype="<f8", count=count)
    if samples.size != count:
        raise ValueError("profile binary file: truncated samples")
    return SurfaceProfile(samples=samples, spacing=spacing)


def write_profile_binary(path, profile):
    with open(path, "wb") as fh:
        fh.write(_PROFILE_HEADER.pack(profile.samples.size, profile.spacing))
        profile.samples.astype("<f8").tofile(fh)


def load_profile(path):
    """Dispatch on extension: .txt/.dat/.csv as text, anything else binary."""
    suffix = str(path).rsplit(".", 1)[-1].lower()
    if suffix in ("txt", "dat", "csv"):
        return read_profile_text(path)
    return read_profile_binary(path)


# ---------------------------------------------------------------------------
# trap geometry

@dataclass(frozen=True)
class TrapGeometry:
    """Bottom mirror plus side walls; lengths in m, angle in rad."""

    mirror_length: float = 0.30
    wall_angle: float = 1e-5
    brink_size: float = 50e-6
    velocity: float = 5.0
    effective_hole_factor: float = 2.0

    def __post_init__(self):
        if self.mirror_length <= 0 or self.velocity <= 0:
            raise ValueError("TrapGeometry: lengths and velocity must be > 0")
        if self.brink_size < 0 or self.wall_angle < 0:
            raise ValueError("TrapGeometry: brink size and angle must be >= 0")
        if self.effective_hole_factor <= 0:
            raise ValueError("TrapGeometry: effective_hole_factor must be > 0")

    @property
    def effective_hole(self):
        """Reflection on the vertical mirror doubles the geometric brink."""
        return self.effective_hole_factor * self.brink_size

    @property
    def collision_rate(self):
        """Side-wall encounter rate v/L."""
        return self.velocity / self.mirror_length


# ---------------------------------------------------------------------------
# waviness channel

def waviness_rate(table, from_level, to_level, velocity, model):
    """Loss rate into one final level from the moving-boundary coupling."""
    if from_level == to_level:
        raise ValueError("waviness_rate: levels must differ")
    if velocity <= 0:
        raise ValueError("waviness_rate: velocity must be > 0")
    c = table.constants
    f = abs(table.transition_frequency_hz(from_level, to_level))
    prefactor = (c.neutron_mass * c.gravity / c.hbar) ** 2
    return prefactor / velocity * psd_eval(model, f / velocity)


@dataclass(frozen=True)
class WavinessTotal:
    """Summed waviness rate with its cutoff-sensitivity companion."""

    rate: float
    cutoff: int
    rate_half_cutoff: float

    @property
    def cutoff_change(self):
        """Relative change when halving the final-state cutoff."""
        if self.rate == 0.0:
            return 0.0
        return abs(self.rate - self.rate_half_cutoff) / self.rate


def waviness_total(table, level, velocity, model, n_cutoff=None):
    """Waviness rate summed over bound final states up to n_cutoff."""
    if n_cutoff is None:
        n_cutoff = table.n_max
    if not 1 <= n_cutoff <= table.n_max:
        raise ValueError("waviness_total: cutoff outside the table")
    pairs = [(n, waviness_rate(table, level, n, velocity, model))
             for n in range(1, n_cutoff + 1) if n != level]
    half = max(1, n_cutoff // 2)
    return WavinessTotal(rate=float(sum(r for _, r in pairs)),
                         cutoff=int(n_cutoff),
                         rate_half_cutoff=float(sum(r for n, r in pairs
                                                    if n <= half)))


# ---------------------------------------------------------------------------
# side-wall channel (sudden kick)

MAX_WALL_ANGLE = 0.1   # rad; beyond this the small-angle kick picture fails


def wall_escape_probability(table, level, velocity, alpha):
    """Probability of leaving the level in one wall collision."""
    if not 0.0 <= alpha < MAX_WALL_ANGLE:
        raise ValueError(f"wall_escape_probability: alpha must be in "
                         f"[0, {MAX_WALL_ANGLE})")
    if velocity <= 0:
        raise ValueError("wall_escape_probability: velocity must be > 0")
    if alpha == 0.0:
        return 0.0
    c = table.constants
    q = c.neutron_mass * velocity / c.hbar * math.sin(2.0 * alpha)
    survival = abs(table.matrix_element_phase(level, q)) ** 2
    return float(min(1.0, max(0.0, 1.0 - survival)))


def wall_rate(table, level, geom):
    """Side-wall loss rate (v/L) * escape probability."""
    p = wall_escape_probability(table, level, geom.velocity, geom.wall_angle)
    return geom.collision_rate * p


# ---------------------------------------------------------------------------
# free fall at the corner brink

FALL_GRID_BELOW = 100e-6    # m of grid below the mirror plane
FALL_GRID_ABOVE = 150e-6    # m of grid above the turning point
FALL_GRID_SPACING = 25e-9   # m, upper bound on the grid step
MAX_FALL_TIME = 5e-3        # s; longer falls leave any reasonable grid
EDGE_PROBABILITY_LIMIT = 1e-8
_EDGE_POINTS = 32


def fall_grid(table, level, spacing=FALL_GRID_SPACING):
    """Uniform grid holding level `level` with room to fall and spread."""
    top = table.lam(level) * table.scales.z0 + FALL_GRID_ABOVE
    span = top + FALL_GRID_BELOW
    n = 1 << int(math.ceil(math.log2(span / spacing)))
    dz = span / n
    return -FALL_GRID_BELOW + dz * np.arange(n)


def sample_state(table, level, z):
    """psi_level on a grid that may extend below the mirror (zero there),
    renormalized to unit discrete norm."""
    psi = np.zeros_like(z)
    above = z >= 0.0
    psi[above] = table.wavefunction(level, z[above])
    dz = z[1] - z[0]
    psi /= math.sqrt(np.sum(psi ** 2) * dz)
    return psi


def free_fall_evolve(z, psi, t, constants, steps=None):
    """Propagate psi through free fall (gravity, no mirror) for time t.

    Split-operator FFT scheme on the given uniform grid.  The discrete
    evolution is exactly unitary; a TruncationWarning is issued if more
    than 1e-8 of the probability ends up within a few points of either
    grid edge (wrap-around would corrupt later overlaps).
    """
    z = np.asarray(z, dtype=float)
    dz = z[1] - z[0]
    if not np.allclose(np.diff(z), dz, rtol=1e-6, atol=0.0):
        raise ValueError("free_fall_evolve: grid must be uniform")
    if not 0.0 <= t <= MAX_FALL_TIME:
        raise ValueError(
            f"free_fall_evolve: t must be in [0, {MAX_FALL_TIME:g}] s")
    if t == 0:
        return np.asarray(psi, dtype=complex).copy()
    if steps is None:
        steps = max(16, int(round(t / 1e-6)))
    dt = t / steps
    m, g, hbar = constants.neutron_mass, constants.gravity, constants.hbar
    k = 2.0 * math.pi * np.fft.fftfreq(z.size, d=dz)
    kinetic = np.exp(-0.5j * hbar * k ** 2 * dt / m)
    half_pot = np.exp(-0.5j * m * g * z * dt / hbar)
    full_pot = half_pot ** 2

    out = np.asarray(psi, dtype=complex) * half_pot
    for step in range(steps):
        out = np.fft.ifft(kinetic * np.fft.fft(out))
        out *= full_pot if step < steps - 1 else half_pot

    edge = (np.sum(np.abs(out[:_EDGE_POINTS]) ** 2)
            + np.sum(np.abs(out[-_EDGE_POINTS:]) ** 2)) * dz
    if edge > EDGE_PROBABILITY_LIMIT:
        warnings.warn(
            f"free fall for {t:g} s pushed probability {edge:.2e} to the "
            "grid edge; enlarge the grid", TruncationWarning, stacklevel=2)
    return out


def free_fall_kernel(z_src, psi_src, t, z_eval, constants):
    """Direct quadrature of the free-fall kernel at a few eval points.

    Cross-check for free_fall_evolve; O(len(z_eval) * len(z_src)) with a
    Simpson rule over the source grid, which must resolve the kernel
    oscillation (m |dz|^2 / (2 hbar t) << 1 per step near the packet).
    Includes the global phase -m g^2 t^3/(24 hbar) of the exact kernel.
    """
    z_src = np.asarray(z_src, dtype=float)
    if z_src.size % 2 == 0:
        raise ValueError("free_fall_kernel: need an odd number of source samples")
    dz = z_src[1] - z_src[0]
    m, g, hbar = constants.neutron_mass, constants.gravity, constants.hbar
    weights = np.ones(z_src.size)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    weights *= dz / 3.0

    prefactor = np.sqrt(m / (2j * math.pi * hbar * t))
    global_phase = np.exp(-1j * m * g ** 2 * t ** 3 / (24.0 * hbar))
    out = np.empty(len(z_eval), dtype=complex)
    for i, z in enumerate(np.asarray(z_eval, dtype=float)):
        phase = (m / (2.0 * hbar)) * ((z - z_src) ** 2 / t - (z + z_src) * g * t)
        out[i] = np.sum(weights * psi_src * np.exp(1j * phase))
    return prefactor * global_phase * out


def corner_loss_probability(table, level, t_fall, spacing=FALL_GRID_SPACING,
                            steps=None):
    """Probability of leaving `level` after free-falling for t_fall.

    1 - |<psi_level | U_fall(t) | psi_level>|^2, clamped to [0, 1].
    """
    if t_fall < 0:
        raise ValueError("corner_loss_probability: t_fall must be >= 0")
    if t_fall == 0:
        return 0.0
    z = fall_grid(table, level, spacing=spacing)
    psi0 = sample_state(table, level, z)
    psi_t = free_fall_evolve(z, psi0, t_fall, table.constants, steps=steps)
    dz = z[1] - z[0]
    overlap = np.sum(psi0 * psi_t) * dz
    return float(min(1.0, max(0.0, 1.0 - abs(overlap) ** 2)))


def corner_loss_curve(table, level, times, spacing=FALL_GRID_SPACING):
    """corner_loss_probability over an increasing time grid.

    Evolves once through the sorted grid instead of restarting from
    t = 0 for every point (the split-step scheme accumulates no
    splitting error for a linear potential, so chaining segments is
    safe).
    """
    times = np.asarray(times, dtype=float)
    if np.any(times < 0) or np.any(np.diff(times) <= 0):
        raise ValueError("corner_loss_curve: times must be increasing and >= 0")
    z = fall_grid(table, level, spacing=spacing)
    psi0 = sample_state(table, level, z)
    dz = z[1] - z[0]
    out = np.empty(times.size)
    psi = psi0.astype(complex)
    t_prev = 0.0
    for i, t_now in enumerate(times):
        if t_now > t_prev:
            psi = free_fall_evolve(z, psi, t_now - t_prev, table.constants)
            t_prev = t_now
        overlap = np.sum(psi0 * psi) * dz
        out[i] = min(1.0, max(0.0, 1.0 - abs(overlap) ** 2))
    return out


def corner_rate(table, level, geom):
    """Corner-defect loss rate (v/L) * P_loss(effective hole / v)."""
    if geom.brink_size == 0.0:
        return 0.0
    t_fall = geom.effective_hole / geom.velocity
    return geom.collision_rate * corner_loss_probability(table, level, t_fall)
