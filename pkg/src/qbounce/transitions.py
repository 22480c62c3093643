"""Resonant transitions between bouncer levels driven by an oscillating
perturbation.

The driven two-level transition probability is

    P(t) = 1/(1 + (delta/Omega)^2) * sin^2( sqrt(delta^2 + Omega^2) t/2 ),

with detuning delta = omega - omega_Nn and Rabi angular frequency
Omega = (2/hbar) |<n|V|N>| (note the factor-2 convention, used
consistently everywhere here).  The envelope over t is the Lorentzian
P_max = 1/(1 + (delta/Omega)^2), reached at the pulse time
T = pi/sqrt(delta^2 + Omega^2).

For a magnetic gradient drive, |<n|V|N>| = mu * beta * |<n|z|N>|: the
vertical-gradient channel preserves the spin state while the
horizontal-gradient channel flips it (which is what makes the
transition detectable), but both share the same Rabi magnitude.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

FLOW_THROUGH_LENGTH = 0.30      # m, mirror traversed once
FLOW_THROUGH_VELOCITY = 4.0     # m/s
FLOW_THROUGH_TIME = FLOW_THROUGH_LENGTH / FLOW_THROUGH_VELOCITY   # 75 ms


class PerturbationKind(Enum):
    MAGNETIC_VERTICAL_GRADIENT = "magnetic_vertical_gradient"
    MAGNETIC_HORIZONTAL_GRADIENT_SPINFLIP = "magnetic_horizontal_gradient_spinflip"
    GENERIC = "generic"


@dataclass(frozen=True)
class PerturbationSpec:
    """An oscillating drive.

    amplitude is the field gradient in T/m for the magnetic kinds, or
    the coupling matrix element |<n|V|N>| in J for the generic kind.
    """

    kind: PerturbationKind
    amplitude: float
    angular_frequency: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("PerturbationSpec: amplitude must be >= 0")

    @property
    def spin_flip(self):
        return self.kind is PerturbationKind.MAGNETIC_HORIZONTAL_GRADIENT_SPINFLIP


@dataclass(frozen=True)
class TransitionSpec:
    """A level pair with its transition and Rabi angular frequencies."""

    from_level: int
    to_level: int
    omega: float        # (E_to - E_from)/hbar, rad/s, signed
    rabi_omega: float   # rad/s, >= 0

    def __post_init__(self):
        if self.rabi_omega < 0:
            raise ValueError("TransitionSpec: rabi_omega must be >= 0")


def transition_spec(table, from_level, to_level, rabi_omega=None,
                    perturbation=None):
    """Build a TransitionSpec from the eigenstate table.

    Pass either an explicit Rabi angular frequency or a PerturbationSpec
    (magnetic kinds use the gradient amplitude, generic kinds the
    coupling energy).
    """
    if (rabi_omega is None) == (perturbation is None):
        raise ValueError("transition_spec: give exactly one of rabi_omega "
                         "and perturbation")
    if perturbation is not None:
        if perturbation.kind is PerturbationKind.GENERIC:
            rabi_omega = 2.0 * perturbation.amplitude / table.constants.hbar
        else:
            rabi_omega = magnetic_rabi_frequency(
                table, from_level, to_level, perturbation.amplitude)
    return TransitionSpec(from_level=from_level, to_level=to_level,
                          omega=table.transition_omega(from_level, to_level),
                          rabi_omega=float(rabi_omega))


def rabi_probability(spec, omega, t):
    """Transition probability after driving for time t at frequency omega.

    A zero Rabi frequency means no drive: the probability is 0 even on
    resonance.
    """
    omega = np.asarray(omega, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("rabi_probability: t must be >= 0")
    delta = omega - spec.omega
    if spec.rabi_omega == 0.0:
        p = np.zeros(np.broadcast(delta, t).shape)
    else:
        w = np.sqrt(delta ** 2 + spec.rabi_omega ** 2)
        p = (spec.rabi_omega / w) ** 2 * np.sin(0.5 * w * t) ** 2
    return p if p.ndim else float(p)


def max_probability(spec, omega):
    """Lorentzian envelope of the transition probability over time."""
    omega = np.asarray(omega, dtype=float)
    if spec.rabi_omega == 0.0:
        p = np.zeros(omega.shape)
    else:
        delta = (omega - spec.omega) / spec.rabi_omega
        p = 1.0 / (1.0 + delta ** 2)
    return p if p.ndim else float(p)


def pulse_time(spec, omega):
    """Duration maximizing the transition probability at drive omega."""
    delta = float(omega) - spec.omega
    w2 = delta ** 2 + spec.rabi_omega ** 2
    if w2 == 0.0:
        raise ValueError("pulse_time: undefined for zero drive on resonance")
    return math.pi / math.sqrt(w2)


def magnetic_rabi_frequency(table, from_level, to_level, beta):
    """Rabi angular frequency (2/hbar) mu beta |<n|z|N>| for gradient beta."""
    if beta < 0:
        raise ValueError("magnetic_rabi_frequency: gradient must be >= 0")
    if from_level == to_level:
        raise ValueError("magnetic_rabi_frequency: levels must differ")
    c = table.constants
    me = abs(table.matrix_element_z(from_level, to_level))
    return 2.0 * c.neutron_magnetic_moment * beta * me / c.hbar


def required_gradient(table, from_level, to_level, duration):
    """Gradient (T/m) giving unit transfer at resonance after `duration`.

    Solves Omega * T = pi, so it falls inversely with the available
    pulse time.
    """
    if duration <= 0:
        raise ValueError("required_gradient: duration must be > 0")
    if from_level == to_level:
        raise ValueError("required_gradient: levels must differ")
    c = table.constants
    me = abs(table.matrix_element_z(from_level, to_level))
    return math.pi * c.hbar / (2.0 * c.neutron_magnetic_moment * me * duration)


@dataclass(frozen=True)
class ResonanceScan:
    """Envelope-probability scan over a frequency grid.

    One column per reachable final level plus their pointwise maximum.
    Columns are never summed: probabilities to distinct final states do
    not add up in a scan plot.
    """

    initial_level: int
    rabi_omega: float
    frequencies_hz: np.ndarray
    final_levels: tuple
    probabilities: np.ndarray   # shape (len(grid), len(final_levels))
    envelope: np.ndarray


def resonance_scan(table, initial_level, frequencies_hz, rabi_omega):
    """Scan max_probability over a frequency grid for one initial level.

    Final levels are every higher level whose resonance lies within the
    scanned window.
    """
    freqs = np.asarray(frequencies_hz, dtype=float)
    if freqs.size == 0:
        raise ValueError("resonance_scan: empty frequency grid")
    if np.any(freqs <= 0):
        raise ValueError("resonance_scan: frequencies must be positive")
    f_max = float(freqs.max())
    finals = [n for n in table.levels if n > initial_level
              and table.transition_frequency_hz(initial_level, n) <= f_max]
    if not finals:
        raise ValueError("resonance_scan: no transition inside the grid")
    omega_grid = 2.0 * math.pi * freqs
    cols = []
    for n in finals:
        spec = transition_spec(table, initial_level, n, rabi_omega=rabi_omega)
        cols.append(max_probability(spec, omega_grid))
    probs = np.column_stack(cols)
    return ResonanceScan(initial_level=initial_level, rabi_omega=float(rabi_omega),
                         frequencies_hz=freqs, final_levels=tuple(finals),
                         probabilities=probs, envelope=probs.max(axis=1))


def energy_resolution(table, duration, reference_level=1):
    """Uncertainty-limited width dE = h/(2T) and its ratio to E_ref."""
    if duration <= 0:
        raise ValueError("energy_resolution: duration must be > 0")
    de = table.constants.planck_h / (2.0 * duration)
    return de, de / table.energy(reference_level)
