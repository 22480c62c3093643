"""Physical constants and the gravitational scales of the bouncing neutron.

Everything internal is SI; helpers convert to display units (peV, Hz,
micrometres) at the presentation edge only.
"""

import math
from dataclasses import dataclass

# CODATA / SI reference values
NEUTRON_MASS = 1.67492749804e-27      # kg
STANDARD_GRAVITY = 9.80665            # m/s^2
PLANCK_H = 6.62607015e-34             # J s (exact)
HBAR = PLANCK_H / (2.0 * math.pi)     # J s
NEUTRON_MAGNETIC_MOMENT = 9.6623651e-27   # J/T (magnitude)
EARTH_ROTATION_RATE = 7.2921e-5       # rad/s (sidereal)
BETA_LIFETIME = 886.0                 # s
ELEMENTARY_CHARGE = 1.602176634e-19   # C

PEV = ELEMENTARY_CHARGE * 1e-12       # J per pico-electronvolt


@dataclass(frozen=True)
class PhysicalConstants:
    """Constants entering the bouncer problem; all strictly positive."""

    neutron_mass: float = NEUTRON_MASS
    gravity: float = STANDARD_GRAVITY
    hbar: float = HBAR
    planck_h: float = PLANCK_H
    neutron_magnetic_moment: float = NEUTRON_MAGNETIC_MOMENT
    earth_rotation_rate: float = EARTH_ROTATION_RATE
    beta_lifetime: float = BETA_LIFETIME

    def __post_init__(self):
        for name in ("neutron_mass", "gravity", "hbar", "planck_h",
                     "neutron_magnetic_moment", "earth_rotation_rate",
                     "beta_lifetime"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)
                    and value > 0):
                raise ValueError(f"PhysicalConstants.{name} must be positive")
        if abs(self.planck_h - 2.0 * math.pi * self.hbar) > 1e-12 * self.planck_h:
            raise ValueError(
                "PhysicalConstants: planck_h must equal 2*pi*hbar "
                "(relative tolerance 1e-12)")

    @property
    def beta_rate(self):
        """Free-neutron decay rate, 1/s."""
        return 1.0 / self.beta_lifetime


@dataclass(frozen=True)
class GravityScales:
    """Natural units of the bouncer: height z0, energy e0 = m g z0, f0 = e0/h."""

    z0: float
    e0: float
    f0: float

    @classmethod
    def from_constants(cls, c: PhysicalConstants):
        z0 = (c.hbar ** 2 / (2.0 * c.neutron_mass ** 2 * c.gravity)) ** (1.0 / 3.0)
        e0 = c.neutron_mass * c.gravity * z0
        return cls(z0=z0, e0=e0, f0=e0 / c.planck_h)


def joules_to_pev(energy):
    return energy / PEV


def joules_to_hz(energy, constants: PhysicalConstants):
    return energy / constants.planck_h
