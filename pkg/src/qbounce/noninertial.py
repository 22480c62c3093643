"""Earth-rotation effects on the bouncer spectrum.

In the rotating frame the coupling of horizontal velocity to vertical
motion adds a potential -Omega_E * cos(theta) * m * v_NS * z, which in
first order shifts level n by Omega_E cos(theta) m v_NS <n|z|n>.  The
same physics can be read as a velocity-dependent change of the
effective free-fall acceleration, g -> g (1 + delta), under which the
energies scale as g^(2/3); both evaluations are exposed and agree to
first order in the (tiny) delta.

Computed magnitudes here come out near 2e-5 relative for |v| = 5 m/s,
noticeably larger than the ~1e-6 sometimes quoted for the ground
state; downstream reports carry both numbers side by side rather than
forcing agreement (see the relative_shift_reference constant).
"""

from dataclasses import dataclass

# reference relative shift for the ground state at |v| = 5 m/s quoted in
# earlier estimates; reported alongside the computed value, which is
# roughly an order of magnitude larger
RELATIVE_SHIFT_REFERENCE = 1e-6
ZEEMAN_SHIFT_REFERENCE_PEV = 6e-8


@dataclass(frozen=True)
class RotationContext:
    """Where the trap sits and how the neutron moves.

    latitude_cos is cos(latitude); 0.7 matches the reference site.
    v_ns is the signed North-South velocity component in m/s.
    """

    latitude_cos: float = 0.7
    v_ns: float = 5.0

    def __post_init__(self):
        if not 0.0 <= self.latitude_cos <= 1.0:
            raise ValueError("RotationContext: latitude_cos must be in [0, 1]")


def rotation_energy_shift(table, n, ctx):
    """First-order level shift Omega_E cos(theta) m v_NS <n|z|n>, in J.

    Antisymmetric and exactly linear in v_ns; zero for East-West travel.
    """
    c = table.constants
    mean_z = table.matrix_element_z(n, n)
    return c.earth_rotation_rate * ctx.latitude_cos * c.neutron_mass * ctx.v_ns * mean_z


def rotation_energy_shift_effective_g(table, n, ctx):
    """Same shift read as a g -> g(1 + delta) rescaling, E ~ g^(2/3).

    Cross-check for rotation_energy_shift; agrees to first order in
    delta = Omega_E cos(theta) v_ns / g.
    """
    c = table.constants
    delta = c.earth_rotation_rate * ctx.latitude_cos * ctx.v_ns / c.gravity
    return table.energy(n) * ((1.0 + delta) ** (2.0 / 3.0) - 1.0)


def rotation_frequency_blur(table, n, speed, ctx):
    """Level blur |shift(n, v_ns=speed)|/h in Hz: the spread between
    North-South and East-West travellers at the given speed."""
    if speed <= 0:
        raise ValueError("rotation_frequency_blur: speed must be > 0")
    ns = RotationContext(latitude_cos=ctx.latitude_cos, v_ns=abs(speed))
    return abs(rotation_energy_shift(table, n, ns)) / table.constants.planck_h


def rotational_zeeman_shift(constants):
    """Spin-state splitting hbar * Omega_E from the rotating frame, in J.

    Independent of level and velocity; about 5e-8 peV, below any other
    scale in the problem.
    """
    return constants.hbar * constants.earth_rotation_rate
