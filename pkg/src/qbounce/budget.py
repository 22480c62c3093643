"""Per-level loss budget of the trap and the timescale ledger.

Aggregates beta decay and the three geometric channels into one row
per level, next to two reference thresholds:

* resolve threshold: the minimum adjacent transition frequency f_sep;
  a state lost faster than this cannot be resolved from its
  neighbours (the pulse time 1/f_sep would not fit);
* Earth-rotation blur threshold: the rate 2*dE_blur/h at which the
  uncertainty-limited linewidth equals the North-South/East-West
  rotational splitting.

Both threshold conventions are echoed into the output metadata so the
numbers stay auditable.
"""

from dataclasses import dataclass

from .losses import corner_rate as _corner_rate
from .losses import wall_rate as _wall_rate
from .losses import waviness_total
from .noninertial import rotation_energy_shift, RotationContext
from .transitions import FLOW_THROUGH_TIME

CHANNELS = ("beta", "waviness", "wall", "corner")


class ChannelError(ArithmeticError):
    """A loss channel failed; the message names the channel and level."""

RESOLVE_THRESHOLD_DEFINITION = (
    "rate equals the minimum adjacent transition frequency f_sep(n); "
    "the corresponding pulse time is 1/f_sep")
EARTH_BLUR_THRESHOLD_DEFINITION = (
    "rate equals 2*dE_blur/h, the inverse of the interrogation time at "
    "which the uncertainty-limited width matches the rotational "
    "North-South/East-West splitting")

PULSE_RESOLVE_TIME = 0.010   # s, order of magnitude needed to split neighbours


@dataclass(frozen=True)
class LossBudgetRow:
    """One level of the trap budget; rates in 1/s."""

    level: int
    beta_rate: float
    wavy_rate: float
    wall_rate: float
    corner_rate: float
    total_rate: float
    resolve_threshold: float
    earth_blur_threshold: float


@dataclass(frozen=True)
class TimescaleLedger:
    """The characteristic times bounding any resonance measurement."""

    pulse_resolve: float = PULSE_RESOLVE_TIME
    flow_through: float = FLOW_THROUGH_TIME
    beta_lifetime: float = 886.0
    graviton_decay: None = None
    graviton_note: str = ("radiative decay by graviton emission is slower "
                          "than the age of the universe; not computed")

    def __post_init__(self):
        if min(self.pulse_resolve, self.flow_through, self.beta_lifetime) <= 0:
            raise ValueError("TimescaleLedger: times must be positive")
        if self.graviton_decay is not None:
            raise ValueError("TimescaleLedger: the graviton entry carries "
                             "no numeric value by construction")


def timescale_ledger(constants):
    return TimescaleLedger(beta_lifetime=constants.beta_lifetime)


def resolve_threshold(table, n):
    """Minimum adjacent transition frequency of level n, as a rate (1/s)."""
    if n >= table.n_max:
        raise IndexError("resolve_threshold: need the level above n in the table")
    gaps = [table.transition_frequency_hz(n, n + 1)]
    if n > 1:
        gaps.append(table.transition_frequency_hz(n - 1, n))
    return min(gaps)


def earth_blur_threshold(table, n, speed, ctx):
    """Loss rate above which the rotational level blur is unresolvable."""
    if speed == 0:
        return 0.0
    ns = RotationContext(latitude_cos=ctx.latitude_cos, v_ns=abs(speed))
    blur = abs(rotation_energy_shift(table, n, ns))
    return 2.0 * blur / table.constants.planck_h


def assemble_budget(table, geom, psd_model, rotation=None, levels=None,
                    channels=CHANNELS, waviness_cutoff=None):
    """One LossBudgetRow per level; disabled channels report 0 rate.

    Deterministic given the configuration: no randomness, fixed
    evaluation order.
    """
    if rotation is None:
        rotation = RotationContext()
    if levels is None:
        levels = range(1, min(30, table.n_max) + 1)
    unknown = set(channels) - set(CHANNELS)
    if unknown:
        raise ValueError(f"assemble_budget: unknown channels {sorted(unknown)}")

    def channel(name, n, fn):
        if name not in channels:
            return 0.0
        try:
            return fn()
        except ArithmeticError as exc:
            raise ChannelError(f"channel '{name}', level {n}: {exc}") from exc

    rows = []
    for n in levels:
        beta = table.constants.beta_rate if "beta" in channels else 0.0
        wavy = channel("waviness", n,
                       lambda: waviness_total(table, n, geom.velocity,
                                              psd_model,
                                              n_cutoff=waviness_cutoff).rate)
        wall = channel("wall", n, lambda: _wall_rate(table, n, geom))
        corner = channel("corner", n, lambda: _corner_rate(table, n, geom))
        rows.append(LossBudgetRow(
            level=n,
            beta_rate=beta,
            wavy_rate=wavy,
            wall_rate=wall,
            corner_rate=corner,
            total_rate=beta + wavy + wall + corner,
            resolve_threshold=resolve_threshold(table, n),
            earth_blur_threshold=earth_blur_threshold(
                table, n, geom.velocity, rotation),
        ))
    return rows
