"""
Pydantic models for run files.

A run file is one YAML mapping; every section is optional and falls back to
the defaults below. Unknown keys are rejected at every level.
"""

from pathlib import Path
from typing import TYPE_CHECKING, Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..potential.free_energy import PotentialParams
from ..spectral.grid import GridSpec

if TYPE_CHECKING:
    from ..timestepper.etd import SchemeSpec

# Relative slack when checking that t_end is a whole number of steps
STEP_COUNT_TOLERANCE = 1e-9


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ParamsSection(_Section):
    """Potential and interface parameters"""
    theta: float = Field(default=1.0, gt=0, description="Absolute temperature θ")
    theta_c: float = Field(default=2.0, gt=0, description="Critical temperature θ_c; must exceed θ")
    nu: float = Field(default=1.0, gt=0, description="Interface coefficient ν")

    @model_validator(mode="after")
    def _below_critical(self):
        if not self.theta < self.theta_c:
            raise ValueError(f"theta ({self.theta}) must be below theta_c ({self.theta_c})")
        return self

    def to_domain(self) -> PotentialParams:
        return PotentialParams(theta=self.theta, theta_c=self.theta_c, nu=self.nu)


class GridSection(_Section):
    """Periodic unit-square grid"""
    n: int = Field(default=128, ge=8, description="Points per dimension (even)")

    @field_validator("n")
    @classmethod
    def _even(cls, n: int) -> int:
        if n % 2:
            raise ValueError(f"n must be even, got {n}")
        return n

    def to_domain(self) -> GridSpec:
        return GridSpec(n=self.n)


class SchemeSection(_Section):
    """Exponential integrator and its fixed step"""
    kind: Literal["ETD1", "ETDRK2"] = Field(default="ETDRK2", description="Time integration scheme")
    dt: float = Field(default=1e-5, gt=0, description="Time step")

    def to_domain(self) -> "SchemeSpec":
        from ..timestepper.etd import SchemeKind, SchemeSpec

        return SchemeSpec(kind=SchemeKind(self.kind), dt=self.dt)


class RandomPerturbationIC(_Section):
    """Band-limited random g-perturbation around atanh(mean_u)"""
    kind: Literal["random-perturbation"] = "random-perturbation"
    mean_u: float = Field(default=0.0, gt=-1.0, lt=1.0, description="Target mean of u")
    amplitude: float = Field(default=0.05, gt=0, description="Sup norm of the perturbation in g")
    band: int = Field(default=1, ge=1, description="Largest |m| of the random Fourier modes")


class TanhStripeIC(_Section):
    """A·tanh(cos(2πx)/width): two smooth interfaces, projected to the resolved band"""
    kind: Literal["tanh-stripe"] = "tanh-stripe"
    width: float = Field(default=0.1, gt=0, description="Interface width")
    amplitude: float = Field(default=1.0, gt=0, description="Plateau value of g")


class SingleModeIC(_Section):
    """amplitude·cos(2π(m_x x + m_y y))"""
    kind: Literal["single-mode"] = "single-mode"
    m: Tuple[int, int] = Field(default=(1, 0), description="Integer mode pair")
    amplitude: float = Field(default=0.1, description="Amplitude in g")


ICSection = Annotated[
    Union[RandomPerturbationIC, TanhStripeIC, SingleModeIC],
    Field(discriminator="kind"),
]


class RunConfig(_Section):
    """A complete, validated run description"""
    params: ParamsSection = Field(default_factory=ParamsSection)
    grid: GridSection = Field(default_factory=GridSection)
    scheme: SchemeSection = Field(default_factory=SchemeSection)
    ic: ICSection = Field(default_factory=RandomPerturbationIC)
    t_end: float = Field(default=0.05, ge=0, description="Final time")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Seed of the initial-condition RNG")
    record_every: int = Field(default=100, gt=0, description="Steps between diagnostics records")
    snapshot_every: int = Field(default=1000, gt=0, description="Steps between snapshots")
    out_dir: Optional[Path] = Field(default=None, description="Output directory; None keeps results in memory")
    heatmaps: bool = Field(default=False, description="Also write PGM images of u next to each snapshot")

    @model_validator(mode="after")
    def _whole_steps(self):
        steps = self.t_end / self.scheme.dt
        if abs(steps - round(steps)) > STEP_COUNT_TOLERANCE * max(1.0, steps):
            raise ValueError(f"t_end ({self.t_end}) is not a whole number of steps of dt ({self.scheme.dt})")
        return self

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.scheme.dt))

    def potential(self) -> PotentialParams:
        return self.params.to_domain()

    def grid_spec(self) -> GridSpec:
        return self.grid.to_domain()

    def scheme_spec(self) -> "SchemeSpec":
        return self.scheme.to_domain()

