"""
Data models for the SHG hyperpolarizability toolkit.
All models use Pydantic for validation; numeric payloads are numpy arrays
stored read-only so that validated instances stay immutable.
"""

from enum import Enum
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Tolerance on the real-symmetric dipole matrix (a.u.)
SYMMETRY_TOLERANCE = 1e-12


def _frozen_array(value: Any, dtype, shape: Optional[Tuple[int, ...]] = None, ndim: Optional[int] = None) -> np.ndarray:
    """Copy value into a read-only array of the requested dtype and shape."""
    array = np.array(value, dtype=dtype)
    if shape is not None and array.shape != shape:
        raise ValueError(f"expected shape {shape}, got {array.shape}")
    if ndim is not None and array.ndim != ndim:
        raise ValueError(f"expected {ndim}-dimensional data, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("non-finite value")
    array.setflags(write=False)
    return array


class Representation(str, Enum):
    """Which dipole operator the molecular moments describe."""
    STANDARD = "standard"
    FLUCTUATION = "fluctuation"


class DampingConvention(str, Enum):
    """How phenomenological linewidths enter the energy denominators."""
    NONE = "none"
    CONSTANT_SIGN = "constant-sign"
    SIGN_ALTERNATING = "sign-alternating"


class SignConvention(str, Enum):
    """Overall sign of the static environment correction."""
    AS_PRINTED = "as-printed"
    CLASSICAL = "classical"


class VertexKind(str, Enum):
    """Photon event at one interaction vertex."""
    ABSORB = "absorb_omega"
    EMIT = "emit_2omega"


class OutputFormat(str, Enum):
    TABLE = "table"
    JSON = "json"


# ============================================================
# MOLECULE
# ============================================================

class Constants(BaseModel):
    """Physical constants expressed in one unit system."""
    model_config = ConfigDict(frozen=True)

    name: str
    hbar: float
    c: float
    eps0: float


class MolecularModel(BaseModel):
    """
    Level ladder and dipole matrix of one molecule.

    energies are relative to the ground level (index 0), widths are damping
    rates per level and dipoles[r, s] is the 3-vector <r|mu|s>.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str = "molecule"
    energies: np.ndarray
    widths: np.ndarray
    dipoles: np.ndarray
    representation: Representation = Representation.STANDARD

    @field_validator('energies', 'widths', mode='before')
    @classmethod
    def _vector(cls, value: Any) -> np.ndarray:
        return _frozen_array(value, float, ndim=1)

    @field_validator('dipoles', mode='before')
    @classmethod
    def _dipole_matrix(cls, value: Any) -> np.ndarray:
        array = _frozen_array(value, float, ndim=3)
        if array.shape[0] != array.shape[1] or array.shape[2] != 3:
            raise ValueError(f"dipole matrix must have shape (L, L, 3), got {array.shape}")
        return array

    @model_validator(mode='after')
    def _check_invariants(self) -> 'MolecularModel':
        n_levels = self.energies.shape[0]
        if n_levels == 0:
            raise ValueError("missing ground level")
        if self.widths.shape[0] != n_levels or self.dipoles.shape[0] != n_levels:
            raise ValueError(
                f"level count mismatch: {n_levels} energies, {self.widths.shape[0]} widths, "
                f"{self.dipoles.shape[0]} dipole rows"
            )
        if self.energies[0] != 0.0:
            raise ValueError("missing ground level: first energy must be exactly 0")
        if np.any(self.energies[1:] <= 0.0):
            raise ValueError("negative excitation energy: excited levels must lie above the ground level")
        if np.any(self.widths < 0.0):
            raise ValueError("negative width")
        if self.widths[0] != 0.0:
            raise ValueError("ground level width must be 0")
        asymmetry = np.max(np.abs(self.dipoles - self.dipoles.transpose(1, 0, 2)))
        if asymmetry > SYMMETRY_TOLERANCE:
            raise ValueError(f"asymmetric dipole matrix (max deviation {asymmetry:.3e})")
        if self.representation == Representation.FLUCTUATION and np.any(self.dipoles[0, 0] != 0.0):
            raise ValueError("fluctuation representation requires a zero ground-state moment")
        return self

    @property
    def n_levels(self) -> int:
        return int(self.energies.shape[0])

    @property
    def ground_dipole(self) -> np.ndarray:
        return self.dipoles[0, 0]


# ============================================================
# DIAGRAMS
# ============================================================

class TimeOrdering(BaseModel):
    """One chronological ordering of the three SHG photon events."""
    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0, le=2)
    events: Tuple[VertexKind, VertexKind, VertexKind]

    @field_validator('events')
    @classmethod
    def _two_absorptions(cls, events):
        if sum(1 for e in events if e == VertexKind.ABSORB) != 2:
            raise ValueError("SHG ordering needs exactly two absorptions and one emission")
        return events


class Term(BaseModel):
    """One state-sequence contribution to the tensor sum."""
    model_config = ConfigDict(frozen=True)

    ordering: int
    intermediates: Tuple[int, int]
    # Cartesian slot carried by the (0r), (rs), (s0) factors, e.g. "jik"
    index_pattern: str
    # ((r, multiple of hbar*omega), (s, multiple of hbar*omega))
    denominator_spec: Tuple[Tuple[int, int], Tuple[int, int]]

    @field_validator('index_pattern')
    @classmethod
    def _pattern(cls, value: str) -> str:
        if sorted(value) != ['i', 'j', 'k']:
            raise ValueError(f"index pattern must permute 'ijk', got {value!r}")
        return value

    @field_validator('denominator_spec')
    @classmethod
    def _multiples(cls, value):
        for _, multiple in value:
            if multiple not in (-2, -1, 1, 2):
                raise ValueError(f"denominator multiple {multiple} outside {{-2, -1, +1, +2}}")
        return value


# ============================================================
# RESPONSE
# ============================================================

class BetaTensor(BaseModel):
    """SHG hyperpolarizability beta(-2w; w, w) in atomic units."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    components: np.ndarray
    omega: float
    representation: Representation
    damping_convention: DampingConvention = DampingConvention.NONE
    symmetrized: bool = False

    @field_validator('components', mode='before')
    @classmethod
    def _components(cls, value: Any) -> np.ndarray:
        return _frozen_array(value, complex, shape=(3, 3, 3))

    def component(self, i: int, j: int, k: int) -> complex:
        return complex(self.components[i, j, k])


class EquivalenceReport(BaseModel):
    """Standard vs fluctuation evaluation of one model at one frequency."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    omega: float
    beta_standard: BetaTensor
    beta_fluctuation: BetaTensor
    max_rel_diff_symmetrized: float = Field(ge=0.0)
    max_rel_diff_raw: float = Field(ge=0.0)


# ============================================================
# RADIATION
# ============================================================

class PhotonMode(BaseModel):
    """One quantized radiation mode (k, e) in a box of volume V."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: np.ndarray
    polarization: np.ndarray
    volume: float = Field(gt=0.0)

    @field_validator('k', mode='before')
    @classmethod
    def _wavevector(cls, value: Any) -> np.ndarray:
        return _frozen_array(value, float, shape=(3,))

    @field_validator('polarization', mode='before')
    @classmethod
    def _polarization(cls, value: Any) -> np.ndarray:
        return _frozen_array(value, complex, shape=(3,))

    @model_validator(mode='after')
    def _check_mode(self) -> 'PhotonMode':
        from .utils.validators import VectorValidator

        is_valid, error = VectorValidator.validate_mode(self.k, self.polarization)
        if not is_valid:
            raise ValueError(error)
        return self

    @property
    def wavenumber(self) -> float:
        return float(np.linalg.norm(self.k))


class SHGConfig(BaseModel):
    """Fundamental and harmonic modes plus the initial fundamental occupation."""
    model_config = ConfigDict(frozen=True)

    fundamental: PhotonMode
    harmonic: PhotonMode
    n: int = Field(ge=0)

    @model_validator(mode='after')
    def _check_harmonic(self) -> 'SHGConfig':
        k, k_prime = self.fundamental.wavenumber, self.harmonic.wavenumber
        if abs(k_prime - 2.0 * k) > 1e-12 * 2.0 * k:
            raise ValueError(f"harmonic wavenumber {k_prime} is not twice the fundamental {k}")
        if self.fundamental.volume != self.harmonic.volume:
            raise ValueError("fundamental and harmonic modes must share one quantization volume")
        return self


# ============================================================
# ENVIRONMENT
# ============================================================

class Site(BaseModel):
    """A molecule placed at a position (bohr)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    position: np.ndarray
    model: MolecularModel

    @field_validator('position', mode='before')
    @classmethod
    def _position(cls, value: Any) -> np.ndarray:
        return _frozen_array(value, float, shape=(3,))


class Assembly(BaseModel):
    """Positioned polar molecules interacting through their ground dipoles."""
    model_config = ConfigDict(frozen=True)

    sites: List[Site]
    cutoff: float = Field(default=0.5, gt=0.0)
    max_range: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode='after')
    def _check_separations(self) -> 'Assembly':
        from .errors import SeparationError

        for a in range(len(self.sites)):
            for b in range(a + 1, len(self.sites)):
                distance = float(np.linalg.norm(self.sites[a].position - self.sites[b].position))
                if distance < self.cutoff:
                    raise SeparationError(
                        f"sites {a} and {b} are {distance:.6g} bohr apart, below cutoff {self.cutoff}"
                    )
        return self


class GroundStateShift(BaseModel):
    """Scalar (ground-dipole pair) part of the environment correction."""
    model_config = ConfigDict(frozen=True)

    per_molecule_scalar: List[float]
    total_scalar: float


class EnvironmentShift(BaseModel):
    """Full static environment correction of an assembly."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    per_molecule_scalar: List[float]
    total_scalar: float
    per_molecule_matrix: List[np.ndarray]
    sign_convention: SignConvention = SignConvention.AS_PRINTED


# ============================================================
# RUN CONFIGURATION AND REPORTS
# ============================================================

class RunConfig(BaseModel):
    """Configuration for one CLI invocation (config file + overrides)."""

    # Numerics
    resonance_tolerance: float = 1e-12
    near_resonance_warning: float = 1e-3

    # Beta
    damping: DampingConvention = DampingConvention.NONE
    representation: Literal["standard", "fluctuation", "both"] = "standard"

    # Check
    check_tolerance: float = 1e-10
    check_workers: int = Field(default=1, ge=1)

    # Radiation
    volume: float = Field(default=1e6, gt=0.0)
    occupation: int = Field(default=2, ge=0)
    pol_in: Literal["x", "y", "circ+", "circ-"] = "x"
    pol_out: Literal["x", "y", "circ+", "circ-"] = "x"
    amplitude_representation: Literal["standard", "fluctuation"] = "fluctuation"

    # Environment
    cutoff: float = Field(default=0.5, gt=0.0)
    max_range: Optional[float] = None
    sign_convention: SignConvention = SignConvention.AS_PRINTED

    # Self test
    selftest_seed: int = 0
    selftest_models: int = Field(default=100, ge=1)
    selftest_frequencies: int = Field(default=8, ge=1)

    # Output
    output_format: OutputFormat = OutputFormat.TABLE
    output_file: Optional[str] = None
    json_indent: int = 2

    # Debug
    debug_mode: bool = False
    debug_log_file: str = "./debug/hyperpol.log"


class RunReport(BaseModel):
    """Machine-readable result of one subcommand."""

    schema_version: int = Field(default=1, serialization_alias="schema")
    subcommand: str
    input_digest: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    units: Dict[str, str] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)
    exit_code: int = Field(default=0, exclude=True)
