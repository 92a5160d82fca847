"""twirlkit: finite-group twirling, symmetry/asymmetry information measures,
and complementarity certification for finite-dimensional quantum states."""

from .config import ExperimentConfig, load_config, parse_config
from .encodings import (
    WaveEncoder,
    particle_ensemble,
    trivial_encoder,
    wave_encode,
    wave_encoder_from_matrices,
    wave_info_bound,
    weyl_unitaries,
)
from .errors import ConfigError, InvariantViolation, ValidationError
from .groups import (
    FiniteGroup,
    UnitaryRep,
    cyclic_group,
    dihedral_group,
    group_from_cayley,
    regular_representation,
    rep_from_matrices,
)
from .info import (
    Ensemble,
    InfoSandwich,
    OptimizerBudget,
    Povm,
    accessible_info_lower,
    holevo_chi,
    mutual_information,
    outcome_probability,
    pretty_good_measurement,
)
from .measures import MeasureReport, asymmetry, complementarity_report, symmetry, twirl
from .runner import SweepRecord, SweepSummary, run_report, run_sweep
from .states import (
    DensityMatrix,
    random_density,
    shannon_entropy,
    trace_distance,
    validate_density,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DensityMatrix",
    "Ensemble",
    "ExperimentConfig",
    "FiniteGroup",
    "InfoSandwich",
    "InvariantViolation",
    "MeasureReport",
    "OptimizerBudget",
    "Povm",
    "SweepRecord",
    "SweepSummary",
    "UnitaryRep",
    "ValidationError",
    "WaveEncoder",
    "accessible_info_lower",
    "asymmetry",
    "complementarity_report",
    "cyclic_group",
    "dihedral_group",
    "group_from_cayley",
    "holevo_chi",
    "load_config",
    "mutual_information",
    "outcome_probability",
    "parse_config",
    "particle_ensemble",
    "pretty_good_measurement",
    "random_density",
    "regular_representation",
    "rep_from_matrices",
    "run_report",
    "run_sweep",
    "shannon_entropy",
    "symmetry",
    "trace_distance",
    "trivial_encoder",
    "twirl",
    "validate_density",
    "von_neumann_entropy",
    "wave_encode",
    "wave_encoder_from_matrices",
    "wave_info_bound",
    "weyl_unitaries",
]
