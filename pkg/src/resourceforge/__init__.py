"""resourceforge: resource-theory quantities for small quantum states.

Entropic monotones, discord- and deficit-type measures obtained by
optimizing over projective measurements, majorization-based single-shot
transitions, conversion rates, and a simulator for closed/noisy LOCC
protocol scripts on bipartite registers.
"""

from .config import DEFAULT_MAX_DIM, MAX_DIM_ENV_VAR, max_dim
from .entropy import (
    Hamiltonian,
    free_energy_gap,
    gibbs_state,
    mutual_information,
    negentropy,
    relative_entropy,
    shannon_bits,
    vn_entropy,
)
from .errors import (
    BothZero,
    DimensionMismatch,
    DimensionTooLarge,
    DomainError,
    EmptyKeepSet,
    IllegalStepForMode,
    IndexOutOfRange,
    NonCommuting,
    NotAQubit,
    NotAQubitOnA,
    NotBipartite,
    NotHermitian,
    NotIsometry,
    NotPSD,
    NotUnitTrace,
    NotUnitary,
    ParamCountMismatch,
    RankOutOfRange,
    UnequalSums,
)
from .measurements import (
    ProjectiveMeasurement,
    dephasing_channel,
    measure_both,
    measure_local,
    measurement_from_params,
    param_count,
    param_ranges,
    params_from_unitary,
    unitary_from_params,
)
from .monotones import (
    RateResult,
    conversion_rate,
    majorizes,
    padded_spectra,
    purity_rate,
    single_shot_noisy_transition,
    thermo_rate,
)
from .oracles import (
    GridSpec,
    grid_min_deficit,
    grid_min_discord,
    random_bistochastic_reachability,
)
from .protocols import (
    AddMaxMixedAncilla,
    LocalPartialTrace,
    LocalUnitary,
    ProtocolScript,
    Register,
    SendQubit,
    apply_step,
    bipartite_register,
    deficit_bound,
    extracted_local_purity,
    run_protocol,
)
from .quantumness import (
    OptimizerConfig,
    QuantumnessResult,
    deficit_one_way,
    deficit_one_way_fixed,
    deficit_zero_way,
    discord,
    discord_fixed,
    discord_zero_way,
    generalized_deficit,
    multicopy_deficit,
    relent_to_cc,
    relent_to_cq,
)
from .states import (
    DensityMatrix,
    eig_hermitian,
    embed,
    maximally_mixed,
    partial_trace,
    permute_subsystems,
    pure_state,
    random_density,
    spectrum,
    tensor,
    validate,
    validate_isometry,
)

__version__ = "0.1.0"
