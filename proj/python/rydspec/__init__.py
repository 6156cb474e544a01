"""Driven Rydberg-lattice excitation dynamics and C6 extraction."""

from ._core import (
    AngularFrequency,
    ConfigError,
    DegeneracyClass,
    DegeneracyGroup,
    ExperimentConfig,
    IoError,
    KappaMatch,
    LatticeParams,
    NumericalError,
    Observables,
    Peak,
    PeakOptions,
    PeakSet,
    PhysicalConfig,
    PipelineOptions,
    Propagator,
    ResolvabilityReport,
    ResolvabilityRow,
    RoundTripReport,
    SpectrumScan,
    SweepResult,
    adjacent_pair_count,
    assign_kappa_labels,
    build_full_hamiltonian,
    build_h0,
    build_hprime,
    canonical_ground_state,
    collective_rabi,
    degeneracy_classes,
    detect_peaks,
    enumerate_basis,
    excitation_count,
    excitation_timescale,
    extract_c6_absolute,
    extract_c6_relative,
    identify_kappa,
    interaction_strength,
    load_config,
    observables,
    parse_config,
    predicted_peak_separation,
    preset_names,
    preset_text,
    propagate,
    resolvability_report,
    resonance_detuning,
    round_trip,
    run_experiment,
    rydberg_linewidth,
    scan_spectrum,
    sweep,
    unperturbed_energy,
)

__version__ = "0.1.0"
