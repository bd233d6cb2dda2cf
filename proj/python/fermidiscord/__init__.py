"""Quantum discord between fermionic orbitals."""

from ._core import (
    AgassiModelSpec,
    DensitySet,
    OracleReport,
    TwoOrbitalRDM,
    all_pairs_discord,
    assemble_rdm,
    classical_correlation,
    classify_phase,
    discord,
    discord_exact_gs_hf_pair,
    discord_h,
    discord_hf_gs_hamiltonian_pair,
    discord_pair,
    discord_pair_closed_form,
    entropy,
    exact_curve,
    hfb_densities,
    lmg_ground_state_energy,
    make_density_set,
    multipartite_discord,
    mutual_information,
    natural_orbitals,
    parse_density_json,
    qp_vacuum_two_body,
    scan_grid,
    verify_agassi,
    verify_lmg,
)

__all__ = [name for name in dir() if not name.startswith("_")]
