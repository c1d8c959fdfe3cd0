"""Symmetry-restricted variational circuits for graph classification."""

from ._core import (
    Circuit,
    GenerationFailure,
    Graph,
    NumericalFailure,
    PauliString,
    StateVector,
    UnsupportedSize,
    build_ansatz,
    classify,
    commutes,
    connectedness_curve,
    count_labeled_graphs,
    count_unlabeled_graphs,
    erdos_renyi,
    expectation_mean_z,
    fubini_study_metric,
    generate_dataset,
    gradient,
    has_hamiltonian_cycle,
    has_hamiltonian_path,
    is_bipartite,
    is_connected,
    is_mutually_commuting,
    loss_mse,
    orbit,
    predict,
    prepare_graph_state,
    qng_step,
    train_run,
)

__all__ = [name for name in dir() if not name.startswith("_")]
