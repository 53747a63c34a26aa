"""Spectral Galerkin solver for the generalized SQG equation on (0, pi)^2."""

from ._core import (
    SimConfig,
    __version__,
    eigenvalues,
    evaluate,
    heat,
    lambda_neg_power_heat,
    lambda_pos_power_heat,
    lambda_power,
    load_config,
    modes,
    read_snapshots,
    simulate,
    tensor,
    test_functions,
    verify,
    weak_residual,
)

__all__ = [
    "SimConfig",
    "__version__",
    "eigenvalues",
    "evaluate",
    "heat",
    "lambda_neg_power_heat",
    "lambda_pos_power_heat",
    "lambda_power",
    "load_config",
    "modes",
    "read_snapshots",
    "simulate",
    "tensor",
    "test_functions",
    "verify",
    "weak_residual",
]
