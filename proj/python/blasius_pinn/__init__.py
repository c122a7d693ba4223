"""Blasius boundary-layer solver: tanh PINN with a shooting-method oracle."""

from ._blasius import (
    DivergenceError,
    NetworkConfig,
    OptimizerError,
    ParamVector,
    ShootingDivergence,
    backward_blowup,
    compare,
    forward_jet,
    init_params,
    load_checkpoint,
    loss_and_grad,
    loss_total,
    parameter_count,
    save_checkpoint,
    shoot,
    tabulate,
    train,
)

__all__ = [
    "DivergenceError",
    "NetworkConfig",
    "OptimizerError",
    "ParamVector",
    "ShootingDivergence",
    "backward_blowup",
    "compare",
    "forward_jet",
    "init_params",
    "load_checkpoint",
    "loss_and_grad",
    "loss_total",
    "parameter_count",
    "save_checkpoint",
    "shoot",
    "tabulate",
    "train",
]
