"""
Пакетный интерфейс: конфигурации запуска, проверки теорем и обходы сеток.
"""

from bc_quant.cli.commands import (
    EXIT_FAIL,
    EXIT_INVALID,
    EXIT_PASS,
    EXIT_UNDECIDED,
    SWEEP_QUANTITIES,
    THEOREMS,
    cmd_check,
    cmd_oracle_diff,
    cmd_specker,
    cmd_sweep,
    evaluate,
    exit_code,
)
from bc_quant.cli.run_config import RunConfig, expand_param, load_run_config, parse_run_config
from bc_quant.cli.sweeps import build_grid, run_grid, sweep_rows, write_sweep

__all__ = [
    "EXIT_FAIL",
    "EXIT_INVALID",
    "EXIT_PASS",
    "EXIT_UNDECIDED",
    "RunConfig",
    "SWEEP_QUANTITIES",
    "THEOREMS",
    "build_grid",
    "cmd_check",
    "cmd_oracle_diff",
    "cmd_specker",
    "cmd_sweep",
    "evaluate",
    "exit_code",
    "expand_param",
    "load_run_config",
    "parse_run_config",
    "run_grid",
    "sweep_rows",
    "write_sweep",
]
