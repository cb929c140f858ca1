"""Service layer shared by the command line and batch sweeps."""

from domdim.services.runner import (
    EXIT_DEFECT,
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_SCOPE,
    RunConfig,
    RunnerError,
    RunReport,
    batch_exit_code,
    load_document,
    read_manifest,
    run_batch,
    run_check,
    run_compute,
    run_predict,
)

__all__ = [
    "EXIT_DEFECT",
    "EXIT_INPUT",
    "EXIT_MISMATCH",
    "EXIT_OK",
    "EXIT_SCOPE",
    "RunConfig",
    "RunReport",
    "RunnerError",
    "batch_exit_code",
    "load_document",
    "read_manifest",
    "run_batch",
    "run_check",
    "run_compute",
    "run_predict",
]
