from .sweep import run_cell, run_phase_diagram

__all__ = ["run_cell", "run_phase_diagram"]
