from .pool import run_trials

__all__ = ["run_trials"]
