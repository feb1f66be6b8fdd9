from .repository import ResultRepo

__all__ = ["ResultRepo"]
