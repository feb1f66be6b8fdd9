from .balanced.search import find_balanced_motif
from .ldlr.norms import ldlr_norm_exact
from .models.params import derive_params

__version__ = "0.1.0"
__all__ = ["derive_params", "find_balanced_motif", "ldlr_norm_exact", "__version__"]
