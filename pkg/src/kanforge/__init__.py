"""Finite higher groupoids: Kan conditions, nerves, 2-groupoids, stacky groupoids and hypercovers."""
from .errors import (BudgetExceeded, ClassificationError, DimensionError, KanforgeError, StructuralError,
                     budget, get_budget)

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "ClassificationError", "DimensionError", "KanforgeError", "StructuralError",
           "budget", "get_budget", "__version__"]
