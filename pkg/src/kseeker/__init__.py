"""Exact Kloosterman sums, pi-adic expansions and binomial bent-function scans."""
from ._kernels import BACKEND
from .fields import FieldSpec, make_field, load_field

__version__ = "0.1.0"

__all__ = ["BACKEND", "FieldSpec", "make_field", "load_field", "__version__"]
