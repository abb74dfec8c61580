"""Arc rings, flat-tangle bimodules and the categorified sl_n action on V(2w_k)."""

__version__ = "0.1.0"
