"""rsched: rolling stock scheduling models, solvers and cross-checks."""

__version__ = "0.1.0"
