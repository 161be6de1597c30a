"""Selects the rotation kernel at import: compiled extension when built,
pure-Python otherwise. ``BACKEND`` records which one is active."""

try:
    from momint._jacobi import jacobi_cyclic

    BACKEND = "compiled"
except ImportError:  # extension not built
    from momint._jacobi_py import jacobi_cyclic

    BACKEND = "python"

__all__ = ["jacobi_cyclic", "BACKEND"]
