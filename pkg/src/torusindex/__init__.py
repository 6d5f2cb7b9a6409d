"""Exact deformation quantization and index pairings for the quantum-torus crossed product."""

__version__ = "0.1.0"

from torusindex.kernels import BACKEND  # noqa: E402
from torusindex.scalar import EXACT, NumericField  # noqa: E402
from torusindex.series import FormalLaurent  # noqa: E402

__all__ = ["BACKEND", "EXACT", "NumericField", "FormalLaurent", "__version__"]
