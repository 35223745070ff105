"""Hidden subgroup problem toolkit: exact statevector simulation of Shor,
Simon, discrete-log and Deutsch-Jozsa, plus weak Fourier sampling on small
non-abelian groups."""

from .errors import HSPError
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "HSPError", "__version__"]
