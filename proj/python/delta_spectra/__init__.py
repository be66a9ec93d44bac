"""Delta-perturbed solvable quantum models.

Exact transcendental spectra, Rayleigh-Schrodinger coefficients (closed-form,
sum-over-states and numeric extraction), an independent grid oracle, and the
infinite-series identities the agreement between those routes produces.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
