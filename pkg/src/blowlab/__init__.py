"""blowlab: a numerical laboratory for finite-time blow-up in 1D evolution PDEs.

The package simulates singular PDEs (Burgers, axisymmetric mean curvature,
surface diffusion, a Hele-Shaw thin-film model), transforms solutions to
similarity variables, measures effective scaling exponents, and checks
convergence onto the analytically known similarity profiles, slow-dynamics
asymptotics, limit cycles, and chaotic regimes.
"""

__version__ = "0.1.0"

from .errors import SolverError

__all__ = ["SolverError", "__version__"]
