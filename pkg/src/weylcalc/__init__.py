"""Exact symbolic calculus on the generalized Weyl algebras A(p;q) and B(p;q)."""

__version__ = "0.1.0"

from .scalars import Q, Scalar, ZPoly, is_q2_separable, q_integer  # noqa: E402
from .algebra import AlgebraCtx, AlgElem, BElem, normalize, star, theta, theta_inverse  # noqa: E402
from .derivations import DerivParams, derivations, sigma  # noqa: E402
from .calculus import OmegaElem, d, density_witness, bar_omega_witness  # noqa: E402
from .integral import CoVector, beta_table, divergence, integral  # noqa: E402
from .spin import SpinParams, Spinor, dirac, real_structure, verify_ko_dimension  # noqa: E402
from .parser import parse_expr, parse_poly, parse_scalar  # noqa: E402

__all__ = [
    "Q", "Scalar", "ZPoly", "is_q2_separable", "q_integer",
    "AlgebraCtx", "AlgElem", "BElem", "normalize", "star", "theta", "theta_inverse",
    "DerivParams", "derivations", "sigma",
    "OmegaElem", "d", "density_witness", "bar_omega_witness",
    "CoVector", "beta_table", "divergence", "integral",
    "SpinParams", "Spinor", "dirac", "real_structure", "verify_ko_dimension",
    "parse_expr", "parse_poly", "parse_scalar",
]
