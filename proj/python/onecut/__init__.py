"""Equilibrium measures, diagonal recurrence coefficients and their 1/n expansions."""

from decimal import Decimal

from . import _core
from ._core import OnecutError, __version__, run

__all__ = ["OnecutError", "__version__", "beta1", "equilibrium", "recurrence", "run"]


def equilibrium(spec, precision_bits=256, digits=30):
    """Support endpoints, regularity and Lagrange constant of the field `spec`."""
    raw = _core.equilibrium(spec, precision_bits, digits)
    return {k: (Decimal(v) if isinstance(v, str) else v) for k, v in raw.items()}


def recurrence(spec, n_max, precision_bits=256, digits=30, threads=0):
    """List of (n, a_nn, b_nn) with Decimal values for n = 1..n_max."""
    return [(n, Decimal(a), Decimal(b)) for n, a, b in _core.recurrence(spec, n_max, precision_bits, digits, threads)]


def beta1(spec, precision_bits=256, digits=30):
    """beta_1 from the closed form and from the R_1 moments."""
    return {k: Decimal(v) for k, v in _core.beta1(spec, precision_bits, digits).items()}
