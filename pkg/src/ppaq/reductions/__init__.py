"""Reductions between the problems, keyed by id in :data:`REGISTRY`."""

from .base import (REGISTRY, Reduction, ReductionSpec, RoundTrip, get_reduction, register,
                   short_circuit, trivial_instance, verify_reduction)
from . import chain  # noqa: F401  (registers)
from .chain import *  # noqa: F401,F403
from . import primes  # noqa: F401
from .primes import *  # noqa: F401,F403
from . import chevalley  # noqa: F401
from .chevalley import *  # noqa: F401,F403
from . import turing  # noqa: F401
from .turing import *  # noqa: F401,F403

__all__ = ["REGISTRY", "Reduction", "ReductionSpec", "RoundTrip", "get_reduction", "register",
           "short_circuit", "trivial_instance", "verify_reduction"]
from .. import modsolve  # noqa: E402,F401  (registers the BIS/SIS reductions)
