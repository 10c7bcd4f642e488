"""Annihilator De Morgan laws on finite quantales, rings and modules."""
from .lattice import FiniteLattice, LatticeError, PreconditionError
from .quantale import Quantale, QuantaleError, Violation, check_quantale
from .rings import Bounds, FiniteRing, ResourceError, RingError
from .modules import FiniteModule, fi_quantale
from .topology import FiniteTopSpace
from .corpus import CorpusEntry, CorpusError, build, builtin_corpus, parse_corpus
from .harness import Selection, analyse, run_harnesses

__all__ = [
    "Bounds",
    "CorpusEntry",
    "CorpusError",
    "FiniteLattice",
    "FiniteModule",
    "FiniteRing",
    "FiniteTopSpace",
    "LatticeError",
    "PreconditionError",
    "Quantale",
    "QuantaleError",
    "ResourceError",
    "RingError",
    "Selection",
    "Violation",
    "analyse",
    "build",
    "builtin_corpus",
    "check_quantale",
    "fi_quantale",
    "parse_corpus",
    "run_harnesses",
]
