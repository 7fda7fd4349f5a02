"""Exact-arithmetic minimal free resolutions of monomial ideals.

The library computes minimal free resolutions of a monomial ideal from
its lcm-lattice, entirely over an exact field (the rationals or a prime
field).  The main entry points:

- :mod:`monres.monomials`   monomials, ideals and parsing
- :mod:`monres.lattice`     the lcm-lattice with generator-support labels
- :mod:`monres.chains`      simplicial chains on the generator simplex
- :mod:`monres.vcomplex`    based complexes of vector spaces, exact closures
- :mod:`monres.resolutions` Taylor resolution, cancellation, the atomic
                            lattice resolution and friends
- :mod:`monres.posetres`    poset / homology-approximation constructions
- :mod:`monres.classify`    ideal class membership (Scarf, rigid, ...)
- :mod:`monres.cli`         the ``monres`` command line tool
"""

from monres.linalg import Field, Matrix
from monres.monomials import Monomial, MonomialIdeal, parse_ideal_text
from monres.chains import Chain
from monres.lattice import LcmLattice

__all__ = [
    "Field",
    "Matrix",
    "Monomial",
    "MonomialIdeal",
    "Chain",
    "LcmLattice",
]

__version__ = "0.1.0"
