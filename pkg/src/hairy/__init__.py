"""Hairy graph complexes of cyclic operads and dihedral homology.

Modules: ``linalg`` (exact sparse linear algebra), ``operad`` (Comm, Assoc,
Lie), ``symp`` (the symplectic space V), ``graph`` (hairy graphs and their
canonical forms), ``complex`` (hairy, B.O and reduced complexes),
``maps`` (spiders, trace, split, assembly), ``dihedral`` (Hochschild, cyclic
and dihedral homology), ``rep`` (symmetric group characters) and ``cli``.
"""

__version__ = "0.1.0"
