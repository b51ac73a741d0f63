"""stexo: stable exotica decision procedures on finite simplicial models.

The package decides, for a finitely presented normal 1-type given by finite
simplicial data, whether stably exotic smooth 4-manifolds realizing it exist.
Everything is computed exactly: cohomology over GF(2) with bit-packed linear
algebra, integral homology through Smith normal form, Steenrod operations via
cup-i products on simplicial cochains.

Public entry points live in stexo.obstruction (decide and friends),
stexo.catalog (worked example inputs), and stexo.cli.
"""

__version__ = "0.1.0"
