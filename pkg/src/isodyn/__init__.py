"""isodyn: plane-geometry engine and a machine-checkable catalog of
properties of a triangle's first isodynamic point."""

__version__ = "0.1.0"
