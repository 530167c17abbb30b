"""Bermancodes: Berman and dual Berman codes, their decoders, DFT construction and BEC lab."""

__all__ = [
    "gf2",
    "coords",
    "codes",
    "decoding",
    "symmetry",
    "rates",
    "field",
    "abelian",
    "classical",
    "bec",
    "manifest",
    "reporting",
]

__version__ = "0.1.0"
