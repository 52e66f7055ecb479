"""Mod 2 characteristic-number machinery for involutions and their fixed sets."""

__version__ = "0.1.0"
