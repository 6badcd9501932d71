"""Hodge numbers of Calabi-Yau type variations from Picard-Fuchs operators."""

__version__ = "0.1.0"
