"""Minimal Sullivan algebras over Q: cohomology, Hilbert series, and decision procedures."""
