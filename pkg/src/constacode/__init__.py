"""Irreducible constacyclic codes: construction, weight distributions, verification."""
