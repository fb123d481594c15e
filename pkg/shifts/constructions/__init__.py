"""Generators and verifiers for the explicit shift constructions."""
