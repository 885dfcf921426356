"""Computational services for scenario_bounds."""
