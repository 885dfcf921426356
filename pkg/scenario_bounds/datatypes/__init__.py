"""Data types for scenario_bounds."""
