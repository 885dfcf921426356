"""Tests for scenario_bounds."""
