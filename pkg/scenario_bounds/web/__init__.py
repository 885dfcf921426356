"""Scenario bounds HTTP API."""
