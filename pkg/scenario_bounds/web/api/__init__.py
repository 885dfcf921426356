"""scenario_bounds API package."""
