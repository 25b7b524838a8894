"""Version 1 of the lab API."""
