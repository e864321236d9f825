"""SnCharLab utilities package."""
