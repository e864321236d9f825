"""SnCharLab core functionality package."""
