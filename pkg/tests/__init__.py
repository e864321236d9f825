"""SnCharLab tests package."""
