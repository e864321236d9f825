"""SnCharLab application package."""
