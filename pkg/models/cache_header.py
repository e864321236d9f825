"""
SnCharLab Cache Header Model

First record of every table cache file.
"""

from dataclasses import dataclass
from typing import Optional

from app.constants import CACHE_FORMAT, CACHE_ORDER, CACHE_VERSION


@dataclass
class CacheHeader:
    """
    Describes the table stored in a cache file.

    Attributes:
        n: Size of the symmetric group
        modulus: Prime the values are reduced by (None = exact)
        format: Always "sgct-cache"
        version: Cache format version
        order: Row and column order, always "revlex"
    """

    n: int
    modulus: Optional[int] = None
    format: str = CACHE_FORMAT
    version: int = CACHE_VERSION
    order: str = CACHE_ORDER

    @property
    def is_exact(self) -> bool:
        """True if the cached values are exact integers."""
        return self.modulus is None

    def to_dict(self) -> dict:
        """Convert to dictionary for the JSON header record."""
        return {
            "format": self.format,
            "version": self.version,
            "n": self.n,
            "modulus": self.modulus,
            "order": self.order,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CacheHeader":
        """
        Create a CacheHeader from a parsed header record.

        Raises:
            KeyError: If a required key is missing
        """
        return cls(
            n=int(data["n"]),
            modulus=data.get("modulus"),
            format=data["format"],
            version=int(data["version"]),
            order=data.get("order", CACHE_ORDER),
        )
