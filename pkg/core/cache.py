"""
SnCharLab Table Cache

Stores character tables on disk as JSON Lines:
- record 1 is the CacheHeader
- each following record is {"lambda": [...], "values": [...]}, one per
  row in canonical order, values as decimal strings in canonical mu order

Files are written to a temporary name and renamed into place, so readers
never see a partial table.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import List, Optional, Tuple

from app.constants import CACHE_FORMAT, CACHE_ORDER, CACHE_VERSION
from models.cache_header import CacheHeader
from models.character import CharColumn, CharTable
from models.partition import Partition
from utils.partitions import enumerate_partitions

logger = logging.getLogger(__name__)


class CacheFormatError(ValueError):
    """Raised for unreadable cache files or a cache that cannot serve a request."""


class TableCache:
    """
    JSON-Lines character table cache rooted at one folder.

    An exact table may serve a mod-p request by reduction; a mod-p table
    is never served as exact.
    """

    def __init__(self, cache_dir: Path):
        """
        Initialize the cache.

        Args:
            cache_dir: Folder holding cache files (created on first write)
        """
        self.cache_dir = Path(cache_dir)

    def table_path(self, n: int, modulus: Optional[int] = None) -> Path:
        """Path of the cache file for (n, modulus)."""
        suffix = "exact" if modulus is None else f"mod{modulus}"
        return self.cache_dir / f"sn{n}_{suffix}.jsonl"

    def write_table(self, table: CharTable, path: Path) -> None:
        """
        Write a table atomically.

        Args:
            table: Table to store
            path: Destination file

        Raises:
            OSError: If the file cannot be written
        """
        path.parent.mkdir(parents=True, exist_ok=True)
        header = CacheHeader(n=table.n, modulus=table.modulus)

        fd, temp_name = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
                f.write(json.dumps(header.to_dict()) + "\n")
                for lam in table.partitions:
                    record = {
                        "lambda": lam.to_list(),
                        "values": [str(v) for v in table.row(lam)],
                    }
                    f.write(json.dumps(record) + "\n")
            os.replace(temp_name, path)
            logger.info(f"Cached table n={table.n} modulus={table.modulus} at {path}")
        except OSError as e:
            logger.error(f"Failed to write cache file {path}: {e}")
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise

    def validate_cache(self, path: Path) -> Tuple[bool, str, Optional[CacheHeader]]:
        """
        Check the header of a cache file.

        Args:
            path: Cache file

        Returns:
            Tuple of (is_valid, message, header)
        """
        if not path.exists():
            return False, "Cache file not found", None

        try:
            with open(path, "r", encoding="utf-8") as f:
                first = f.readline()
            header = CacheHeader.from_dict(json.loads(first))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            return False, "Invalid cache: corrupt header", None

        if header.format != CACHE_FORMAT:
            return False, f"Invalid cache: unknown format {header.format!r}", None
        if header.version != CACHE_VERSION:
            return False, f"Invalid cache: unsupported version {header.version}", None
        if header.order != CACHE_ORDER:
            return False, f"Invalid cache: unsupported order {header.order!r}", None

        return True, "Cache is valid", header

    def read_table(
        self, path: Path, modulus: Optional[int] = None, n: Optional[int] = None
    ) -> CharTable:
        """
        Read a table from a cache file.

        Args:
            path: Cache file
            modulus: Requested modulus (None = exact values)
            n: Requested size; the header must match when given

        Returns:
            CharTable with the requested modulus

        Raises:
            CacheFormatError: If the file is invalid, holds a table of
                another size, or holds residues modulo a different prime
                than requested, or residues when exact values are requested
        """
        is_valid, message, header = self.validate_cache(path)
        if not is_valid:
            raise CacheFormatError(f"{message}: {path}")

        if n is not None and header.n != n:
            raise CacheFormatError(f"Cache holds a table for n={header.n}, requested n={n}: {path}")

        if header.modulus is not None and header.modulus != modulus:
            wanted = "exact values" if modulus is None else f"values mod {modulus}"
            raise CacheFormatError(
                f"Cache holds values mod {header.modulus}, cannot serve {wanted}: {path}"
            )

        partitions = enumerate_partitions(header.n)
        rows: List[List[int]] = []
        try:
            with open(path, "r", encoding="utf-8") as f:
                f.readline()
                for i, line in enumerate(f):
                    record = json.loads(line)
                    if i >= len(partitions) or Partition(tuple(record["lambda"])) != partitions[i]:
                        raise CacheFormatError(f"Invalid cache: row {i} out of order: {path}")
                    rows.append([int(v) for v in record["values"]])
        except CacheFormatError:
            raise
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise CacheFormatError(f"Invalid cache: corrupt record ({e}): {path}")

        size = len(partitions)
        if len(rows) != size or any(len(row) != size for row in rows):
            raise CacheFormatError(f"Invalid cache: table is not {size}x{size}: {path}")

        columns = tuple(
            CharColumn(
                n=header.n,
                mu=mu,
                values=tuple(row[j] for row in rows),
                modulus=header.modulus,
            )
            for j, mu in enumerate(partitions)
        )
        table = CharTable(header.n, header.modulus, partitions, columns)
        if modulus is not None and header.modulus is None:
            table = table.reduce(modulus)
        return table

    def load_table(self, n: int, modulus: Optional[int] = None) -> Optional[CharTable]:
        """
        Look up a cached table.

        A mod-p request is served from the mod-p file, or else by reducing
        the exact file.

        Returns:
            CharTable, or None if nothing suitable is cached
        """
        candidates = [self.table_path(n, modulus)]
        if modulus is not None:
            candidates.append(self.table_path(n, None))

        for path in candidates:
            if path.exists():
                logger.debug(f"Cache hit for n={n} modulus={modulus}: {path}")
                return self.read_table(path, modulus, n)

        return None

    def save_table(self, table: CharTable) -> Path:
        """
        Store a table under its canonical file name.

        Returns:
            Path of the written file
        """
        path = self.table_path(table.n, table.modulus)
        self.write_table(table, path)
        return path
