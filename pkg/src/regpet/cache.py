"""Small CSV coefficient caches with checksum-verified hits.

Cache files live next to the result files they support and are keyed by the
parameters in their name; a sidecar .sha256 guards against stale or edited
content.
"""

from __future__ import annotations

import csv
import hashlib
import os


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def write_rows(path: str, header: list[str], rows) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(row)
    with open(path + ".sha256", "w") as fh:
        fh.write(_digest(path) + "\n")


def read_rows(path: str) -> list[list[str]] | None:
    """Rows of a cache file, or None on miss / checksum mismatch."""
    if not (os.path.exists(path) and os.path.exists(path + ".sha256")):
        return None
    with open(path + ".sha256") as fh:
        want = fh.read().strip()
    if _digest(path) != want:
        return None
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[1:]
