"""Bundled data resources (the pinned snapshot used for reproduction runs)."""

from importlib import resources
from pathlib import Path


def bundled_snapshot_path() -> Path:
    """Directory of the snapshot shipped with the package."""
    return Path(resources.files(__package__) / "snapshot")
