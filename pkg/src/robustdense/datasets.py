"""Small classic graphs shipped with the package.

Only datasets that are redistributable from local sources are bundled;
``bundled_names`` lists what is actually present. Files use the package
edge-list format with unit weights.
"""

from __future__ import annotations

from importlib import resources

from .graph import Graph
from .io import parse_instance

__all__ = ["bundled_names", "load_bundled"]

# classic graphs the experiments expect; a name appears in
# bundled_names() only when its data file could be shipped
KNOWN_NAMES = ("karate", "lesmis", "polbooks", "adjnoun", "football", "jazz")


def _data_root():
    return resources.files("robustdense") / "data"


def bundled_names() -> tuple[str, ...]:
    root = _data_root()
    return tuple(
        name for name in KNOWN_NAMES if (root / f"{name}.txt").is_file()
    )


def load_bundled(name: str) -> Graph:
    path = _data_root() / f"{name}.txt"
    if not path.is_file():
        raise FileNotFoundError(
            f"dataset {name!r} is not bundled; available: {bundled_names()}"
        )
    with path.open("r", encoding="utf-8") as handle:
        graph, _ = parse_instance(handle)
    return graph
