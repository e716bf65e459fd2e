"""Bundled algebra corpus used by the CLI docs, golden files and the
acceptance suite.  Each entry can be rebuilt from its constructor; the
shipped JSON files in data/ are bit-exact serializations of these."""

from __future__ import annotations

import importlib.resources

from . import algebra
from .algebra import FDAlgebra


def _nil2() -> FDAlgebra:
    table = [[{} for _ in range(2)] for _ in range(2)]
    return FDAlgebra(2, ["z1", "z2"], table)


_BUILDERS = {
    "q": lambda: algebra.matrix_algebra(1),
    "qplusq": lambda: algebra.direct_sum(algebra.matrix_algebra(1),
                                         algebra.matrix_algebra(1)),
    "nil2": _nil2,
    "m2": lambda: algebra.matrix_algebra(2),
    "m3": lambda: algebra.matrix_algebra(3),
    "ut11": lambda: algebra.block_triangular(1, 1),
    "ut21": lambda: algebra.block_triangular(2, 1),
    "fund_a1_s1": lambda: algebra.universal_fundamental([1], 1, 1)[0],
}


def names() -> list[str]:
    return sorted(_BUILDERS)


def build(name: str) -> FDAlgebra:
    return _BUILDERS[name]()


def data_path(name: str):
    return importlib.resources.files("pilab").joinpath("data", f"{name}.json")


def load(name: str) -> FDAlgebra:
    with importlib.resources.as_file(data_path(name)) as path:
        return algebra.load_algebra(path)


def write_data_files(directory) -> None:
    """Regenerate the bundled JSON corpus (used once at packaging time)."""
    from pathlib import Path

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name in names():
        algebra.dump_algebra(build(name), directory / f"{name}.json")
