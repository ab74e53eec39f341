import logging
import os

from leibhom.lie.algebra import AbelianExtension, LieAlgebra, semidirect
from leibhom.lie.catalog import catalog_names, create_catalog_entry, sl


def extension(name: str) -> AbelianExtension:
    entry = create_catalog_entry(name)
    assert entry.extension is not None
    return entry.extension


def catalog_extensions() -> list[AbelianExtension]:
    "Every extension in the catalog, once per entry name."
    extensions: dict[str, AbelianExtension] = {}
    for name in catalog_names():
        entry = create_catalog_entry(name)
        if entry.extension is not None:
            extensions.setdefault(entry.name, entry.extension)
    return list(extensions.values())


def sl2() -> LieAlgebra:
    return sl(2)[0]


def sl2_affine() -> AbelianExtension:
    g, rep = sl(2)
    return semidirect(g, rep, name="sl2-affine")


def broken_sl2() -> LieAlgebra:
    # [h, e] = 3e breaks the Jacobi identity on (e, f, h)
    return LieAlgebra(
        ["e", "f", "h"],
        {(2, 0): {0: 3}, (2, 1): {1: -2}, (0, 1): {2: 1}},
        name="broken",
    )


SKIP_TESTS = frozenset(os.environ.get("LEIBHOM_SKIP_TESTS", "").split(","))

if os.environ.get("LEIBHOM_DEBUG"):
    logging.basicConfig(level=logging.DEBUG)
