"""Named group catalog: builtin constructions reachable by spec string,
bundled fixture files, and the default sweep grid."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .construct import (
    FiniteGroup,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    extraspecial_p3,
    frobenius_pq,
    load_fixture,
    quaternion8,
    symmetric,
)

FIXTURE_DIR = Path(__file__).parent / "fixtures"


class CatalogError(ValueError):
    pass


_ALIASES = {
    "q8": lambda: quaternion8(),
    "quaternion8": lambda: quaternion8(),
    "F21": lambda: frobenius_pq(7, 3),
}

_CONSTRUCTORS = {
    "cyclic": (cyclic, 1),
    "sym": (symmetric, 1),
    "symmetric": (symmetric, 1),
    "alt": (alternating, 1),
    "alternating": (alternating, 1),
    "dihedral": (dihedral, 1),
    "extraspecial": (extraspecial_p3, 1),
    "frobenius": (frobenius_pq, 2),
}


def _split_factors(spec: str) -> list[str]:
    """Split on 'x' at paren depth 0 when it separates two atoms.

    An 'x' inside a name (such as 'extraspecial') is kept: separators
    are only recognized after a digit or a closing paren.
    """
    parts: list[str] = []
    depth = 0
    start = 0
    for i, ch in enumerate(spec):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "x" and depth == 0 and i > start and spec[i - 1] in ")0123456789":
            parts.append(spec[start:i])
            start = i + 1
    parts.append(spec[start:])
    return parts


def _parse_atom(atom: str) -> FiniteGroup:
    atom = atom.strip()
    if atom in _ALIASES:
        return _ALIASES[atom]()
    if "(" in atom and atom.endswith(")"):
        name, argstr = atom[:-1].split("(", 1)
        if name not in _CONSTRUCTORS:
            raise CatalogError(f"unknown constructor {name!r}")
        ctor, arity = _CONSTRUCTORS[name]
        try:
            args = [int(s) for s in argstr.split(",")]
        except ValueError:
            raise CatalogError(f"bad arguments in {atom!r}") from None
        if len(args) != arity:
            raise CatalogError(f"{name} takes {arity} argument(s), got {len(args)}")
        return ctor(*args)
    raise CatalogError(f"unknown group spec {atom!r}")


def make_builtin(spec: str) -> FiniteGroup:
    """Build a group from a spec string, e.g. 'sym(4)', 'q8xF21',
    'cyclic(3)xdihedral(5)'."""
    factors = [_parse_atom(part) for part in _split_factors(spec)]
    if not factors:
        raise CatalogError("empty group spec")
    G = factors[0]
    for H in factors[1:]:
        G = direct_product(G, H)
    if len(factors) > 1:
        G.name = spec
    return G


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.txt"))


def fixture_group(name: str) -> FiniteGroup:
    path = FIXTURE_DIR / f"{name}.txt"
    if not path.exists():
        raise CatalogError(f"no bundled fixture named {name!r}")
    return load_fixture(path)


def psl_2_8_fixture() -> FiniteGroup:
    return fixture_group("psl_2_8")


# Default sweep grid: small enough for a single-core run in minutes,
# varied enough to exercise every verdict and lemma non-vacuously.
BUILTIN_GRID = (
    [f"cyclic({n})" for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24, 30)]
    + [f"dihedral({n})" for n in (3, 4, 5, 6, 7, 8, 9, 10, 12)]
    + ["sym(3)", "sym(4)", "sym(5)", "alt(4)", "alt(5)"]
    + ["q8", "extraspecial(3)", "extraspecial(5)"]
    + ["frobenius(3,2)", "frobenius(5,2)", "frobenius(7,2)", "F21",
       "frobenius(11,2)", "frobenius(11,5)", "frobenius(13,3)"]
    + ["q8xF21", "q8xcyclic(15)", "q8xcyclic(3)", "sym(3)xcyclic(4)",
       "sym(3)xsym(3)", "dihedral(5)xcyclic(3)", "extraspecial(3)xcyclic(2)",
       "alt(4)xcyclic(5)", "q8xsym(3)"]
)


@dataclass
class CatalogEntry:
    name: str
    source: str  # "builtin" or "fixture"
    group: FiniteGroup


def iter_catalog(builtins: Optional[list[str]] = None,
                 fixtures: Optional[list[str]] = None,
                 fixture_paths: Optional[list[str]] = None,
                 max_elements: Optional[int] = None) -> Iterator[CatalogEntry]:
    """Yield the groups of a sweep in a deterministic order."""
    entries: list[CatalogEntry] = []
    for spec in (BUILTIN_GRID if builtins is None else builtins):
        entries.append(CatalogEntry(spec, "builtin", make_builtin(spec)))
    for name in (fixture_names() if fixtures is None else fixtures):
        entries.append(CatalogEntry(name, "fixture", fixture_group(name)))
    for path in fixture_paths or []:
        G = load_fixture(Path(path))
        entries.append(CatalogEntry(G.name, "fixture", G))
    entries.sort(key=lambda e: (e.group.order, e.name))
    for entry in entries:
        if max_elements is not None and entry.group.order > max_elements:
            continue
        yield entry
