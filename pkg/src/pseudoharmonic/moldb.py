"""Molecule parameters: the builtin N2/CO/NO/CH set and a plain-text file format.

File format, one molecule per line::

    # name  d0_cm1  r0_angstrom  mu_amu
    N2 96288.03528 1.0940 7.00335

Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import math
from pathlib import Path

from pseudoharmonic.spectrum import Molecule

# digits kept verbatim so that serialization reproduces them exactly
_BUILTIN_ROWS = (
    ("N2", "96288.03528", "1.0940", "7.00335"),
    ("CO", "87471.42567", "1.1282", "6.860586"),
    ("NO", "64877.06229", "1.1508", "7.468441"),
    ("CH", "31838.08149", "1.1198", "0.929931"),
)

FIELDS = ("name", "d0", "r0", "mu")


class MoleculeFileError(ValueError):
    """Base class for molecule-file problems."""


class MoleculeParseError(MoleculeFileError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class MoleculeValidationError(MoleculeFileError):
    def __init__(self, line_no: int, field: str, message: str):
        self.line_no = line_no
        self.field = field
        super().__init__(f"line {line_no}: field '{field}': {message}")


def builtin_table() -> list[Molecule]:
    return [Molecule(name, float(d0), float(r0), float(mu)) for name, d0, r0, mu in _BUILTIN_ROWS]


def builtin_text() -> str:
    """The builtin table in file format, with the original digits."""
    lines = ["# name d0_cm1 r0_angstrom mu_amu"]
    lines += [" ".join(row) for row in _BUILTIN_ROWS]
    return "\n".join(lines) + "\n"


def format_molecules(molecules) -> str:
    """Serialize molecules; floats use the shortest round-tripping repr."""
    lines = ["# name d0_cm1 r0_angstrom mu_amu"]
    lines += [f"{m.name} {m.d0!r} {m.r0!r} {m.mu!r}" for m in molecules]
    return "\n".join(lines) + "\n"


def parse_molecule_file(content: str) -> list[Molecule]:
    molecules: list[Molecule] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(content.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise MoleculeParseError(line_no, f"expected 4 fields (name d0 r0 mu), got {len(parts)}")
        name = parts[0]
        values = {}
        for field, text in zip(FIELDS[1:], parts[1:]):
            try:
                value = float(text)
            except ValueError:
                raise MoleculeParseError(line_no, f"field '{field}' is not a number: {text!r}") from None
            if not math.isfinite(value) or value <= 0:
                raise MoleculeValidationError(line_no, field, f"must be positive, got {text}")
            values[field] = value
        if name in seen:
            raise MoleculeValidationError(line_no, "name", f"duplicate molecule {name!r}")
        seen.add(name)
        molecules.append(Molecule(name, **values))
    return molecules


def load_molecule_file(path) -> list[Molecule]:
    return parse_molecule_file(Path(path).read_text(encoding="utf-8"))


def get_molecule(name: str, molecules=None) -> Molecule:
    """Look up ``name`` in ``molecules`` (default: the builtin table)."""
    pool = builtin_table() if molecules is None else molecules
    for mol in pool:
        if mol.name == name:
            return mol
    known = ", ".join(m.name for m in pool)
    raise KeyError(f"unknown molecule {name!r} (known: {known})")
