"""Named split reductive group presets: root system plus cocharacter lattice."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import (
    LatticeSpec,
    RootSystem,
    Vector,
    coroot_lattice,
    coweight_lattice,
    vec,
)


@dataclass(frozen=True)
class GroupPreset:
    """A split reductive group as (Bruhat-Tits root system, cocharacter lattice).

    ``satfactor_parts`` lists (component system, component lattice) for the
    derived group, which is what the saturation factor depends on.
    """

    name: str
    system: RootSystem
    lattice: LatticeSpec
    satfactor_parts: tuple[tuple[RootSystem, LatticeSpec], ...]


def _standard_basis(n: int) -> list[Vector]:
    return [tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n)]


def _simple(name: str, label: str, lattice_kind: str) -> GroupPreset:
    system = RootSystem(label)
    if lattice_kind == "Q":
        lat = coroot_lattice(system)
    elif lattice_kind == "P":
        lat = coweight_lattice(system)
    elif lattice_kind == "Z":
        lat = LatticeSpec(system, _standard_basis(system.ambient_dim), name="Z^n")
    else:
        raise AssertionError(lattice_kind)
    return GroupPreset(name, system, lat, ((system, lat),))


def resolve_preset(name: str) -> GroupPreset:
    """Resolve a group name like "SL3", "GL(4)", "Spin7", "PSO8" or "G2"."""
    raw = name.strip().replace("(", "").replace(")", "").replace("_", "")
    m = re.fullmatch(r"(SL|GL|PSL|PGL|Sp|PSp|Spin|SO|PSO)(\d+)", raw, flags=re.IGNORECASE)
    if m:
        fam = _FAMILY_CASE[m.group(1).lower()]
        n = int(m.group(2))
        return _family_preset(fam, n)
    exc = raw.upper().replace("-", "AD").replace("+", "")
    if exc in ("G2", "F4", "E8"):
        return _simple(exc, exc, "Q")
    if exc in ("E6", "E7"):
        return _simple(exc, exc, "Q")
    if exc in ("E6AD", "E7AD"):
        return _simple(exc[:2] + "ad", exc[:2], "P")
    raise ValueError("unknown group preset %r" % name)


_FAMILY_CASE = {
    "sl": "SL",
    "gl": "GL",
    "psl": "PSL",
    "pgl": "PSL",
    "sp": "Sp",
    "psp": "PSp",
    "spin": "Spin",
    "so": "SO",
    "pso": "PSO",
}


def _family_preset(fam: str, n: int) -> GroupPreset:
    if fam in ("SL", "GL", "PSL"):
        if n < 2:
            raise ValueError("%s(%d): need n >= 2" % (fam, n))
        label = "A%d" % (n - 1)
        if fam == "SL":
            return _simple("SL%d" % n, label, "Q")
        if fam == "PSL":
            return _simple("PSL%d" % n, label, "P")
        system = RootSystem(label)
        lat = LatticeSpec(system, _standard_basis(n), name="Z^%d" % n)
        derived = (system, coroot_lattice(system))
        return GroupPreset("GL%d" % n, system, lat, (derived,))
    if fam in ("Sp", "PSp"):
        if n < 4 or n % 2:
            raise ValueError("%s(%d): need even n >= 4" % (fam, n))
        ell = n // 2
        label = "C%d" % ell if ell >= 2 else "A1"
        return _simple("%s%d" % (fam, n), label, "Q" if fam == "Sp" else "P")
    if fam in ("Spin", "SO", "PSO"):
        if n < 3:
            raise ValueError("%s(%d): need n >= 3" % (fam, n))
        if n % 2:
            ell = (n - 1) // 2
            label = "B%d" % ell if ell >= 2 else "A1"
            if fam == "PSO":
                raise ValueError("PSO is defined for even n")
            kind = "Q" if fam == "Spin" else "P"
            return _simple("%s%d" % (fam, n), label, kind)
        ell = n // 2
        if ell < 3:
            raise ValueError("%s(%d): even orthogonal presets need n >= 6" % (fam, n))
        label = "D%d" % ell
        if fam == "Spin":
            return _simple("Spin%d" % n, label, "Q")
        if fam == "PSO":
            return _simple("PSO%d" % n, label, "P")
        return _simple("SO%d" % n, label, "Z")
    raise AssertionError(fam)
