"""Level coefficients, spin-state labels and species conventions."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .constants import CONST


class CoefficientError(ValueError):
    """Raised when a coefficient file is malformed or violates an invariant."""


class MissingCoefficientError(LookupError):
    """Raised when a level or a coefficient value is not tabulated."""


class Species(str, Enum):
    MATTER = "matter"
    ANTIMATTER = "antimatter"

    def conjugate(self) -> "Species":
        return Species.ANTIMATTER if self is Species.MATTER else Species.MATTER


def sign_factors(species: Species | str) -> tuple[int, int]:
    """Signs multiplying mu_B and mu_n for the given species."""
    return (1, 1) if Species(species) is Species.MATTER else (-1, -1)


@dataclass(frozen=True)
class LevelCoefficients:
    v: int
    N: int
    c_e: float
    g_e: float
    g_t: float
    g_r: float
    alpha_s_dc: float
    alpha_t_dc: float
    alpha_s_ac: float
    alpha_t_ac: float
    chi_s: float
    chi_t: float
    e14: float
    b_F: float
    d_1: float

    def require(self, name: str) -> float:
        """Return a coefficient, raising if it is marked as not tabulated."""
        value = getattr(self, name)
        if math.isnan(value):
            raise MissingCoefficientError(
                f"coefficient {name} of level ({self.v},{self.N}) is not tabulated"
            )
        return value

    @property
    def key(self) -> tuple[int, int]:
        return (self.v, self.N)

    def check(self) -> None:
        if self.v < 0 or self.N < 0:
            raise CoefficientError(f"level ({self.v},{self.N}): negative quantum number")
        if self.N == 0:
            for name in ("c_e", "g_r", "g_t", "alpha_t_dc", "alpha_t_ac", "chi_t"):
                if getattr(self, name) != 0.0:
                    raise CoefficientError(
                        f"level ({self.v},0): {name} must vanish for N = 0"
                    )
        if self.N % 2 == 0 and (self.b_F != 0.0 or self.d_1 != 0.0):
            raise CoefficientError(
                f"level ({self.v},{self.N}): b_F and d_1 must vanish for para levels"
            )


FIELD_NAMES = tuple(f.name for f in fields(LevelCoefficients))


@dataclass(frozen=True)
class SpinState:
    """Magnetic sublevel (v, N, M_s, M_N, M_I) of one species.

    M_s is stored as a Fraction so that half-integers compare exactly.
    """

    v: int
    N: int
    M_s: Fraction
    M_N: int
    M_I: int = 0
    species: Species = Species.MATTER

    def __post_init__(self):
        object.__setattr__(self, "M_s", Fraction(self.M_s))
        object.__setattr__(self, "species", Species(self.species))
        if self.M_s not in (Fraction(1, 2), Fraction(-1, 2)):
            raise ValueError(f"M_s must be +-1/2, got {self.M_s}")
        if abs(self.M_N) > self.N:
            raise ValueError(f"|M_N| = {abs(self.M_N)} exceeds N = {self.N}")
        if self.M_I not in (-1, 0, 1):
            raise ValueError(f"M_I must be -1, 0 or 1, got {self.M_I}")
        if self.N % 2 == 0 and self.M_I != 0:
            raise ValueError("para levels (even N) have M_I = 0")

    @property
    def M_F(self) -> Fraction:
        return self.M_s + self.M_N + self.M_I

    @property
    def level(self) -> tuple[int, int]:
        return (self.v, self.N)

    def __str__(self) -> str:
        sign = "+" if self.M_s > 0 else "-"
        tag = "" if self.species is Species.MATTER else " anti"
        mi = f",M_I={self.M_I}" if self.N % 2 else ""
        return f"({self.v},{self.N},{sign}1/2,{self.M_N}{mi}){tag}"


def state(v: int, N: int, M_s: float | Fraction, M_N: int, M_I: int = 0,
          species: Species | str = Species.MATTER) -> SpinState:
    """Convenience constructor accepting M_s as +-0.5."""
    return SpinState(v, N, Fraction(M_s).limit_denominator(2), M_N, M_I, Species(species))


def charge_conjugate(s: SpinState) -> SpinState:
    return SpinState(s.v, s.N, -s.M_s, -s.M_N, -s.M_I, s.species.conjugate())


@dataclass(frozen=True)
class CoefficientTable:
    levels: dict
    provenance: str

    def __getitem__(self, key: tuple[int, int]) -> LevelCoefficients:
        try:
            return self.levels[tuple(key)]
        except KeyError:
            raise MissingCoefficientError(f"level {tuple(key)} not in table") from None

    def __contains__(self, key) -> bool:
        return tuple(key) in self.levels

    def keys(self):
        return sorted(self.levels)

    def with_level(self, coeffs: LevelCoefficients) -> "CoefficientTable":
        coeffs.check()
        levels = dict(self.levels)
        levels[coeffs.key] = coeffs
        return CoefficientTable(levels, self.provenance + "+modified")


def _parse_directives(lines):
    directives = {}
    for line in lines:
        if line.startswith("#!"):
            key, _, value = line[2:].partition("=")
            directives[key.strip()] = value.strip()
    return directives


def read_table_text(text: str, source: str = "<string>"):
    """Split a whitespace-separated table into (directives, header, rows).

    Rows are returned as (line number, list of float) pairs.
    """
    lines = text.splitlines()
    directives = _parse_directives(lines)
    header = None
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            header = tokens
            continue
        if len(tokens) != len(header):
            raise CoefficientError(
                f"{source}:{lineno}: expected {len(header)} fields, found {len(tokens)}"
            )
        values = []
        for name, tok in zip(header, tokens):
            try:
                values.append(float(tok))
            except ValueError:
                raise CoefficientError(
                    f"{source}:{lineno}: field {name!r} is not a number: {tok!r}"
                ) from None
        rows.append((lineno, values))
    if header is None:
        raise CoefficientError(f"{source}: no header row")
    return directives, header, rows


def parse_coefficients(text: str, source: str = "<string>") -> CoefficientTable:
    directives, header, rows = read_table_text(text, source)
    missing = [n for n in FIELD_NAMES if n not in header]
    unknown = [n for n in header if n not in FIELD_NAMES]
    if missing or unknown:
        raise CoefficientError(f"{source}: header missing {missing}, unknown {unknown}")
    ge_conv = directives.get("g_e", "direct")
    gt_conv = directives.get("g_t", "direct")
    if ge_conv not in ("direct", "anomaly") or gt_conv not in ("direct", "ratio"):
        raise CoefficientError(f"{source}: unknown g-factor convention {ge_conv!r}/{gt_conv!r}")
    g_free = CONST.electron_g_free
    levels = {}
    for lineno, values in rows:
        rec = dict(zip(header, values))
        for name in ("v", "N"):
            if not float(rec[name]).is_integer():
                raise CoefficientError(f"{source}:{lineno}: field {name!r} must be an integer")
            rec[name] = int(rec[name])
        if ge_conv == "anomaly":
            rec["g_e"] = g_free * (1.0 - rec["g_e"])
        if gt_conv == "ratio":
            rec["g_t"] = g_free * rec["g_t"]
        coeffs = LevelCoefficients(**rec)
        try:
            coeffs.check()
        except CoefficientError as exc:
            raise CoefficientError(f"{source}:{lineno}: {exc}") from None
        if coeffs.key in levels:
            raise CoefficientError(f"{source}:{lineno}: duplicate level {coeffs.key}")
        levels[coeffs.key] = coeffs
    provenance = directives.get("version", "unversioned") + f" ({source})"
    return CoefficientTable(levels, provenance)


def load_coefficients(path: str | Path | None = None) -> CoefficientTable:
    """Load a level-coefficient file; None loads the shipped default."""
    if path is None:
        text = resources.files("h2ion.data").joinpath("levels.dat").read_text()
        return parse_coefficients(text, "levels.dat")
    path = Path(path)
    return parse_coefficients(path.read_text(), str(path))


def serialize_coefficients(table: CoefficientTable) -> str:
    """Write a table in the direct g-factor convention with round-trip floats."""
    version = table.provenance.split(" ", 1)[0]
    out = [f"#! version = {version}", "#! g_e = direct", "#! g_t = direct", " ".join(FIELD_NAMES)]
    for key in table.keys():
        c = table[key]
        out.append(" ".join(repr(getattr(c, n)) for n in FIELD_NAMES))
    return "\n".join(out) + "\n"


def mass_and_charge(species: Species | str) -> tuple[float, float]:
    """Mass and signed charge of the molecular ion of the given species."""
    q = CONST.elementary_charge
    return CONST.mass_H2plus, (q if Species(species) is Species.MATTER else -q)


__all__ = [
    "CoefficientError", "MissingCoefficientError", "Species", "sign_factors",
    "LevelCoefficients", "SpinState", "state", "charge_conjugate", "CoefficientTable",
    "load_coefficients", "parse_coefficients", "serialize_coefficients", "read_table_text",
    "mass_and_charge",
]
