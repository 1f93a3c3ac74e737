"""Run configuration: named blocks of key = value lines.

Grammar::

    # comment (also after values)
    [block]
    key = value

Block names are lowercase identifiers; keys match case-insensitively.  Lists are comma separated;
spin states are written "v N M_s M_N" with M_s as +1/2 or -1/2; level pairs
as "v,N->v',N'" separated by ";".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .coefficients import SpinState, Species
from .systematics import TrapConfig, TransitionSpec

_BLOCK = re.compile(r"^\[([a-z_][a-z0-9_]*)\]$")
_KEY = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")

KNOWN_BLOCKS = {
    "coefficients": {"file"},
    "run": {"seed", "out"},
    "trap": {"B0", "B2", "nu_z", "nu_plus", "nu_minus", "T_z", "T_plus", "T_minus", "r_orbital",
             "environment_temperature"},
    "transition": {"lower", "upper", "species", "f0"},
    "geometry": {"xi_deg", "gamma_deg", "theta_deg", "phi_deg"},
    "levels": {"levels", "B", "tolerance"},
    "sensitivity": {"transitions", "B0", "scan_min", "scan_max", "scan_steps", "scan_components"},
    "budget": {"intensity", "items"},
    "rabi": {"intensity", "target"},
    "lineshape": {"delta_int", "qds_scale", "T_z", "f0", "multipliers", "grid_min", "grid_max",
                  "grid_points", "radial_offset", "fit_noise", "fit_points"},
    "cooling": {"polarity", "s0", "nu_b", "ell_b", "f_start", "f_end", "duration", "n_steps", "hold",
                "dt", "energies", "ensemble_T", "ensemble_n", "threshold", "map_energies", "map_nu",
                "map_threshold"},
    "bottle": {"nu_z", "cap", "beta", "amplitudes"},
}
# keys are matched case-insensitively against these canonical spellings
_CANON = {b: {k.lower(): k for k in keys} for b, keys in KNOWN_BLOCKS.items()}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    blocks: dict = field(default_factory=dict)
    source: str = "<string>"

    def has(self, block: str) -> bool:
        return block in self.blocks

    def block(self, name: str) -> dict:
        if name not in self.blocks:
            raise ConfigError(f"missing [{name}] block")
        return self.blocks[name]

    def get(self, block: str, key: str, default=None):
        return self.blocks.get(block, {}).get(key, default)

    def float(self, block: str, key: str, default: float | None = None) -> float:
        raw = self.get(block, key)
        if raw is None:
            if default is None:
                raise ConfigError(f"[{block}] {key}: required")
            return default
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"[{block}] {key}: not a number: {raw!r}") from None

    def opt_float(self, block: str, key: str) -> float | None:
        return None if self.get(block, key) is None else self.float(block, key)

    def int(self, block: str, key: str, default: int | None = None) -> int:
        value = self.float(block, key, None if default is None else float(default))
        if not float(value).is_integer():
            raise ConfigError(f"[{block}] {key}: not an integer")
        return int(value)

    def floats(self, block: str, key: str, default=None) -> list[float]:
        raw = self.get(block, key)
        if raw is None:
            if default is None:
                raise ConfigError(f"[{block}] {key}: required")
            return list(default)
        try:
            return [float(x) for x in raw.split(",") if x.strip()]
        except ValueError:
            raise ConfigError(f"[{block}] {key}: not a list of numbers: {raw!r}") from None

    @property
    def coeff_file(self) -> str | None:
        f = self.get("coefficients", "file")
        return None if f in (None, "", "default") else f

    @property
    def seed(self) -> int:
        return self.int("run", "seed", 0)


def parse_config(text: str, source: str = "<string>") -> RunConfig:
    blocks: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _BLOCK.match(line)
        if m:
            current = m.group(1)
            if current not in KNOWN_BLOCKS:
                raise ConfigError(f"{source}:{lineno}: unknown block [{current}]")
            if current in blocks:
                raise ConfigError(f"{source}:{lineno}: duplicate block [{current}]")
            blocks[current] = {}
            continue
        m = _KEY.match(line)
        if not m:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value' or '[block]'")
        key, value = m.group(1), m.group(2).strip()
        if current is None:
            raise ConfigError(f"{source}:{lineno}: key {key!r} outside any block")
        canon = _CANON[current].get(key.lower())
        if canon is None:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r} in [{current}]")
        if canon in blocks[current]:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} in [{current}]")
        blocks[current][canon] = value
    return RunConfig(blocks, source)


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))


def parse_state(text: str, species: Species | str = Species.MATTER, where: str = "") -> SpinState:
    parts = text.split()
    if len(parts) != 4:
        raise ConfigError(f"{where}: spin state must be 'v N M_s M_N', got {text!r}")
    try:
        v, N, M_N = int(parts[0]), int(parts[1]), int(parts[3])
        M_s = Fraction(parts[2])
        return SpinState(v, N, M_s, M_N, 0, Species(species))
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_level_pairs(text: str, where: str) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    pairs = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        m = re.fullmatch(r"(\d+)\s*,\s*(\d+)\s*->\s*(\d+)\s*,\s*(\d+)", item)
        if not m:
            raise ConfigError(f"{where}: level pair must be 'v,N->v2,N2', got {item!r}")
        a, b, c, d = map(int, m.groups())
        pairs.append(((a, b), (c, d)))
    return pairs


def parse_levels(text: str, where: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        m = re.fullmatch(r"(\d+)\s*,\s*(\d+)", item)
        if not m:
            raise ConfigError(f"{where}: level must be 'v,N', got {item!r}")
        out.append((int(m.group(1)), int(m.group(2))))
    return out


def trap_from_config(cfg: RunConfig) -> TrapConfig:
    cfg.block("trap")
    try:
        return TrapConfig(
            B0=cfg.float("trap", "B0"),
            B2=cfg.float("trap", "B2", 0.0),
            nu_z=cfg.float("trap", "nu_z", 0.0),
            nu_plus=cfg.opt_float("trap", "nu_plus"),
            nu_minus=cfg.opt_float("trap", "nu_minus"),
            T_z=cfg.float("trap", "T_z", 0.0),
            T_plus=cfg.opt_float("trap", "T_plus"),
            T_minus=cfg.float("trap", "T_minus", 0.0),
            r_orbital=cfg.opt_float("trap", "r_orbital"),
            environment_temperature=cfg.float("trap", "environment_temperature", 4.2),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"[trap]: {exc}") from None


def transition_from_config(cfg: RunConfig) -> TransitionSpec:
    cfg.block("transition")
    species = cfg.get("transition", "species", "matter")
    try:
        Species(species)
    except ValueError:
        raise ConfigError(f"[transition] species: must be matter or antimatter, got {species!r}") from None
    for key in ("lower", "upper"):
        if cfg.get("transition", key) is None:
            raise ConfigError(f"[transition] {key}: required")
    lower = parse_state(cfg.get("transition", "lower"), species, "[transition] lower")
    upper = parse_state(cfg.get("transition", "upper"), species, "[transition] upper")
    f0 = cfg.float("transition", "f0", math.nan)
    try:
        return TransitionSpec(lower, upper, f0)
    except ValueError as exc:
        raise ConfigError(f"[transition]: {exc}") from None
