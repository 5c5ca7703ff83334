"""Sectioned key-value experiment configs.

Flat INI sections [system], [run], [sweep], [output]; numeric grids are
start:stop:count strings.  Parsing and serialization round-trip exactly and
the canonical serialization is hashed into every output file.
"""

from __future__ import annotations

import configparser
import hashlib
import io
from dataclasses import dataclass, field

import numpy as np

from .model import ChainParams, LinkParams, ValidationError

DEFAULTS = {
    "system": {
        "U": "0.03",
        "G": "0.24",
        "g3": "0.0048",
        "omega_matter": "0.0,0.0",
        "matter_dim": "5",
        "gauge_dim": "auto",
        "n_sites": "3",
        "m_field": "6",
    },
    "run": {
        "periods": "1",
        "samples": "400",
        "tolerance": "1e-10",
        "method": "auto",
        "resolution": "128",
    },
    "sweep": {
        "beta0": "0.2:3:12",
        "g3": "0.001:0.2:12",
        "workers": "0",
        "metric": "both",
        "periods": "20",
        "samples": "4096",
    },
    "output": {
        "directory": "out",
        "formats": "csv,json",
    },
}


def parse_grid(text: str) -> np.ndarray:
    """start:stop:count linear grid, or a comma list of explicit values."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"grid {text!r} is not start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1:
            raise ValidationError(f"grid count must be >= 1 in {text!r}")
        return np.linspace(start, stop, count)
    return np.array([float(v) for v in text.split(",") if v.strip() != ""])


@dataclass
class ExperimentConfig:
    sections: dict

    @classmethod
    def from_defaults(cls, overrides: dict | None = None) -> "ExperimentConfig":
        sections = {name: dict(vals) for name, vals in DEFAULTS.items()}
        for key, value in (overrides or {}).items():
            section, _, option = key.partition(".")
            if section not in sections or not option:
                raise ValidationError(f"unknown config key {key!r}")
            if option not in sections[section]:
                raise ValidationError(f"unknown option {key!r}")
            sections[section][option] = str(value)
        return cls(sections=sections)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        parser = configparser.ConfigParser()
        parser.optionxform = str  # keep option-name case (U vs u)
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
        overrides = {
            f"{section}.{option}": value
            for section in parser.sections()
            for option, value in parser.items(section)
        }
        return cls.from_defaults(overrides)

    def get(self, section: str, option: str) -> str:
        return self.sections[section][option]

    def get_float(self, section: str, option: str) -> float:
        return float(self.get(section, option))

    def get_int(self, section: str, option: str) -> int:
        return int(self.get(section, option))

    def set(self, key: str, value) -> None:
        section, _, option = key.partition(".")
        if section not in self.sections or option not in self.sections[section]:
            raise ValidationError(f"unknown option {key!r}")
        self.sections[section][option] = str(value)

    def serialize(self) -> str:
        parser = configparser.ConfigParser()
        parser.optionxform = str
        for section in sorted(self.sections):
            parser[section] = {k: self.sections[section][k] for k in sorted(self.sections[section])}
        buf = io.StringIO()
        parser.write(buf)
        return buf.getvalue()

    def config_hash(self) -> str:
        """Provenance hash over the experiment parameters.

        Execution-resource options (worker count) are excluded so that
        parallelism never changes output bytes.
        """
        lines = [
            line
            for line in self.serialize().splitlines()
            if not line.startswith("workers")
        ]
        return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()[:16]

    # ---- physics accessors ------------------------------------------------

    def link_params(self) -> LinkParams:
        gauge_dim = self.get("system", "gauge_dim").strip()
        omega = tuple(float(v) for v in self.get("system", "omega_matter").split(","))
        g3_text = self.get("system", "g3").strip()
        u = self.get_float("system", "U")
        g = self.get_float("system", "G")
        if g3_text.startswith("gap/"):
            beta0_sq = g / (2 * u)
            g3 = 4 * u * beta0_sq / float(g3_text[4:])
        else:
            g3 = float(g3_text)
        return LinkParams(
            U=u,
            G=g,
            g3=g3,
            omega_matter=omega,
            matter_dim=self.get_int("system", "matter_dim"),
            gauge_dim=None if gauge_dim in ("auto", "") else int(gauge_dim),
        )

    def chain_params(self) -> ChainParams:
        return ChainParams(
            n_sites=self.get_int("system", "n_sites"),
            link=self.link_params().replace(matter_dim=2),
            m_field=self.get_int("system", "m_field"),
        )

    def validate(self) -> dict:
        """Resolve all physics objects; returns a resolved-parameter report."""
        params = self.link_params()
        report = {
            "beta0": params.beta0,
            "omega_gap": params.omega_gap,
            "gauge_dim": params.resolved_gauge_dim,
            "strong_mixing": params.strong_mixing,
        }
        if self.get_int("system", "n_sites") >= 2:
            chain = self.chain_params()
            report["chain_sector_dim"] = chain.sector_dim
        for grid_key in ("beta0", "g3"):
            grid = parse_grid(self.get("sweep", grid_key))
            if len(grid) == 0:
                raise ValidationError(f"sweep grid {grid_key} is empty")
            report[f"sweep_{grid_key}_points"] = len(grid)
        if self.get("run", "method") not in ("auto", "eigen", "krylov"):
            raise ValidationError("run.method must be auto, eigen or krylov")
        if self.get_int("run", "resolution") < 32:
            raise ValidationError("run.resolution must be >= 32")
        return report
