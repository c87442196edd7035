"""Pipeline configuration: defaults, file loading, validation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib  # Python >= 3.11
except ImportError:  # pragma: no cover - depends on interpreter version
    tomllib = None


class ConfigError(ValueError):
    """Invalid or unreadable pipeline configuration."""


@dataclass
class PipelineConfig:
    """Effective settings for every pipeline stage."""

    records_path: str | None = None
    input_format: str = "json_lines"
    csv_author_delimiter: str = ";"
    min_pubs: int = 10
    min_edge_weight: int = 5
    snowball_weight: int = 2
    damping: float = 0.85
    window: int = 4
    epsilon: float = 1e-6
    max_iterations: int = 100
    fusion_k: int | None = None  # None -> 2 * topic_n
    topic_n: int = 10
    stopword_path: str | None = None
    alias_map_path: str | None = None
    output_dir: str = "out"
    max_cloud_terms: int = 50
    font_min_px: int = 12
    font_max_px: int = 48

    def effective_fusion_k(self) -> int:
        return self.fusion_k if self.fusion_k is not None else 2 * self.topic_n

    def validate(self) -> None:
        if self.input_format not in ("json_lines", "csv"):
            raise ConfigError(f"unknown input format {self.input_format!r}")
        if self.min_pubs < 0:
            raise ConfigError("thresholds.min_pubs must be >= 0")
        if self.min_edge_weight < 1:
            raise ConfigError("thresholds.min_edge_weight must be >= 1")
        if self.snowball_weight < 1:
            raise ConfigError("thresholds.snowball_weight must be >= 1")
        if not 0.0 < self.damping < 1.0:
            raise ConfigError("textrank.damping must be in (0, 1)")
        if self.window < 1:
            raise ConfigError("textrank.window must be >= 1")
        if self.epsilon <= 0:
            raise ConfigError("textrank.epsilon must be > 0")
        if self.max_iterations < 1:
            raise ConfigError("textrank.max_iterations must be >= 1")
        if self.fusion_k is not None and self.fusion_k < 1:
            raise ConfigError("fusion_k must be >= 1")
        if self.topic_n < 1:
            raise ConfigError("topic_n must be >= 1")
        if self.max_cloud_terms < 1:
            raise ConfigError("max_cloud_terms must be >= 1")
        if self.font_min_px < 1 or self.font_max_px < self.font_min_px:
            raise ConfigError("font px range must satisfy 1 <= font_min_px <= font_max_px")

    def to_dict(self) -> dict:
        """Nested mapping mirroring the config file schema."""
        return {
            "input": {
                "records": self.records_path,
                "format": self.input_format,
                "csv_author_delimiter": self.csv_author_delimiter,
            },
            "thresholds": {
                "min_pubs": self.min_pubs,
                "min_edge_weight": self.min_edge_weight,
                "snowball_weight": self.snowball_weight,
            },
            "textrank": {
                "damping": self.damping,
                "window": self.window,
                "epsilon": self.epsilon,
                "max_iterations": self.max_iterations,
            },
            "fusion_k": self.fusion_k,
            "topic_n": self.topic_n,
            "stopword_path": self.stopword_path,
            "alias_map_path": self.alias_map_path,
            "output_dir": self.output_dir,
            "max_cloud_terms": self.max_cloud_terms,
            "font_min_px": self.font_min_px,
            "font_max_px": self.font_max_px,
        }


_TOP_LEVEL_KEYS = {
    "input",
    "thresholds",
    "textrank",
    "fusion_k",
    "topic_n",
    "stopword_path",
    "alias_map_path",
    "output_dir",
    "max_cloud_terms",
    "font_min_px",
    "font_max_px",
}


def _take(section: dict, allowed: dict[str, str], where: str) -> dict:
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown {where} key(s): {', '.join(sorted(unknown))}")
    return {attr: section[key] for key, attr in allowed.items() if key in section}


def config_from_dict(data: dict) -> PipelineConfig:
    """Build and validate a config from the nested file schema."""
    unknown = set(data) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    kwargs: dict = {}
    kwargs.update(
        _take(
            data.get("input", {}) or {},
            {"records": "records_path", "format": "input_format",
             "csv_author_delimiter": "csv_author_delimiter"},
            "input",
        )
    )
    kwargs.update(
        _take(
            data.get("thresholds", {}) or {},
            {"min_pubs": "min_pubs", "min_edge_weight": "min_edge_weight",
             "snowball_weight": "snowball_weight"},
            "thresholds",
        )
    )
    kwargs.update(
        _take(
            data.get("textrank", {}) or {},
            {"damping": "damping", "window": "window", "epsilon": "epsilon",
             "max_iterations": "max_iterations"},
            "textrank",
        )
    )
    for key in ("fusion_k", "topic_n", "stopword_path", "alias_map_path",
                "output_dir", "max_cloud_terms", "font_min_px", "font_max_px"):
        if key in data and data[key] is not None:
            kwargs[key] = data[key]
    config = PipelineConfig(**kwargs)
    config.validate()
    return config


def load_config(path) -> PipelineConfig:
    """Load a TOML or JSON config file (sniffed by extension)."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if path.suffix.lower() == ".toml":
        if tomllib is None:
            raise ConfigError("TOML configs require Python 3.11+; use JSON instead")
        try:
            data = tomllib.loads(raw.decode("utf-8"))
        except Exception as exc:
            raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    else:
        try:
            data = json.loads(raw.decode("utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config root in {path} must be a table/object")
    return config_from_dict(data)
