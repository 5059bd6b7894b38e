"""Run configuration: CLI flags over settings.yaml over built-in defaults."""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

import yaml

from sdgjel.corpus.trend_counter import DEFAULT_TREND_GROUPS, QueryGroup, check_groups, parse_group_spec
from sdgjel.errors import UsageError
from sdgjel.matcher.keyword_matcher import Method
from sdgjel.matcher.weighting import WeightingScheme
from sdgjel.state.state_manager import CATALOG_FILE, STOPLIST_FILE, TAXONOMY_FILE, resolve_data_dir
from sdgjel.tools.report_tool import FORMATS

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS_FILE = Path("config") / "settings.yaml"

DEFAULTS: Dict[str, Any] = {
    "method": Method.LAFLEUR.value,
    "top_k": 3,
    "output_format": "tsv",
    "log_level": "INFO",
    "log_dir": None,
    "years": {"from": 2000, "to": 2020},
}

# Weighting when neither flag nor settings name one
DEFAULT_WEIGHTING = {
    Method.SELECTED_THREE: WeightingScheme.UNIFORM,
}


@dataclass(frozen=True)
class RunConfig:
    taxonomy_path: Path
    catalog_path: Path
    stoplist_path: Path
    method: Method
    weighting: WeightingScheme
    top_k: int
    output_format: str
    log_level: str = "INFO"
    log_dir: Optional[Path] = None
    years: Tuple[int, int] = (2000, 2020)
    trend_groups: Tuple[QueryGroup, ...] = DEFAULT_TREND_GROUPS


def load_settings(path: Optional[Path] = None) -> Dict[str, Any]:
    """Read settings YAML; a missing default file means no settings"""
    settings_file = Path(path) if path else DEFAULT_SETTINGS_FILE
    if not settings_file.exists():
        if path:
            raise UsageError(f"Settings file not found: {settings_file}")
        return {}
    try:
        with open(settings_file, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise UsageError(f"Cannot read settings {settings_file}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise UsageError(f"Settings {settings_file} must be a mapping")
    logger.debug(f"Loaded settings from {settings_file}")
    return data


def _groups_from_settings(value) -> Tuple[QueryGroup, ...]:
    if not isinstance(value, dict):
        raise UsageError("trend_groups must map group names to phrase lists")
    groups = []
    for name, phrases in value.items():
        if isinstance(phrases, str):
            phrases = [phrases]
        if not isinstance(phrases, list) or not phrases or not all(isinstance(p, str) and p.strip() for p in phrases):
            raise UsageError(f"trend group {name!r} needs a list of non-empty phrases")
        groups.append((str(name), tuple(p.strip() for p in phrases)))
    return tuple(groups)


def _int_setting(name: str, value) -> int:
    """Integers, or strings spelling one; floats are never truncated"""
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise UsageError(f"{name} must be an integer, got {value!r}")


def _existing(path: Path, what: str) -> Path:
    if not path.is_file():
        raise UsageError(f"{what} not found: {path}")
    return path


def build_run_config(
    overrides: Optional[Mapping[str, Any]] = None,
    settings_path: Optional[Path] = None,
    group_specs: Sequence[str] = (),
) -> RunConfig:
    """Merge flags (None means unset) with settings and defaults, then validate"""
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    settings = load_settings(settings_path)

    def pick(key: str):
        if key in overrides:
            return overrides[key]
        return settings.get(key, DEFAULTS.get(key))

    data_dir = resolve_data_dir(overrides.get("data_dir") or settings.get("data_dir"))
    taxonomy_path = _existing(Path(overrides.get("taxonomy") or data_dir / TAXONOMY_FILE), "Taxonomy snapshot")
    catalog_path = _existing(Path(overrides.get("catalog") or data_dir / CATALOG_FILE), "SDG catalog")
    stoplist_path = _existing(Path(overrides.get("stoplist") or data_dir / STOPLIST_FILE), "Stoplist")

    top_k = _int_setting("top_k", pick("top_k"))
    if top_k < 1:
        raise UsageError(f"--top must be >= 1, got {top_k}")

    output_format = str(pick("output_format")).lower()
    if output_format not in FORMATS:
        raise UsageError(f"Unknown format {output_format!r}; choose one of {', '.join(FORMATS)}")

    years_setting = settings.get("years") or DEFAULTS["years"]
    if not isinstance(years_setting, dict):
        raise UsageError("years must be a mapping with 'from' and 'to'")
    year_from = _int_setting("from", overrides.get("year_from", years_setting.get("from", DEFAULTS["years"]["from"])))
    year_to = _int_setting("to", overrides.get("year_to", years_setting.get("to", DEFAULTS["years"]["to"])))
    if year_from > year_to:
        raise UsageError(f"Empty year range {year_from}..{year_to}")

    if group_specs:
        groups = tuple(parse_group_spec(spec) for spec in group_specs)
    elif "trend_groups" in settings:
        groups = _groups_from_settings(settings["trend_groups"])
    else:
        groups = DEFAULT_TREND_GROUPS
    check_groups(groups)

    method = Method.parse(str(pick("method")))
    weighting = pick("weighting") or DEFAULT_WEIGHTING.get(method, WeightingScheme.TOP_FIVE_THEN_HARMONIC).value

    log_dir = pick("log_dir")
    return RunConfig(
        taxonomy_path=taxonomy_path,
        catalog_path=catalog_path,
        stoplist_path=stoplist_path,
        method=method,
        weighting=WeightingScheme.parse(str(weighting)),
        top_k=top_k,
        output_format=output_format,
        log_level=str(pick("log_level")).upper(),
        log_dir=Path(log_dir) if log_dir else None,
        years=(year_from, year_to),
        trend_groups=groups,
    )
