"""
    config.py

    Analysis settings: periods, scale factor, distribution
    buckets, formatting and fan-out. Read from an optional YAML
    file; command-line flags override the file.

    ep: "2003:2006"
    rcp: "1999:2006"       # omitted: twice the EP, ending with it
    scale: 10
    buckets:
      papers: [50, 100, 150]
      citations: [100, 500, 1000]
      h_index: [3, 6, 9]
    decimals: 4
    strict_initials: false
    workers: 1
"""

from dataclasses import dataclass, field, fields, replace
import logging

import yaml

from cids.aggregate import DEFAULT_BUCKETS, DEFAULT_SCALE, BucketSpec
from cids.corpus import YearRange
from cids.errors import CidsError

logger = logging.getLogger(__name__)

DEFAULT_EP = YearRange(2003, 2006)


def derive_rcp(ep: YearRange) -> YearRange:
    """
    The reference period: twice as long as `ep`, ending with it.
    """
    return YearRange(ep.end - 2 * len(ep) + 1, ep.end)


@dataclass(frozen=True)
class AnalysisConfig:
    ep: YearRange = DEFAULT_EP
    rcp: YearRange | None = None
    scale: float = DEFAULT_SCALE
    buckets: dict = field(default_factory=lambda: dict(DEFAULT_BUCKETS))
    decimals: int = 4
    strict_initials: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.scale <= 0:
            raise CidsError(f"scale must be positive, got {self.scale}")
        if self.decimals < 0:
            raise CidsError(f"decimals must be non-negative, got {self.decimals}")
        if self.workers < 1:
            raise CidsError(f"workers must be positive, got {self.workers}")

    @property
    def reference_period(self) -> YearRange:
        return self.rcp if self.rcp is not None else derive_rcp(self.ep)

    def with_overrides(self, **flags):
        """
        A copy where every non-None flag replaces the current value.
        An overridden EP without an explicit RCP re-derives the RCP.
        """
        flags = {k: v for k, v in flags.items() if v is not None}
        unknown = set(flags) - {f.name for f in fields(self)}
        if unknown:
            raise TypeError(f"Unknown config overrides: {', '.join(sorted(unknown))}")
        if "ep" in flags and "rcp" not in flags:
            flags["rcp"] = None
        return replace(self, **flags)


def _read_yaml(path):
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        raise CidsError(f"Config file not found: {path}") from None
    except yaml.YAMLError as e:
        raise CidsError(f"{path}: invalid YAML: {e}") from None
    except UnicodeDecodeError as e:
        raise CidsError(f"{path}: invalid UTF-8 at byte {e.start}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise CidsError(f"{path}: expected a mapping at top level")
    return data

def _buckets(data, path) -> dict:
    if not isinstance(data, dict):
        raise CidsError(f"{path}: buckets must map a metric to its thresholds")
    unknown = set(data) - set(DEFAULT_BUCKETS)
    if unknown:
        raise CidsError(f"{path}: unknown bucket metric(s): {', '.join(sorted(unknown))}")
    buckets = dict(DEFAULT_BUCKETS)
    for metric, thresholds in data.items():
        try:
            buckets[metric] = BucketSpec(tuple(thresholds))
        except (TypeError, ValueError) as e:
            raise CidsError(f"{path}: buckets.{metric}: {e}") from None
    return buckets

def load_buckets(path) -> dict:
    """
    Read metric -> BucketSpec from a YAML mapping of thresholds.
    Metrics not listed keep their defaults.
    """
    return _buckets(_read_yaml(path), path)

def load_config(path) -> AnalysisConfig:
    data = _read_yaml(path)
    known = {f.name for f in fields(AnalysisConfig)}
    unknown = set(data) - known
    if unknown:
        raise CidsError(f"{path}: unknown config key(s): {', '.join(sorted(unknown))}")

    values = {}
    try:
        for key in ("ep", "rcp"):
            if data.get(key) is not None:
                values[key] = YearRange.parse(data[key])
    except ValueError as e:
        raise CidsError(f"{path}: {e}") from None
    if "buckets" in data:
        values["buckets"] = _buckets(data["buckets"], path)
    for key, kind in (("scale", (int, float)), ("decimals", int), ("strict_initials", bool), ("workers", int)):
        if key in data:
            if not isinstance(data[key], kind) or (kind is not bool and isinstance(data[key], bool)):
                raise CidsError(f"{path}: {key} has the wrong type: {data[key]!r}")
            values[key] = data[key]
    config = AnalysisConfig(**values)
    logger.info("Read config from %s", path)
    return config
