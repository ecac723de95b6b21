"""Pipeline configuration, loadable from YAML."""

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Self

import yaml

from crosscheck.pipeline._constants import (
    DEFAULT_K_MAX,
    DEFAULT_K_MIN,
    DEFAULT_MAX_EVIDENCE,
    DEFAULT_RADIUS_DAYS,
    DEFAULT_RELEVANCE_THRESHOLD,
    FEATURE_LAYOUT_VERSION,
)
from crosscheck.pipeline._errors import IoError, ParseError


_PATH_FIELDS = ("stopwords", "gazetteer", "sentiment_lexicon", "emotion_lexicon", "vectors")


@dataclass(frozen=True)
class FeatureConfig:
    """
    Every knob of the claim-checking pipeline.

    Paths left as ``None`` fall back to the files bundled with the package.
    """

    m: int = DEFAULT_MAX_EVIDENCE
    tau: float = DEFAULT_RELEVANCE_THRESHOLD
    radius_days: int = DEFAULT_RADIUS_DAYS
    k_min: int = DEFAULT_K_MIN
    k_max: int = DEFAULT_K_MAX
    seed: int = 0
    sources: tuple[str, ...] | None = None
    stopwords: Path | None = None
    gazetteer: Path | None = None
    sentiment_lexicon: Path | None = None
    emotion_lexicon: Path | None = None
    vectors: Path | None = None
    layout_version: str = FEATURE_LAYOUT_VERSION

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if not -1.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [-1, 1], got {self.tau}")
        if self.radius_days < 1:
            raise ValueError(f"radius_days must be positive, got {self.radius_days}")
        if not 2 <= self.k_min <= self.k_max:
            raise ValueError(f"need 2 <= k_min <= k_max, got {self.k_min}, {self.k_max}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")
        if self.sources is not None:
            object.__setattr__(self, "sources", tuple(self.sources))
        for name in _PATH_FIELDS:
            if (value := getattr(self, name)) is not None:
                object.__setattr__(self, name, Path(value))

    @classmethod
    def from_mapping(cls, mapping: dict[str, Any]) -> Self:
        """
        Builds a config from a plain mapping.

        Raises:
            ValueError: On unknown keys or invalid values.
        """
        known = {item.name for item in fields(cls)}
        if unknown := sorted(set(mapping) - known):
            raise ValueError(f"unknown config key(s): {', '.join(unknown)}")
        return cls(**mapping)

    @classmethod
    def from_yaml(cls, path: Path) -> Self:
        """
        Loads a config from a YAML mapping.

        Raises:
            IoError: If the file cannot be read.
            ParseError: If the file is not a YAML mapping.
            ValueError: On unknown keys or invalid values.
        """
        try:
            loaded = yaml.safe_load(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoError(f"cannot read {path}: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ParseError(f"invalid YAML in {path}: {exc}") from exc
        if loaded is None:
            return cls()
        if not isinstance(loaded, dict):
            raise ParseError(f"{path} must hold a mapping")
        return cls.from_mapping(loaded)

    def with_overrides(self, **overrides: Any) -> Self:
        """Returns a copy with every non-``None`` override applied."""
        applied = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **applied)

    def to_dict(self) -> dict[str, Any]:
        """JSON-friendly form."""
        data = asdict(self)
        for name in _PATH_FIELDS:
            if data[name] is not None:
                data[name] = str(data[name])
        if data["sources"] is not None:
            data["sources"] = list(data["sources"])
        return data
