"""User configuration.

Settings live in ``~/.evolgebra/config.toml``. The ``EVOLGEBRA_CONFIG``
environment variable, or the ``--config`` option of the command line,
points somewhere else. A missing file means the built-in defaults.
"""

import logging
import os
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Optional
from typing import Union

import toml

from evolgebra.errors import ConfigError


logger = logging.getLogger(__name__)

# CONSTANTS

CONFIG_DIR = Path.home() / Path(".evolgebra")
CONFIG_FILE = CONFIG_DIR / Path("config.toml")
CONFIG_ENV = "EVOLGEBRA_CONFIG"

DEFAULT_CONFIG = """
    title = "evolgebra config"

    [verify]
    # Seed for every randomized check
    seed = 7
    # Random draws per randomized theorem check
    samples = 25
    # Element pairs for the Banach inequality
    banach_samples = 10000
    # RK4 steps for the ODE cross-check
    ode_steps = 10000

    [exp]
    # Series stopping tolerance
    tol = 1e-14
    # Entrywise tolerance for exp(Der(E)) membership
    membership_tol = 1e-9

    [report]
    indent = 2
"""


@dataclass(frozen=True)
class VerifySettings:
    """The ``[verify]`` section."""

    seed: int = 7
    samples: int = 25
    banach_samples: int = 10000
    ode_steps: int = 10000


@dataclass(frozen=True)
class ExpSettings:
    """The ``[exp]`` section."""

    tol: float = 1e-14
    membership_tol: float = 1e-9


@dataclass(frozen=True)
class ReportSettings:
    """The ``[report]`` section."""

    indent: int = 2


@dataclass(frozen=True)
class Config:
    """All settings, with the file they came from (None for defaults)."""

    verify: VerifySettings = field(default_factory=VerifySettings)
    exp: ExpSettings = field(default_factory=ExpSettings)
    report: ReportSettings = field(default_factory=ReportSettings)
    source: Optional[Path] = None

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        """The settings as TOML-ready tables."""
        return {
            "verify": vars(self.verify).copy(),
            "exp": vars(self.exp).copy(),
            "report": vars(self.report).copy(),
        }


def config_path(path: Optional[Union[str, Path]] = None) -> Path:
    """The config location: explicit path, then environment, then home."""
    if path is not None:
        return Path(path)
    env = os.environ.get(CONFIG_ENV)
    if env:
        return Path(env)
    return CONFIG_FILE


def _section(options: Dict[str, Any], name: str, cls: Any) -> Any:
    table = options.get(name, {})
    if not isinstance(table, dict):
        raise ConfigError(f"[{name}] must be a table")
    values = {}
    for key, default in vars(cls()).items():
        if key not in table:
            continue
        value = table[key]
        expected = type(default)
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if isinstance(value, bool) or not isinstance(value, expected):
            raise ConfigError(
                f"[{name}] {key} must be {expected.__name__}, "
                f"got {type(value).__name__}"
            )
        values[key] = value
    return cls(**values)


def load_config(path: Optional[Union[str, Path]] = None) -> Config:
    """Read the configuration, falling back to defaults when there is no file.

    Raises:
        ConfigError: The file is not valid TOML or a value has the wrong type.
    """
    location = config_path(path)
    if not location.exists():
        logger.debug("no config at %s, using defaults", location)
        return Config()
    try:
        with open(location) as f:
            options = toml.load(f)
    except toml.TomlDecodeError as exc:
        raise ConfigError(f"{location}: {exc}") from exc

    return Config(
        verify=_section(options, "verify", VerifySettings),
        exp=_section(options, "exp", ExpSettings),
        report=_section(options, "report", ReportSettings),
        source=location,
    )


def write_default_config(path: Optional[Union[str, Path]] = None) -> Path:
    """Write the default settings, creating the directory. Returns the path."""
    location = config_path(path)
    location.parent.mkdir(parents=True, exist_ok=True)
    parsed_toml = toml.loads(DEFAULT_CONFIG)
    with open(location, "w") as f:
        _ = toml.dump(parsed_toml, f)
    return location
