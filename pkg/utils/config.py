"""Run configuration: INI file, environment fallback and command-line overrides"""

import configparser
import logging
import math
import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Mapping, Optional, Tuple

from ..core.errors import ConfigError, QuantumRingError
from ..core.node_params import EULER_NAMES, NodeParams
from ..core.ring_system import FluxPhase, RingSystem

logger = logging.getLogger(__name__)

ENV_CONFIG = 'QRING_CONFIG'
NODE_SECTIONS = ('node_I', 'node_II')
THETA_KEYS = ('theta1', 'theta2', 'theta3')
NODE_KEYS = THETA_KEYS + EULER_NAMES + ('L0', 'xi')
KNOWN_KEYS: Dict[str, Tuple[str, ...]] = {
    'node_I': NODE_KEYS,
    'node_II': NODE_KEYS,
    'ring': ('d', 'symmetric'),
    'sweep': ('k_min', 'k_max', 'points', 'flux_min', 'flux_max', 'flux_points',
              'k', 'theta_B', 'seed', 'samples'),
    'output': ('path', 'format', 'wavefunction_path'),
}

DEFAULT_SEED = 20240607
DEFAULT_SAMPLES = 20

OutputFormat = Literal['csv', 'json']

_PI_VALUE = re.compile(r'^\s*([+-]?)\s*(?:(.+?)\s*\*\s*)?pi\s*$', re.IGNORECASE)


def parse_number(text: str) -> float:
    """Parse a float, accepting ``pi``, ``-pi`` and an ``X*pi`` suffix

    Raises:
        ValueError: text is not a number
    """
    match = _PI_VALUE.match(text)
    if match is None:
        return float(text)
    sign = -1.0 if match.group(1) == '-' else 1.0
    factor = 1.0 if match.group(2) is None else float(match.group(2))
    return sign * factor * math.pi


@dataclass(frozen=True)
class KSweep:
    k_min: float
    k_max: float
    points: int

    def __post_init__(self):
        if not (self.k_min > 0 and self.k_max > 0):
            raise ConfigError(f"k must be positive (k_min={self.k_min}, k_max={self.k_max})",
                              key='k_min' if not self.k_min > 0 else 'k_max')
        if not self.k_max > self.k_min:
            raise ConfigError(f"Sweep bounds must be ordered, got k_min={self.k_min} >= "
                              f"k_max={self.k_max}", key='k_max')
        if self.points < 2:
            raise ConfigError(f"A sweep needs at least 2 points, got {self.points}", key='points')


@dataclass(frozen=True)
class FluxSweep:
    flux_min: float
    flux_max: float
    points: int
    k: float

    def __post_init__(self):
        if not self.k > 0:
            raise ConfigError(f"k must be positive, got {self.k}", key='k')
        if not self.flux_max > self.flux_min:
            raise ConfigError(f"Flux bounds must be ordered, got flux_min={self.flux_min} >= "
                              f"flux_max={self.flux_max}", key='flux_max')
        if self.points < 2:
            raise ConfigError(f"A sweep needs at least 2 points, got {self.points}",
                              key='flux_points')


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs

    Attributes:
        ring: Ring to simulate (None when no [node_I] section was given)
        k_sweep: Wavenumber sweep for ``sweep-k`` and ``localized``
        flux_sweep: Flux sweep at fixed k for ``sweep-flux``
        k: Fixed wavenumber for ``smatrix``
        flux: AB phase used by ``smatrix``
        output_path: Table destination; None prints to stdout
        output_format: 'csv' or 'json'
        wavefunction_path: Optional CSV of sampled localized states
        seed: Seed of the ``verify`` random draws
        samples: Random rings per ``verify`` check
        source: Path of the configuration file read, if any
    """

    ring: Optional[RingSystem] = None
    k_sweep: Optional[KSweep] = None
    flux_sweep: Optional[FluxSweep] = None
    k: Optional[float] = None
    flux: FluxPhase = field(default_factory=FluxPhase)
    output_path: Optional[str] = None
    output_format: OutputFormat = 'csv'
    wavefunction_path: Optional[str] = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    source: Optional[str] = None

    def __post_init__(self):
        if self.output_format not in ('csv', 'json'):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.output_format!r}",
                              key='format')
        if self.k is not None and not self.k > 0:
            raise ConfigError(f"k must be positive, got {self.k}", key='k')
        if self.samples < 1:
            raise ConfigError(f"samples must be at least 1, got {self.samples}", key='samples')

    def require_ring(self) -> RingSystem:
        if self.ring is None:
            raise ConfigError("missing required section [node_I]", key='node_I')
        return self.ring

    def require_k_sweep(self) -> KSweep:
        if self.k_sweep is None:
            raise ConfigError("missing required key k_min in [sweep]", key='k_min')
        return self.k_sweep

    def require_flux_sweep(self) -> FluxSweep:
        if self.flux_sweep is None:
            raise ConfigError("missing required key flux_min in [sweep]", key='flux_min')
        return self.flux_sweep

    def require_k(self) -> float:
        if self.k is None:
            raise ConfigError("missing required key k in [sweep]", key='k')
        return self.k


class _Source:
    """Merged key/value view of file and overrides, remembering file line numbers"""

    def __init__(self, parser: configparser.ConfigParser, lines: Dict[Tuple[str, str], int],
                 overrides: Mapping[str, object]):
        self.values: Dict[Tuple[str, str], object] = {}
        self.lines = lines
        for section in parser.sections():
            if section not in KNOWN_KEYS:
                raise ConfigError(f"unknown section [{section}]", key=section)
            for key, value in parser.items(section):
                if key not in KNOWN_KEYS[section]:
                    raise ConfigError(f"unknown key {key} in [{section}]", key=key,
                                      line=lines.get((section, key)))
                self.values[(section, key)] = value
        for dotted, value in overrides.items():
            if value is None:
                continue
            section, _, key = dotted.partition('.')
            if section not in KNOWN_KEYS or key not in KNOWN_KEYS[section]:
                raise ConfigError(f"unknown override {dotted}", key=dotted)
            self.values[(section, key)] = value
            self.lines.pop((section, key), None)

    def has_section(self, section: str) -> bool:
        return any(s == section for s, _ in self.values)

    def has(self, section: str, key: str) -> bool:
        return (section, key) in self.values

    def number(self, section: str, key: str, default: Optional[float] = None) -> Optional[float]:
        if (section, key) not in self.values:
            return default
        value = self.values[(section, key)]
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        try:
            return parse_number(str(value))
        except ValueError:
            raise ConfigError(f"non-numeric value {value!r} for {key} in [{section}]",
                              key=key, line=self.lines.get((section, key))) from None

    def integer(self, section: str, key: str, default: Optional[int] = None) -> Optional[int]:
        number = self.number(section, key)
        if number is None:
            return default
        if not number.is_integer():
            raise ConfigError(f"{key} in [{section}] must be an integer, got {number}",
                              key=key, line=self.lines.get((section, key)))
        return int(number)

    def required(self, section: str, key: str) -> float:
        if (section, key) not in self.values:
            raise ConfigError(f"missing required key {key} in [{section}]", key=key)
        return self.number(section, key)

    def flag(self, section: str, key: str) -> bool:
        value = self.values.get((section, key), False)
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ('1', 'yes', 'true', 'on'):
            return True
        if text in ('0', 'no', 'false', 'off'):
            return False
        raise ConfigError(f"not a boolean: {value!r} for {key} in [{section}]",
                          key=key, line=self.lines.get((section, key)))

    def text(self, section: str, key: str, default: Optional[str] = None) -> Optional[str]:
        value = self.values.get((section, key))
        return default if value is None else str(value).strip()


def _key_lines(text: str) -> Dict[Tuple[str, str], int]:
    """Line number of every ``key = value`` entry, per section"""
    lines: Dict[Tuple[str, str], int] = {}
    section = None
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped[0] in '#;':
            continue
        if stripped.startswith('[') and stripped.endswith(']'):
            section = stripped[1:-1].strip()
            continue
        if section is not None:
            for separator in ('=', ':'):
                if separator in stripped:
                    lines[(section, stripped.split(separator, 1)[0].strip())] = number
                    break
    return lines


def _read_file(path: str) -> Tuple[configparser.ConfigParser, Dict[Tuple[str, str], int]]:
    if not os.path.isfile(path):
        raise ConfigError(f"configuration file not found: {path}", key='config')
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration file {path}: {exc}", key='config') from exc
    return parser, _key_lines(text)


def _node(source: _Source, section: str, xi_default: float) -> NodeParams:
    theta = tuple(source.required(section, key) for key in THETA_KEYS)
    euler = tuple(source.number(section, key, 0.0) for key in EULER_NAMES)
    L0 = source.number(section, 'L0', 1.0)
    xi = source.number(section, 'xi', xi_default)
    try:
        return NodeParams(theta, euler, L0=L0, xi=xi)
    except QuantumRingError as exc:
        raise ConfigError(f"[{section}]: {exc}", key=section) from exc


def _ring(source: _Source) -> Optional[RingSystem]:
    if not source.has_section('node_I'):
        if source.has_section('node_II'):
            raise ConfigError("missing required section [node_I]", key='node_I')
        return None
    d = source.number('ring', 'd')
    symmetric = source.flag('ring', 'symmetric')
    node_I = _node(source, 'node_I', 0.0 if d is None else d)
    if d is not None:
        node_I = node_I.with_xi(d)
    try:
        if symmetric:
            if d is None:
                d = node_I.xi
            return RingSystem.mirrored(node_I, d, xi_I=node_I.xi)
        if not source.has_section('node_II'):
            raise ConfigError("missing required section [node_II] (or set symmetric)",
                              key='node_II')
        node_II = _node(source, 'node_II', 0.0)
        if d is not None:
            node_II = node_II.with_xi(0.0)
        return RingSystem(node_I, node_II)
    except ConfigError:
        raise
    except QuantumRingError as exc:
        raise ConfigError(f"[ring]: {exc}", key='d') from exc


def _k_sweep(source: _Source) -> Optional[KSweep]:
    if not any(source.has('sweep', key) for key in ('k_min', 'k_max', 'points')):
        return None
    return KSweep(source.required('sweep', 'k_min'), source.required('sweep', 'k_max'),
                  source.integer('sweep', 'points', 101))


def _flux_sweep(source: _Source) -> Optional[FluxSweep]:
    if not any(source.has('sweep', key) for key in ('flux_min', 'flux_max', 'flux_points')):
        return None
    return FluxSweep(source.required('sweep', 'flux_min'), source.required('sweep', 'flux_max'),
                     source.integer('sweep', 'flux_points', 101), source.required('sweep', 'k'))


def resolve_path(path: Optional[str]) -> Optional[str]:
    """Explicit path, else $QRING_CONFIG, else None"""
    if path:
        return path
    env = os.environ.get(ENV_CONFIG)
    if env:
        logger.info("Using configuration from $%s: %s", ENV_CONFIG, env)
        return env
    return None


def parse_config(path: Optional[str] = None,
                 overrides: Optional[Mapping[str, object]] = None) -> RunConfig:
    """Build a RunConfig from an INI file and command-line overrides

    Args:
        path: INI file; falls back to $QRING_CONFIG, then to no file
        overrides: ``{'section.key': value}`` pairs from the command line;
            None values are ignored, others replace file values

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: missing file or key, non-numeric value (with its line
            number), unknown key, or invalid sweep bounds
    """
    path = resolve_path(path)
    if path is not None:
        parser, lines = _read_file(path)
    else:
        parser, lines = configparser.ConfigParser(interpolation=None), {}
    source = _Source(parser, lines, overrides or {})

    k = source.number('sweep', 'k')
    config = RunConfig(
        ring=_ring(source),
        k_sweep=_k_sweep(source),
        flux_sweep=_flux_sweep(source),
        k=k,
        flux=FluxPhase(source.number('sweep', 'theta_B', 0.0)),
        output_path=source.text('output', 'path'),
        output_format=source.text('output', 'format', 'csv').lower(),
        wavefunction_path=source.text('output', 'wavefunction_path'),
        seed=source.integer('sweep', 'seed', DEFAULT_SEED),
        samples=source.integer('sweep', 'samples', DEFAULT_SAMPLES),
        source=path,
    )
    logger.debug("Parsed configuration: %s", config)
    return config


def split_assignments(assignments: Optional[List[str]]) -> Dict[str, str]:
    """Turn ``section.key=value`` strings into an overrides mapping"""
    result: Dict[str, str] = {}
    for item in assignments or []:
        dotted, sep, value = item.partition('=')
        if not sep or '.' not in dotted:
            raise ConfigError(f"expected section.key=value, got {item!r}", key=item)
        result[dotted.strip()] = value.strip()
    return result
