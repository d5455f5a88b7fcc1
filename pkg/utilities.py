# utilities.py

import io
import json
import logging
from typing import Any, Dict, List, NamedTuple, Optional, TextIO, Tuple

import click
import numpy as np
import pandas as pd

from errors import ConfigError, FrameFileError
from fusion import FusionFrame, GaborFusionFrame, Subspace
from gabor import LatticePoint, check_lattice
from phase_retrieval import MeasurementSet

logger = logging.getLogger("gaborfusion.utilities")
logger.setLevel(logging.INFO)

FRAME_FORMAT = "gabor-fusion-frame"
FRAME_VERSION = 1

DEFAULT_SETTINGS: Dict[str, Any] = {
    "tol": 1e-10,
    "hypothesis_tol": 1e-8,
    "residual_rtol": 5e-2,
    "seed": 0,
    "log_level": "INFO",
}


class Config:
    _config_data = None

    @classmethod
    def load_config(cls, filename: str = "gaborfusion.json") -> Dict[str, Any]:
        """Load tool settings from a JSON file, falling back to the defaults."""
        if cls._config_data is None:
            cls._config_data = dict(DEFAULT_SETTINGS)
            try:
                with open(filename, "r", encoding="utf-8") as f:
                    cls._config_data.update(json.load(f))
                logger.info(f"Settings loaded from {filename}.")
            except FileNotFoundError:
                logger.debug(f"No settings file {filename}; using defaults.")
            except Exception:
                logger.exception(f"Failed to load settings from {filename}; using defaults.")
        return cls._config_data

    @classmethod
    def get(cls, key: str, default: Any = None) -> Any:
        """Get a configuration value."""
        config = cls.load_config()
        return config.get(key, default)

    @classmethod
    def save_config(cls, data: Dict[str, Any], filename: str = "gaborfusion.json") -> None:
        """Save the settings to a JSON file."""
        try:
            with open(filename, "w", encoding="utf-8") as f:
                json.dump(data, f, indent=4, sort_keys=True)
            cls._config_data = dict(DEFAULT_SETTINGS, **data)
            logger.info("Settings saved successfully.")
        except Exception:
            logger.exception("Failed to save settings.")

    @classmethod
    def reload_config(cls, filename: str = "gaborfusion.json") -> Dict[str, Any]:
        """Reload the settings from the JSON file."""
        cls._config_data = None
        return cls.load_config(filename)


class BuildConfig(NamedTuple):
    n: int
    windows: np.ndarray
    tight_bound: float
    lattice: Optional[List[LatticePoint]]


def _parse_entry(value: Any) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, bool):
        raise TypeError("booleans are not window entries")
    return complex(float(value))


def _parse_window_row(row: Any, n: int) -> np.ndarray:
    if isinstance(row, dict):
        support = [int(i) for i in row["support"]]
        if any(not 0 <= i < n for i in support):
            raise ValueError(f"support positions must lie in 0..{n - 1}")
        vector = np.zeros(n, dtype=np.complex128)
        vector[support] = _parse_entry(row.get("value", 1.0))
        if row.get("normalize", True) and np.any(vector):
            vector /= np.linalg.norm(vector)
        return vector
    entries = [_parse_entry(v) for v in row]
    if len(entries) != n:
        raise ValueError(f"window row has {len(entries)} entries, expected {n}")
    return np.array(entries, dtype=np.complex128)


def parse_build_config(data: Dict[str, Any]) -> BuildConfig:
    """Validate a build configuration document."""
    try:
        n = int(data["n"])
        if n < 1:
            raise ValueError("dimension n must be positive")
        rows = data["windows"]
        if not isinstance(rows, list) or not rows:
            raise ValueError("windows must be a non-empty list")
        if len(rows) > n:
            raise ValueError(f"{len(rows)} window rows do not fit in an {n}x{n} stack")
        windows = np.array([_parse_window_row(row, n) for row in rows])
        tight_bound = float(data.get("tight_bound", 1.0))
        lattice = data.get("lattice")
        if lattice is not None:
            lattice = check_lattice([(int(k), int(l)) for k, l in lattice], n)
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"invalid build configuration: {err}") from err
    return BuildConfig(n, windows, tight_bound, lattice)


def load_build_config(filename: str) -> BuildConfig:
    """Load and validate a build configuration from a JSON file."""
    try:
        with open(filename, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as err:
        logger.error(f"Failed to read build configuration {filename}: {err}")
        raise ConfigError(f"cannot read build configuration {filename}: {err}") from err
    if not isinstance(data, dict):
        raise ConfigError("build configuration must be a JSON object")
    return parse_build_config(data)


def _encode_matrix(X: np.ndarray) -> List[List[List[float]]]:
    # adding 0.0 turns -0.0 into 0.0 so the output does not depend on signed zeros
    return [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in X]


def _decode_matrix(data: Any) -> np.ndarray:
    rows = [[complex(float(re), float(im)) for re, im in row] for row in data]
    return np.array(rows, dtype=np.complex128)


def frame_to_document(frame: FusionFrame) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "format": FRAME_FORMAT,
        "version": FRAME_VERSION,
        "n": frame.ambient_dim,
        "weights": [float(w) for w in frame.weights],
        "subspaces": [_encode_matrix(W.basis) for W in frame.subspaces],
    }
    if isinstance(frame, GaborFusionFrame):
        doc["window"] = _encode_matrix(frame.window)
        doc["lattice"] = [[k, l] for k, l in frame.lattice]
        doc["tight_bound"] = frame.tight_bound
    return doc


def dump_frame(frame: FusionFrame) -> str:
    return json.dumps(frame_to_document(frame), indent=1, sort_keys=True) + "\n"


def load_frame(text: str) -> FusionFrame:
    """Parse a frame document written by ``dump_frame``."""
    try:
        doc = json.loads(text)
        if doc.get("format") != FRAME_FORMAT:
            raise ValueError(f"not a {FRAME_FORMAT} document")
        n = int(doc["n"])
        subspaces = [Subspace(_decode_matrix(basis)) for basis in doc["subspaces"]]
        if any(W.ambient_dim != n for W in subspaces):
            raise ValueError(f"subspace bases do not live in C^{n}")
        weights = doc.get("weights")
        if "lattice" in doc:
            return GaborFusionFrame(
                subspaces,
                _decode_matrix(doc["window"]),
                [(int(k), int(l)) for k, l in doc["lattice"]],
                float(doc["tight_bound"]),
                weights,
            )
        return FusionFrame(subspaces, weights)
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise FrameFileError(f"malformed frame file: {err}") from err


def read_frame(filename: str) -> FusionFrame:
    try:
        with open(filename, "r", encoding="utf-8") as f:
            return load_frame(f.read())
    except OSError as err:
        raise FrameFileError(f"cannot read frame file {filename}: {err}") from err


def format_real(value: float) -> str:
    """17 significant digits, no signed zero."""
    return format(float(value) + 0.0, ".17g")


def dump_signal(x: np.ndarray) -> str:
    lines = [f"N {x.size}"]
    lines.extend(f"{format_real(z.real)} {format_real(z.imag)}" for z in x)
    return "\n".join(lines) + "\n"


def load_signal(text: str) -> np.ndarray:
    lines = [line for line in text.splitlines() if line.strip()]
    try:
        tag, size = lines[0].split()
        if tag != "N":
            raise ValueError("signal file must start with 'N <dim>'")
        n = int(size)
        if len(lines) != n + 1:
            raise ValueError(f"expected {n} entries, found {len(lines) - 1}")
        entries = []
        for line in lines[1:]:
            re, im = line.split()
            entries.append(complex(float(re), float(im)))
    except (IndexError, ValueError) as err:
        raise FrameFileError(f"malformed signal file: {err}") from err
    x = np.array(entries, dtype=np.complex128)
    if not np.all(np.isfinite(x)):
        raise FrameFileError("malformed signal file: non-finite entries")
    return x


def read_text(filename: str, kind: str) -> str:
    try:
        with open(filename, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as err:
        raise FrameFileError(f"cannot read {kind} file {filename}: {err}") from err


def dump_measurements(m: MeasurementSet) -> str:
    """CSV of k,l,value in lexicographic (k, l) order, preceded by a comment carrying the flags."""
    df = pd.DataFrame(
        {
            "k": [k for k, _ in m.labels],
            "l": [l for _, l in m.labels],
            "value": m.values,
        }
    ).sort_values(["k", "l"], kind="stable")
    header = f"# squared={'true' if m.squared else 'false'} frame={m.frame_id or '-'}\n"
    return header + df.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def _parse_header(line: str) -> Tuple[bool, str]:
    fields = dict(item.split("=", 1) for item in line.lstrip("#").split() if "=" in item)
    squared = fields.get("squared", "false").lower() == "true"
    frame_id = fields.get("frame", "-")
    return squared, "" if frame_id == "-" else frame_id


def load_measurements(text: str) -> MeasurementSet:
    first = text.splitlines()[0] if text else ""
    squared, frame_id = _parse_header(first) if first.startswith("#") else (False, "")
    try:
        df = pd.read_csv(io.StringIO(text), comment="#")
        if list(df.columns) != ["k", "l", "value"]:
            raise ValueError(f"expected columns k,l,value, got {','.join(map(str, df.columns))}")
        if df.empty:
            raise ValueError("no measurements")
        values = pd.to_numeric(df["value"], errors="raise").to_numpy(dtype=float)
        labels = list(zip(df["k"].astype(int), df["l"].astype(int)))
        return MeasurementSet.from_values(values, labels, frame_id, squared)
    except (ValueError, TypeError, pd.errors.ParserError) as err:
        raise FrameFileError(f"malformed measurement file: {err}") from err


def write_output(text: str, out: Optional[TextIO]) -> None:
    """Write to the given handle, or standard output."""
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write(text)
