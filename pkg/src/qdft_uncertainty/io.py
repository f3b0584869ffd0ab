"""Image ingestion, binary PPM, band specifications and experiment configs."""
from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import MalformedFile, OutOfRange, UnsupportedMaxval
from .qsignal import QSignal, Support

__all__ = [
    "ColorImage",
    "image_to_qsignal",
    "qsignal_to_image",
    "load_ppm",
    "save_ppm",
    "encode_ppm",
    "decode_ppm",
    "lowpass_band",
    "parse_band_spec",
    "ExperimentConfig",
    "load_qsignal",
]


@dataclass(frozen=True, eq=False)
class ColorImage:
    """8-bit RGB image; ``pixels`` has shape (height, width, 3)."""

    width: int
    height: int
    pixels: np.ndarray
    real_part_dropped: bool = field(default=False, compare=False)

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.shape != (self.height, self.width, 3):
            raise ValueError(f"pixels must have shape ({self.height}, {self.width}, 3), got {px.shape}")
        if px.dtype != np.uint8:
            if np.any(px < 0) or np.any(px > 255) or np.any(px != np.round(px)):
                raise ValueError("pixel values must be integers in [0, 255]")
            px = px.astype(np.uint8)
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, pixels) -> "ColorImage":
        px = np.asarray(pixels)
        return cls(px.shape[1], px.shape[0], px)

    def __eq__(self, other):
        if not isinstance(other, ColorImage):
            return NotImplemented
        return self.width == other.width and self.height == other.height and np.array_equal(self.pixels, other.pixels)

    __hash__ = None


def image_to_qsignal(img: ColorImage) -> QSignal:
    """Pure-quaternion embedding R/255 i + G/255 j + B/255 k; rows are image rows."""
    arr = np.zeros((img.height, img.width, 4))
    arr[..., 1:] = img.pixels.astype(np.float64) / 255.0
    return QSignal(arr)


def qsignal_to_image(s: QSignal, tol: float = 1e-6) -> ColorImage:
    """Clamp the i, j, k parts to [0, 1] and quantize with round(255 x).

    A real part whose norm exceeds ``tol`` is dropped with a warning and the
    result carries ``real_part_dropped=True``.
    """
    real_norm = float(np.linalg.norm(s.data[..., 0]))
    dropped = real_norm > tol
    if dropped:
        warnings.warn(f"dropping real part of norm {real_norm:.3g} when converting to RGB", stacklevel=2)
    rgb = np.rint(255.0 * np.clip(s.data[..., 1:], 0.0, 1.0)).astype(np.uint8)
    return ColorImage(s.cols, s.rows, rgb, real_part_dropped=dropped)


# ---------------------------------------------------------------------------
# binary PPM (P6, maxval 255)

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def decode_ppm(data: bytes) -> ColorImage:
    pos = 0
    tokens = []
    for _ in range(4):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise MalformedFile("truncated PPM header")
        tokens.append(m.group(1))
        pos = m.end()
    magic, width, height, maxval = tokens
    if magic != b"P6":
        raise MalformedFile(f"not a binary PPM (magic {magic!r})")
    try:
        width, height, maxval = int(width), int(height), int(maxval)
    except ValueError:
        raise MalformedFile("non-numeric PPM header field") from None
    if width < 1 or height < 1:
        raise MalformedFile("PPM dimensions must be positive")
    if maxval != 255:
        raise UnsupportedMaxval(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise MalformedFile("missing whitespace after PPM header")
    pos += 1
    n = width * height * 3
    body = data[pos : pos + n]
    if len(body) != n:
        raise MalformedFile(f"expected {n} pixel bytes, found {len(body)}")
    return ColorImage(width, height, np.frombuffer(body, dtype=np.uint8).reshape(height, width, 3).copy())


def encode_ppm(img: ColorImage) -> bytes:
    return b"P6\n%d %d\n255\n" % (img.width, img.height) + img.pixels.tobytes()


def load_ppm(path) -> ColorImage:
    return decode_ppm(Path(path).read_bytes())


def save_ppm(path, img: ColorImage) -> None:
    Path(path).write_bytes(encode_ppm(img))


# ---------------------------------------------------------------------------
# bands and configs


def lowpass_band(M: int, N: int, radius: float) -> Support:
    """Frequencies within ``radius`` of (0, 0) in the periodic (wraparound) metric."""
    u = np.arange(M)
    v = np.arange(N)
    du = np.minimum(u, M - u)[:, None]
    dv = np.minimum(v, N - v)[None, :]
    return Support.from_mask(du**2 + dv**2 <= radius**2)


def _band_from_obj(spec, M: int, N: int) -> Support:
    if isinstance(spec, str):
        return parse_band_spec(spec, M, N)
    if not isinstance(spec, dict) or len(spec.keys() - {"seed"}) != 1:
        raise ValueError(f"unrecognized band specification: {spec!r}")
    if "lowpass" in spec:
        return lowpass_band(M, N, float(spec["lowpass"]))
    if "random" in spec:
        return _random_band(M, N, int(spec["random"]), int(spec.get("seed", 0)))
    if "indices" in spec:
        return Support(M, N, tuple(tuple(e) for e in spec["indices"]))
    raise ValueError(f"unrecognized band specification: {spec!r}")


def _random_band(M: int, N: int, size: int, seed: int) -> Support:
    if not 0 <= size <= M * N:
        raise OutOfRange(f"band size {size} outside [0, {M * N}]")
    rng = np.random.default_rng(seed)
    return Support.from_flat(M, N, rng.choice(M * N, size=size, replace=False))


def parse_band_spec(text: str, M: int, N: int) -> Support:
    """Parse ``full``, ``lowpass:R``, ``random:SIZE[:SEED]`` or ``indices:u,v;u,v;...``."""
    kind, _, rest = text.strip().partition(":")
    try:
        if kind == "full":
            return Support.full(M, N)
        if kind == "lowpass":
            return lowpass_band(M, N, float(rest))
        if kind == "random":
            size, _, seed = rest.partition(":")
            return _random_band(M, N, int(size), int(seed or 0))
        if kind == "indices":
            pairs = [p for p in rest.split(";") if p.strip()]
            return Support(M, N, tuple(tuple(int(x) for x in p.split(",")) for p in pairs))
    except OutOfRange:
        raise
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad band specification {text!r}: {exc}") from None
    raise ValueError(f"unrecognized band specification {text!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters for recovery runs, usually read from a JSON file.

    ``band`` accepts ``"full"``, ``{"lowpass": r}``, ``{"random": size,
    "seed": s}``, ``{"indices": [[u, v], ...]}`` or the equivalent string
    forms of :func:`parse_band_spec`.  ``observed`` (optional) is a serialized
    spectrum; without it a planted instance is drawn from ``seed``.
    """

    M: int
    N: int
    sparsity: int
    band: Support
    eps: float = 0.0
    trials: int = 1
    seed: int = 0
    tol: float | None = None
    observed: QSignal | None = None

    def __post_init__(self):
        for name in ("M", "N", "sparsity", "trials"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.sparsity > self.M * self.N:
            raise ValueError("sparsity exceeds the number of grid cells")
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")
        if (self.band.rows, self.band.cols) != (self.M, self.N):
            raise ValueError("band grid does not match M x N")

    @classmethod
    def from_json_dict(cls, obj: dict, base: Path | None = None) -> "ExperimentConfig":
        M, N = int(obj["rows"]), int(obj["cols"])
        observed = None
        if "observed" in obj:
            observed = QSignal.from_json_dict(obj["observed"])
        elif "observed_file" in obj:
            path = Path(obj["observed_file"])
            observed = load_qsignal(path if path.is_absolute() or base is None else base / path)
        return cls(
            M=M,
            N=N,
            sparsity=int(obj["sparsity"]),
            band=_band_from_obj(obj.get("band", "full"), M, N),
            eps=float(obj.get("eps", 0.0)),
            trials=int(obj.get("trials", 1)),
            seed=int(obj.get("seed", 0)),
            tol=None if obj.get("tol") is None else float(obj["tol"]),
            observed=observed,
        )

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        path = Path(path)
        return cls.from_json_dict(json.loads(path.read_text()), base=path.parent)


def load_qsignal(path) -> QSignal:
    """Read a signal from ``.json`` or ``.csv`` (chosen by extension)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return QSignal.from_csv(text)
    return QSignal.from_json(text)
