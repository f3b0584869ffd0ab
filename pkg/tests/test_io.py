import json
import warnings

import numpy as np
import pytest

from conftest import synthetic_image
from qdft_uncertainty.exceptions import MalformedFile, OutOfRange, UnsupportedMaxval
from qdft_uncertainty.io import (
    ColorImage,
    ExperimentConfig,
    decode_ppm,
    encode_ppm,
    image_to_qsignal,
    load_ppm,
    load_qsignal,
    lowpass_band,
    parse_band_spec,
    qsignal_to_image,
    save_ppm,
)
from qdft_uncertainty.qsignal import QSignal, Support


def test_ppm_round_trip(tmp_path, rng):
    img = ColorImage.from_array(rng.integers(0, 256, (5, 7, 3), dtype=np.uint8))
    path = tmp_path / "x.ppm"
    save_ppm(path, img)
    assert path.read_bytes().startswith(b"P6\n7 5\n255\n")
    assert load_ppm(path) == img


def test_ppm_header_comments():
    body = bytes(range(12))
    img = decode_ppm(b"P6 # made by hand\n# another\n2 2\n255\n" + body)
    assert (img.width, img.height) == (2, 2)
    assert img.pixels[1, 1].tolist() == [9, 10, 11]


@pytest.mark.parametrize(
    "data, exc",
    [
        (b"P3\n1 1\n255\n\x00\x00\x00", MalformedFile),
        (b"P6\n1 1\n", MalformedFile),
        (b"P6\n2 2\n255\n\x00\x00\x00", MalformedFile),
        (b"P6\n1 1\n65535\n" + b"\x00" * 6, UnsupportedMaxval),
        (b"P6\nx 1\n255\n\x00\x00\x00", MalformedFile),
        (b"P6\n0 1\n255\n", MalformedFile),
    ],
)
def test_ppm_errors(data, exc):
    with pytest.raises(exc):
        decode_ppm(data)


def test_unsupported_maxval_is_malformed():
    assert issubclass(UnsupportedMaxval, MalformedFile)


def test_image_embedding_round_trip():
    img = synthetic_image(16)
    q = image_to_qsignal(img)
    assert np.all(q.data[..., 0] == 0)
    assert q.data[3, 5, 1] == img.pixels[3, 5, 0] / 255
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        back = qsignal_to_image(q)
    assert back == img and not back.real_part_dropped


def test_real_part_dropped_with_warning():
    arr = np.zeros((2, 2, 4))
    arr[..., 0] = 0.5
    arr[..., 1:] = 1.5  # also clamps
    with pytest.warns(UserWarning):
        img = qsignal_to_image(QSignal(arr))
    assert img.real_part_dropped
    assert np.all(img.pixels == 255)


def test_color_image_validation():
    with pytest.raises(ValueError):
        ColorImage(2, 2, np.zeros((2, 3, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        ColorImage(1, 1, np.array([[[300, 0, 0]]]))


def test_lowpass_band_wraps():
    band = lowpass_band(8, 8, 1)
    assert set(band) == {(0, 0), (0, 1), (1, 0), (0, 7), (7, 0)}
    assert len(lowpass_band(8, 8, 0)) == 1
    assert len(lowpass_band(8, 8, 100)) == 64


def test_parse_band_spec():
    assert parse_band_spec("full", 2, 3) == Support.full(2, 3)
    assert parse_band_spec("lowpass:1", 8, 8) == lowpass_band(8, 8, 1)
    assert parse_band_spec("indices:0,1;1,2", 2, 3).entries == ((0, 1), (1, 2))
    r1 = parse_band_spec("random:5:3", 4, 4)
    assert len(r1) == 5 and r1 == parse_band_spec("random:5:3", 4, 4)
    with pytest.raises(OutOfRange):
        parse_band_spec("random:17", 4, 4)
    with pytest.raises(OutOfRange):
        parse_band_spec("indices:5,5", 2, 2)
    for bad in ("nope", "lowpass:abc", "indices:1"):
        with pytest.raises(ValueError):
            parse_band_spec(bad, 4, 4)


def test_experiment_config(tmp_path):
    sig = QSignal.zeros(2, 2)
    (tmp_path / "obs.json").write_text(sig.to_json())
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(
        json.dumps({"rows": 2, "cols": 2, "sparsity": 1, "band": {"indices": [[0, 0]]}, "observed_file": "obs.json"})
    )
    cfg = ExperimentConfig.load(cfg_path)
    assert cfg.observed == sig and len(cfg.band) == 1 and cfg.eps == 0.0
    cfg2 = ExperimentConfig.from_json_dict({"rows": 4, "cols": 4, "sparsity": 2, "band": {"random": 14, "seed": 1}})
    assert len(cfg2.band) == 14
    with pytest.raises(ValueError):
        ExperimentConfig.from_json_dict({"rows": 2, "cols": 2, "sparsity": 5})
    with pytest.raises(ValueError):
        ExperimentConfig.from_json_dict({"rows": 2, "cols": 2, "sparsity": 1, "eps": -1})
    with pytest.raises(ValueError):
        ExperimentConfig.from_json_dict({"rows": 2, "cols": 2, "sparsity": 1, "band": {"bogus": 1}})


def test_load_qsignal_by_extension(tmp_path, rng):
    s = QSignal.random(2, 3, rng)
    (tmp_path / "s.csv").write_text(s.to_csv())
    (tmp_path / "s.json").write_text(s.to_json())
    assert load_qsignal(tmp_path / "s.csv") == s
    assert load_qsignal(tmp_path / "s.json") == s


def test_encode_decode_bytes():
    img = ColorImage.from_array(np.full((1, 2, 3), 7, dtype=np.uint8))
    assert encode_ppm(img) == b"P6\n2 1\n255\n" + b"\x07" * 6
