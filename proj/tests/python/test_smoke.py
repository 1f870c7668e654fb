import json
import os
import subprocess
import wave

import numpy as np
import pytest

import ambio

RATE = 16000


def noise(seconds, seed=0):
    return np.random.default_rng(seed).uniform(-0.5, 0.5, int(seconds * RATE))


def test_static_round_trip():
    foa = ambio.encode_static(noise(1.0), RATE, 45.0, 20.0)
    assert foa.shape == (4, RATE)
    w, x, y, z = foa
    np.testing.assert_allclose(x**2 + y**2 + z**2, 2 * w**2, rtol=1e-9, atol=1e-15)
    track = ambio.estimate_doa(foa, RATE)
    assert track["valid"].all()
    np.testing.assert_allclose(track["azimuth_deg"], 45.0, atol=1e-9)
    np.testing.assert_allclose(track["elevation_deg"], 20.0, atol=1e-9)


def test_moving_source_and_caption():
    traj = ambio.Trajectory(0.0, 0.0, 90.0, 0.0, move_start_s=2.0, move_end_s=8.0)
    foa = ambio.encode_moving(noise(10.0, 1), RATE, traj)
    track = ambio.estimate_doa(foa, RATE)
    assert track["azimuth_deg"][0] == pytest.approx(0.0, abs=1e-6)
    assert track["azimuth_deg"][-1] == pytest.approx(90.0, abs=1e-6)
    assert traj.position_at(5.0) == pytest.approx((45.0, 0.0))
    assert ambio.spatial_caption("a bee buzzes", traj) == "a bee buzzes, moving moderate from the front to the left"
    phrases = ambio.map_to_language(traj)
    assert phrases["start_direction"] == "front"


def test_conditioning_tensor_shape():
    traj, speed, movement = ambio.sample_dynamic(3)
    assert speed in {"fast", "moderate", "slow"}
    assert movement in {"azimuth", "elevation", "both"}
    m = ambio.conditioning_tensor(traj)
    assert m.shape == (86, 100)
    assert (m.sum(axis=0) == 2).all()
    start, total = ambio.temporal_conditions(traj)
    assert total == pytest.approx(traj.move_end_s - traj.move_start_s)
    assert ambio.temporal_conditions(ambio.sample_static(3)) == (0.0, 0.0)


def test_metrics():
    assert ambio.spatial_angle(30.0, 10.0, -40.0, 25.0) == pytest.approx(67.74971720316297, abs=1e-9)
    assert ambio.circular_l1([170.0], [-170.0]) == pytest.approx(20.0)
    a = ambio.encode_static(noise(1.0, 2), RATE, 10.0, 0.0)
    assert ambio.mrstft_distance(a, a, RATE)["mean"] == 0.0
    assert ambio.mrstft_distance(a, 0.5 * a, RATE)["mean"] > 0.0
    b = ambio.encode_static(noise(1.0, 2), RATE, 20.0, 0.0)
    report = ambio.evaluate_pair(a, b, RATE)
    assert report["l1_azimuth_deg"] == pytest.approx(10.0, abs=1e-9)


def test_wav_round_trip_and_errors(tmp_path):
    foa = ambio.encode_static(noise(0.25, 4), RATE, -60.0, 5.0)
    path = str(tmp_path / "a.wav")
    ambio.write_foa(path, foa, RATE)
    back, rate = ambio.read_foa(path)
    assert rate == RATE
    np.testing.assert_array_equal(back, foa.astype(np.float32).astype(np.float64))
    with pytest.raises(ambio.AmbioError):
        ambio.read_foa(str(tmp_path / "missing.wav"))
    with pytest.raises(ambio.AmbioError):
        ambio.Trajectory(0.0, 0.0, 90.0, 0.0, move_start_s=5.0, move_end_s=5.0)
    with pytest.raises(ambio.AmbioError):
        ambio.estimate_doa(np.zeros((3, 10)), RATE)


def write_pcm16(path, samples, rate):
    with wave.open(str(path), "wb") as f:
        f.setnchannels(1)
        f.setsampwidth(2)
        f.setframerate(rate)
        f.writeframes((np.clip(samples, -1, 1) * 32767).astype("<i2").tobytes())


def test_preprocess_and_augment(tmp_path):
    out, rate = ambio.preprocess(np.random.default_rng(5).uniform(-0.5, 0.5, 22050), 22050)
    assert rate == 16000 and out.shape == (160000,)

    write_pcm16(tmp_path / "hum.wav", noise(2.0, 6), RATE)
    ambio.write_foa(str(tmp_path / "foa.wav"), np.tile(noise(1.0, 7), (4, 1)), RATE)
    lines = [
        {"source_id": "hum", "audio_path": "hum.wav", "caption": "an engine hums"},
        {"source_id": "foa", "audio_path": "foa.wav", "caption": "not a mono file"},
    ]
    manifest = tmp_path / "in.jsonl"
    manifest.write_text("".join(json.dumps(line) + "\n" for line in lines))
    runs = [ambio.augment_corpus(str(manifest), str(tmp_path / d), seed=3, jobs=1) for d in ("a", "b")]
    records, failures = runs[0]
    assert runs[0] == runs[1]
    assert [r["kind"] for r in records] == ["static", "dynamic"]
    assert [f["source_id"] for f in failures] == ["foa"]
    audio, rate = ambio.read_foa(str(tmp_path / "a" / records[1]["audio_file"]))
    assert audio.shape == (4, 160000)


def test_cli_available():
    cli = os.environ.get("AMBIO_CLI")
    if not cli:
        pytest.skip("AMBIO_CLI not set")
    result = subprocess.run([cli, "--help"], capture_output=True, text=True)
    assert result.returncode == 0
    assert "augment" in result.stdout
