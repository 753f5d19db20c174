import subprocess
import sys

import numpy as np
import pytest

from chuacrypt.cli import main
from chuacrypt.keyfile import parse_key_file, write_key_file
from chuacrypt.keystream import KeyConfig, generate_keystream, log_error_for_key
from chuacrypt.pgm import sample_image_path

from conftest import doubling_map_series


@pytest.fixture
def keyfile(tmp_path):
    p = tmp_path / "paper.key"
    assert main(["keygen", "--out", str(p)]) == 0
    return p


@pytest.fixture
def plain(tmp_path):
    p = tmp_path / "plain.pgm"
    p.write_bytes(sample_image_path().read_bytes())
    return p


def read_report(path):
    lines = path.read_text().splitlines()
    assert lines[0] == "metric,value"
    return dict(l.split(",") for l in lines[1:])


def test_keygen_defaults(keyfile):
    assert parse_key_file(keyfile.read_text()) == KeyConfig()


def test_keygen_overrides(tmp_path):
    p = tmp_path / "k.key"
    assert main(["keygen", "--out", str(p), "--v-c1-0", "-0.4", "--r", "1700", "--transient", "50"]) == 0
    key = parse_key_file(p.read_text())
    assert key.initial.v_c1 == -0.4 and key.params.r == 1700.0 and key.transient == 50
    assert key.params.c1 == 10e-9


def test_keygen_invalid_value_is_usage_error(tmp_path):
    assert main(["keygen", "--out", str(tmp_path / "k"), "--c1", "-1"]) == 1


def test_encrypt_decrypt_roundtrip(tmp_path, keyfile, plain):
    c, d = tmp_path / "c.pgm", tmp_path / "d.pgm"
    assert main(["encrypt", "--key", str(keyfile), "--in", str(plain), "--out", str(c)]) == 0
    assert main(["decrypt", "--key", str(keyfile), "--in", str(c), "--out", str(d)]) == 0
    assert d.read_bytes() == plain.read_bytes()
    assert c.read_bytes() != plain.read_bytes()
    assert c.read_bytes().startswith(b"P5\n256 256\n255\n")


def test_analyze_cipher(tmp_path, keyfile, plain):
    c, r = tmp_path / "c.pgm", tmp_path / "r.csv"
    main(["encrypt", "--key", str(keyfile), "--in", str(plain), "--out", str(c)])
    assert main(["analyze", "--in", str(c), "--out", str(r)]) == 0
    rep = read_report(r)
    assert float(rep["entropy_bits"]) >= 7.98
    assert sum(int(rep[f"hist_{i}"]) for i in range(256)) == 65536
    assert set(rep) >= {"corr_horizontal", "corr_vertical", "corr_diagonal", "chi_square"}


def test_cli_deterministic(tmp_path, keyfile, plain):
    outs = []
    for i in range(2):
        c = tmp_path / f"c{i}.pgm"
        main(["encrypt", "--key", str(keyfile), "--in", str(plain), "--out", str(c)])
        outs.append(c.read_bytes())
    assert outs[0] == outs[1]


def test_wrong_key_last_bit(tmp_path, keyfile, plain):
    text = keyfile.read_text()
    assert "v_c1_0 = BFE0000000000000" in text
    wrong = tmp_path / "wrong.key"
    wrong.write_text(text.replace("v_c1_0 = BFE0000000000000", "v_c1_0 = BFE0000000000001"))
    c, d, r = tmp_path / "c.pgm", tmp_path / "d.pgm", tmp_path / "r.csv"
    main(["encrypt", "--key", str(keyfile), "--in", str(plain), "--out", str(c)])
    assert main(["decrypt", "--key", str(wrong), "--in", str(c), "--out", str(d)]) == 0
    main(["analyze", "--in", str(d), "--out", str(r)])
    assert float(read_report(r)["entropy_bits"]) >= 7.9


def test_keystream_bytes(tmp_path, keyfile):
    out, le = tmp_path / "ks.bin", tmp_path / "le.csv"
    assert main(["keystream", "--key", str(keyfile), "--len", "100", "--out", str(out),
                 "--log-error", str(le)]) == 0
    assert out.read_bytes() == generate_keystream(KeyConfig(), 100)
    rows = le.read_text().splitlines()
    assert rows[0] == "log10_error" and len(rows) == 101
    assert [float(v) for v in rows[1:]] == log_error_for_key(KeyConfig(), 100)


def test_keystream_bad_len(tmp_path, keyfile):
    assert main(["keystream", "--key", str(keyfile), "--len", "0", "--out", str(tmp_path / "x")]) == 1


def test_lyapunov_cli(tmp_path):
    series = tmp_path / "s.csv"
    series.write_text("x\n" + "\n".join(repr(v) for v in doubling_map_series(5000).tolist()) + "\n")
    out = tmp_path / "curve.csv"
    rc = main(["lyapunov", "--in", str(series), "--out", str(out), "--epsilon", "1e-3",
               "--max-dn", "10", "--fit", "1", "6", "--theiler", "10"])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "delta_n,S"
    assert [int(l.split(",")[0]) for l in lines[1:-1]] == list(range(1, 11))
    name, lam = lines[-1].split(",")
    assert name == "lambda" and abs(float(lam) - np.log(2)) < 0.1


def test_lyapunov_drops_non_finite(tmp_path):
    vals = doubling_map_series(1000).tolist()
    series = tmp_path / "s.csv"
    series.write_text("\n".join(repr(v) for v in vals[:10] + [float("-inf")] + vals[10:]) + "\n")
    out = tmp_path / "c.csv"
    assert main(["lyapunov", "--in", str(series), "--out", str(out), "--epsilon", "0.01"]) == 0


def test_lyapunov_bad_fit_is_usage_error(tmp_path):
    series = tmp_path / "s.csv"
    series.write_text("\n".join(str(v) for v in range(100)))
    assert main(["lyapunov", "--in", str(series), "--out", str(tmp_path / "o"), "--fit", "5", "2"]) == 1


@pytest.mark.parametrize("argv", [[], ["bogus"], ["encrypt", "--key", "k"], ["keystream", "--len", "x"]])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_format_errors(tmp_path, keyfile):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P2\n1 1\n255\n0")
    assert main(["encrypt", "--key", str(keyfile), "--in", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert main(["encrypt", "--key", str(keyfile), "--in", str(tmp_path / "nope"), "--out", "o"]) == 2
    badkey = tmp_path / "bad.key"
    badkey.write_text("c1 = 12\n")
    good = tmp_path / "g.pgm"
    good.write_bytes(b"P5\n1 1\n255\n\x00")
    assert main(["encrypt", "--key", str(badkey), "--in", str(good), "--out", str(tmp_path / "o")]) == 2


def test_degenerate_key_exit_code(tmp_path):
    key, img = tmp_path / "zero.key", tmp_path / "i.pgm"
    main(["keygen", "--out", str(key), "--v-c1-0", "0", "--v-c2-0", "0", "--i-l-0", "0"])
    img.write_bytes(b"P5\n2 2\n255\n\x00\x01\x02\x03")
    assert main(["encrypt", "--key", str(key), "--in", str(img), "--out", str(tmp_path / "o")]) == 3


def test_non_finite_exit_code(tmp_path):
    key, img = tmp_path / "big.key", tmp_path / "i.pgm"
    main(["keygen", "--out", str(key), "--h", "1.0", "--transient", "100"])
    img.write_bytes(b"P5\n1 1\n255\n\x00")
    assert main(["encrypt", "--key", str(key), "--in", str(img), "--out", str(tmp_path / "o")]) == 3


def test_module_entry_point(tmp_path):
    p = tmp_path / "k.key"
    r = subprocess.run([sys.executable, "-m", "chuacrypt", "keygen", "--out", str(p)],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert p.read_text() == write_key_file(KeyConfig())
