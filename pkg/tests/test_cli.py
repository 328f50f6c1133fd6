import json

import pytest

from rwlouvain.bench.cli import EXIT_ALGORITHM, EXIT_INPUT, EXIT_OK, main


def test_generate_detect_eval(tmp_path, capsys):
    prefix = str(tmp_path / "pl")
    assert main(["generate", "planted", "--l", "6", "--g", "8", "--p-in", "0.8", "--p-out", "0.02", "--out", prefix]) == 0
    assert (tmp_path / "pl.edges").exists() and (tmp_path / "pl.truth").exists()
    part = str(tmp_path / "pl.part")
    assert main(["detect", prefix + ".edges", "--algo", "louvain", "--out", part]) == EXIT_OK
    capsys.readouterr()
    assert main(["eval", prefix + ".edges", part, "--truth", prefix + ".truth"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "modularity=" in out and "nmi=" in out


def test_detect_prints_partition(capsys):
    assert main(["detect", "karate", "--algo", "rwgp-louvain", "--t", "15", "--seed", "0"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# algorithm=rwgp-louvain")
    assert len(lines) == 35


@pytest.mark.parametrize("algo", ["louvain", "rwgp1", "rwgp2", "newman"])
def test_detect_each_algorithm(algo, capsys):
    assert main(["detect", "karate", "--algo", algo]) == EXIT_OK


def test_gaussian_generate(tmp_path):
    prefix = str(tmp_path / "gs")
    assert main(["generate", "gaussian", "--N", "100", "--m-size", "10", "--p-in", "0.5", "--p-out", "0.02",
                 "--out", prefix]) == EXIT_OK


def test_bench_flags_deterministic(tmp_path):
    args = ["bench", "--generator", "planted", "--l", "5", "--g", "8", "--p-in", "0.7", "--p-out", "0.05",
            "--trials", "3", "--algo", "louvain,rwgp-louvain", "--algo", "newman", "--lazy-alpha", "0.1",
            "--variant", "1"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert "laziness=0.1" in text and "variant=1" in text
    assert len([l for l in text.splitlines() if not l.startswith("#")]) == 1 + 9


def test_bench_spec_file(tmp_path):
    spec = {"experiments": [
        {"id": "pl", "generator": "planted", "params": {"l": 4, "g": 6, "p_in": 0.8, "p_out": 0.05},
         "algorithms": ["louvain"], "trials": 2},
        {"id": "kc", "generator": "file", "params": {"path": "karate"}, "algorithms": ["rwgp-louvain"], "trials": 1},
    ]}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    out = tmp_path / "o.csv"
    assert main(["bench", str(path), "--out", str(out)]) == EXIT_OK
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")][1:]
    assert [r.split(",")[0] for r in rows] == ["pl", "pl", "kc"]


def test_bench_yaml(tmp_path):
    path = tmp_path / "spec.yaml"
    path.write_text("generator: planted\nparams: {l: 3, g: 5, p_in: 0.9, p_out: 0.02}\nalgorithms: [rwgp2]\ntrials: 1\n")
    assert main(["bench", str(path), "--out", str(tmp_path / "o.csv")]) == EXIT_OK


def test_timing_column(tmp_path):
    out = tmp_path / "o.csv"
    main(["bench", "--generator", "file", "--graph", "karate", "--algo", "louvain", "--trials", "1",
          "--timing", "--out", str(out)])
    row = out.read_text().splitlines()[-1].split(",")
    assert float(row[9]) > 0


@pytest.mark.parametrize(
    "argv",
    [
        ["detect", "no-such-file.txt"],
        ["detect", "karate", "--algo", "leiden"],
        ["detect", "karate", "--algo", "louvain", "--algo", "newman"],
        ["detect", "karate", "--lazy-alpha", "1.5"],
        ["bench", "--generator", "planted"],
        ["bench", "--generator", "planted", "--l", "3", "--g", "3", "--p-in", "0.5", "--p-out", "0.1", "--trials", "0"],
        ["generate", "planted", "--p-in", "2", "--p-out", "0", "--out", "x"],
    ],
)
def test_input_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == EXIT_INPUT


def test_bad_spec_file(tmp_path):
    path = tmp_path / "s.yaml"
    path.write_text("- 1\n- 2\n")
    assert main(["bench", str(path)]) == EXIT_INPUT


def test_algorithm_failure_exit_code(tmp_path, monkeypatch):
    from rwlouvain import SpectralError
    from rwlouvain.bench import cli

    def broken(*a, **k):
        raise SpectralError("did not converge", 1e-9)

    monkeypatch.setattr(cli, "detect", broken)
    assert main(["detect", "karate", "--algo", "newman"]) == EXIT_ALGORITHM


def test_bench_algorithm_failure_exit_code(tmp_path, monkeypatch):
    from rwlouvain.bench import harness

    def broken(*a, **k):
        raise RuntimeError("boom")

    monkeypatch.setattr(harness, "detect", broken)
    out = tmp_path / "o.csv"
    assert main(["bench", "--generator", "file", "--graph", "karate", "--trials", "1", "--out", str(out)]) == EXIT_ALGORITHM
    assert out.exists()
