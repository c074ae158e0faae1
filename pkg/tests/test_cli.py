import threading

import pytest
from click.testing import CliRunner

from ipils.cli import main

T1_TEXT = "4 2\n6\n2 3 4\n3 5 2\n4 1 5\n5 4 3\n"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def t1_path(tmp_path):
    path = tmp_path / "t1.txt"
    path.write_text(T1_TEXT)
    return str(path)


def test_front_command(runner, t1_path, tmp_path):
    out = tmp_path / "t1.front"
    result = runner.invoke(
        main, ["front", "--instance", t1_path, "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert out.read_text().splitlines() == ["8 6 1100", "4 9 1010"]


def test_experiment_command(runner, t1_path, tmp_path):
    out = tmp_path / "out"
    result = runner.invoke(
        main,
        [
            "experiment",
            "--instance", t1_path,
            "--ref", "4,6",
            "--runs", "3",
            "--evals", "1000",
            "--seed", "0",
            "--weights", "11",
            "--out", str(out),
            "--workers", "1",
        ],
    )
    assert result.exit_code == 0, result.output
    assert "final mean M = 1.0000" in result.output
    assert (out / "summary.txt").exists()


def test_experiment_bad_ref(runner, t1_path, tmp_path):
    result = runner.invoke(
        main,
        ["experiment", "--instance", t1_path, "--ref", "4;6", "--out", str(tmp_path / "o")],
    )
    assert result.exit_code != 0


def test_gen_command(runner, tmp_path):
    out = tmp_path / "r.txt"
    result = runner.invoke(
        main, ["gen", "--n", "8", "--seed", "3", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    from ipils.instance_io import load_instance

    inst = load_instance(str(out))
    assert inst.n == 8


def test_convert_2kp(runner, tmp_path):
    src = tmp_path / "bench.txt"
    src.write_text("2 6\n2 3 4\n3 5 2\n")
    dst = tmp_path / "conv.txt"
    result = runner.invoke(main, ["convert-2kp", str(src), str(dst)])
    assert result.exit_code == 0, result.output
    from ipils.instance_io import load_instance as load

    inst = load(str(dst))
    assert inst.n == 2 and inst.capacity == 6


def test_convert_2kp_bad_layout(runner, tmp_path):
    src = tmp_path / "bench.txt"
    src.write_text("5 6\n1 2 3\n")
    result = runner.invoke(main, ["convert-2kp", str(src), str(tmp_path / "x")])
    assert result.exit_code != 0
    assert "layout" in result.output


def test_session_client_round_trip(tmp_path, t1_path, runner):
    import uvicorn

    from ipils.service import create_app

    config = uvicorn.Config(
        create_app(), host="127.0.0.1", port=8431, log_level="error"
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    import time

    for _ in range(100):
        if server.started:
            break
        time.sleep(0.05)
    base = ["session", "--server", "http://127.0.0.1:8431"]
    try:
        result = runner.invoke(
            main,
            base + ["create", "--instance", t1_path, "--evals", "2000", "--weights", "11"],
        )
        assert result.exit_code == 0, result.output
        import json

        sid = json.loads(result.output)["id"]
        result = runner.invoke(main, base + ["set-ref", sid, "4,6"])
        assert result.exit_code == 0, result.output
        result = runner.invoke(main, base + ["start", sid])
        assert result.exit_code == 0, result.output
        for _ in range(100):
            result = runner.invoke(main, base + ["status", sid])
            if json.loads(result.output)["state"] == "paused":
                break
            time.sleep(0.05)
        result = runner.invoke(main, base + ["accept", sid, "1100"])
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["accepted"]["objectives"] == [8, 6]
    finally:
        server.should_exit = True
        thread.join(timeout=5)
