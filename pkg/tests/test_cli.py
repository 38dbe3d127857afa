import json
import subprocess
import sys


def run_cli(*args, config=None, tmp_path=None):
    argv = [sys.executable, "-m", "tatechar.cli"]
    if config is not None:
        path = tmp_path / "job.json"
        path.write_text(json.dumps(config))
        argv += ["--config", str(path)]
    argv += list(args)
    return subprocess.run(argv, capture_output=True, text=True)


def test_curve_subcommand():
    r = run_cli("curve")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    body = out["reports"][0]["result"]
    assert body["trace"] == -3 and body["ordinary"] is True
    assert body["group_orders"]["1"] == 9


def test_ring_subcommand():
    r = run_cli("ring", '{"p": 5, "kind": "unramified", "modulus": [2, 1, 1], "m": 2}')
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["reports"][0]["result"]["ring"]["kind"] == "unramified"


def test_alpha_subcommand():
    r = run_cli("--precision", "2",
                "alpha", '{"point": {"kind": "torsion", "coeffs": [1, 0]}, "n": 2}')
    assert r.returncode == 0
    out = json.loads(r.stdout)
    body = out["reports"][0]["result"]
    assert body["order"] == {"prime_to_p": 9, "p_exponent": 0}
    assert body["character"]["precision"] == 2


def test_alpha_subcommand_matches_library():
    """The CLI character record equals the direct library computation."""
    import random
    from tatechar.curve import torsion_basis
    from tatechar.alpha import alpha_n
    from tatechar.presets import curve_from_spec

    r = run_cli("--precision", "2", "--seed", "5",
                "alpha", '{"point": {"kind": "torsion", "coeffs": [2, 1]}, "n": 2}')
    assert r.returncode == 0
    cli_char = json.loads(r.stdout)["reports"][0]["result"]["character"]

    curve = curve_from_spec("demo", 2, seed=5)
    v1, v2, cf = torsion_basis(curve, 3, 2)
    pt = cf.add(cf.scalar(2, v1.point), cf.scalar(1, v2.point))
    res = alpha_n(pt, 2, [v1, v2], rng=random.Random(5 ^ 0x52))
    assert cli_char == res.character.to_dict()


def test_theta_and_rho_subcommands():
    r = run_cli("theta", '{"nu": 1}')
    assert r.returncode == 0
    body = json.loads(r.stdout)["reports"][0]["result"]
    assert body["etale"]["level"] == 5
    r = run_cli("rho", '{"nu": 1, "c": 3, "n": 2}')
    assert r.returncode == 0
    body = json.loads(r.stdout)["reports"][0]["result"]
    assert all(all(v == "0" for v in row) for row in body["matrix"][1][0])
    assert body["matrix"][0][0][0][0] == "1"


def test_config_run_and_reproducibility(tmp_path):
    config = {
        "curve": "demo", "precision": 2, "seed": 11, "output": "json",
        "tasks": [
            {"task": "torsion", "ell": 3, "k": 1},
            {"task": "verify", "checks": ["log_exp"]},
        ],
    }
    r1 = run_cli(config=config, tmp_path=tmp_path)
    r2 = run_cli(config=config, tmp_path=tmp_path)
    assert r1.returncode == 0 and r2.returncode == 0
    assert r1.stdout == r2.stdout            # byte-identical
    out = json.loads(r1.stdout)
    assert out["reports"][1]["result"]["all_passed"] is True


def test_csv_output(tmp_path):
    config = {
        "curve": "demo", "precision": 2, "seed": 0, "output": "csv",
        "tasks": [{"task": "verify", "checks": ["log_exp"]}],
    }
    r = run_cli(config=config, tmp_path=tmp_path)
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("task,check_name,curve_id")
    assert any("log_exp_oracle" in ln and "true" in ln for ln in lines[1:])


def test_exit_codes(tmp_path):
    r = run_cli(config={"tasks": [{"task": "bogus"}]}, tmp_path=tmp_path)
    assert r.returncode == 2
    r = run_cli("--config", "/nonexistent/job.json")
    assert r.returncode == 2
    # supersingular curve cannot produce p-torsion data: computation error
    r = run_cli("--curve", '{"p": 5, "a": 0, "b": 1}', "theta", '{"nu": 1}')
    assert r.returncode == 3
    assert "ordinary" in r.stderr
