"""Batch command-line front end.

Runs either a single subcommand or a JSON job config with a task list, and
emits one machine-readable report per task.  All randomness is derived from
the seed, report order matches task order, and identical configs produce
byte-identical output.

Exit codes: 0 all tasks (including verifications) passed, 1 a verification
reported failure, 2 configuration error, 3 computation error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from .errors import ConfigError, TatecharError
from .localring import make_ring
from .curve import p_torsion_level, torsion_basis
from .alpha import alpha_n, cartier_pairing_local, rho_unipotent
from .vext import theta
from .presets import curve_from_spec, preset_names
from .verify import run_all

VERSION = "tatechar-0.1.0"


def _task_ring(curve_spec, params, n, seed):
    ring = make_ring(int(params.get("p", 5)), params.get("kind", "base"),
                     params.get("modulus", [0, 1]), int(params.get("m", n)))
    return {"ring": ring.to_dict()}


def _task_curve(curve_spec, params, n, seed):
    curve = curve_from_spec(curve_spec, n, seed=seed)
    return {
        "p": curve.ring.p,
        "a": curve.a.to_lists(),
        "b": curve.b.to_lists(),
        "trace": curve.base_trace(),
        "ordinary": curve.is_ordinary(),
        "group_orders": {str(f): curve.group_order(f) for f in (1, 2, 3, 6)},
    }


def _basis_for(curve, params, seed):
    ell = int(params.get("ell", 3))
    k = int(params.get("k", 2))
    v1, v2, cf = torsion_basis(curve, ell, k)
    return v1, v2, cf


def _task_torsion(curve_spec, params, n, seed):
    curve = curve_from_spec(curve_spec, n, seed=seed)
    if params.get("p_part"):
        nu = int(params.get("nu", 1))
        v_et, v_fm = p_torsion_level(curve, nu)
        return {
            "etale": {"level": v_et.level, "tag": v_et.tower_tag,
                      "ring": v_et.point.curve.ring.to_dict(),
                      "point": v_et.point.to_dict()},
            "formal": {"level": v_fm.level, "tag": v_fm.tower_tag,
                       "ring": v_fm.point.curve.ring.to_dict(),
                       "point": v_fm.point.to_dict()},
        }
    v1, v2, cf = _basis_for(curve, params, seed)
    return {
        "level": v1.level,
        "extension_degree": cf.ring.f,
        "generators": [
            {"tag": v.tower_tag, "point": v.point.to_dict()} for v in (v1, v2)
        ],
    }


def _task_pairing(curve_spec, params, n, seed):
    import random
    curve = curve_from_spec(curve_spec, n, seed=seed)
    v1, v2, cf = _basis_for(curve, params, seed)
    rng = random.Random(seed ^ 0x51)
    val = cartier_pairing_local(v1.point, v2.point, v1.level, rng=rng)
    return {"level": v1.level, "value": val.to_lists(),
            "ring": val.ring.to_dict()}


def _resolve_point(curve, cf, v1, v2, spec):
    kind = spec.get("kind", "torsion")
    if kind == "torsion":
        i, j = (int(c) for c in spec.get("coeffs", [1, 0]))
        return cf.add(cf.scalar(i, v1.point), cf.scalar(j, v2.point))
    if kind == "affine":
        return cf._pull(curve.point(int(spec["x"]), int(spec["y"])))
    if kind == "formal":
        return cf._pull(curve.formal_point(curve.ring.from_int(int(spec["z"]))))
    raise ConfigError(f"unknown point kind {kind!r}")


def _task_alpha(curve_spec, params, n, seed):
    import random
    curve = curve_from_spec(curve_spec, n, seed=seed)
    v1, v2, cf = _basis_for(curve, params, seed)
    pt = _resolve_point(curve, cf, v1, v2, params.get("point", {}))
    rng = random.Random(seed ^ 0x52)
    res = alpha_n(pt, int(params.get("n", n)), [v1, v2], rng=rng)
    return {
        "order": {"prime_to_p": res.order_data[0], "p_exponent": res.order_data[1]},
        "character": res.character.to_dict(),
    }


def _task_theta(curve_spec, params, n, seed):
    import random
    curve = curve_from_spec(curve_spec, n, seed=seed)
    nu = int(params.get("nu", 1))
    v_et, v_fm = p_torsion_level(curve, nu)
    rng = random.Random(seed ^ 0x53)
    th = theta(v_et, int(params.get("n", n)), rng=rng)
    out = {"etale": th.to_dict()}
    if params.get("formal"):
        th_f = theta(v_fm, int(params.get("n", n)), rng=rng)
        out["formal"] = th_f.to_dict()
    return out


def _task_rho(curve_spec, params, n, seed):
    import random
    curve = curve_from_spec(curve_spec, n, seed=seed)
    nu = int(params.get("nu", 1))
    v_et, _ = p_torsion_level(curve, nu)
    ring = v_et.point.curve.ring
    c = ring.from_int(int(params.get("c", 1)))
    rng = random.Random(seed ^ 0x54)
    rep = rho_unipotent(c, v_et, int(params.get("n", n)), rng=rng)
    mat = rep.matrix()
    return {"c": c.to_lists(), "beta": rep.beta.to_lists(),
            "matrix": [[e.to_lists() for e in row] for row in mat],
            "n": rep.n}


def _task_verify(curve_spec, params, n, seed):
    names = params.get("checks")
    if names == "all":
        names = None
    reports = run_all(seed, names=names)
    return {"reports": [r.to_dict() for r in reports],
            "all_passed": all(r.passed for r in reports)}


TASKS = {
    "ring": _task_ring,
    "curve": _task_curve,
    "torsion": _task_torsion,
    "pairing": _task_pairing,
    "alpha": _task_alpha,
    "theta": _task_theta,
    "rho": _task_rho,
    "verify": _task_verify,
}


def run_config(config: dict) -> tuple:
    """Execute a job config; returns (exit_code, output_object)."""
    try:
        seed = int(config.get("seed", 0))
        n = int(config.get("precision", 2))
        curve_spec = config.get("curve", "demo")
        fmt = config.get("output", "json")
        tasks = config.get("tasks", [])
        if fmt not in ("json", "csv"):
            raise ConfigError(f"unknown output format {fmt!r}")
        if not isinstance(tasks, list) or not tasks:
            raise ConfigError("config must list at least one task")
        for t in tasks:
            if not isinstance(t, dict) or t.get("task") not in TASKS:
                raise ConfigError(f"unknown task {t!r}")
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(str(exc)) from exc

    reports = []
    all_ok = True
    for t in tasks:
        name = t["task"]
        params = {k: v for k, v in t.items() if k != "task"}
        try:
            body = TASKS[name](curve_spec, params, n, seed)
        except TatecharError as exc:
            raise type(exc)(f"task {name!r} failed: {exc}") from exc
        if name == "verify":
            all_ok = all_ok and body.get("all_passed", False)
        reports.append({"task": name, "result": body})
    out = {"version": VERSION, "config_echo": config, "reports": reports}
    return (0 if all_ok else 1), out


def _csv_escape(s: str) -> str:
    if any(ch in s for ch in ",\"\n"):
        return '"' + s.replace('"', '""') + '"'
    return s


def render(out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out, sort_keys=True, separators=(",", ":")) + "\n"
    buf = io.StringIO()
    buf.write("task,check_name,curve_id,precision,loss,pass,detail\n")
    for rep in out["reports"]:
        task = rep["task"]
        body = rep["result"]
        rows = body.get("reports")
        if rows is None:
            detail = json.dumps(body, sort_keys=True, separators=(",", ":"))
            buf.write(f"{task},,,,,,{_csv_escape(detail)}\n")
            continue
        for r in rows:
            detail = json.dumps({"inputs": r["inputs"], "expected": r["expected"],
                                 "got": r["got"]}, sort_keys=True,
                                separators=(",", ":"))
            buf.write(",".join([
                task, r["check_name"], r["curve_id"], str(r["precision"]),
                str(r["loss"]), str(r["pass"]).lower(), _csv_escape(detail),
            ]) + "\n")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tatechar",
        description="p-adic character maps of elliptic-curve Tate modules")
    ap.add_argument("--config", help="JSON job config path")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--precision", type=int, default=2)
    ap.add_argument("--output", choices=("json", "csv"), default="json")
    ap.add_argument("--curve", default="demo",
                    help="preset name (%s) or inline JSON" % "/".join(preset_names()))
    sub = ap.add_subparsers(dest="command")
    for name in TASKS:
        sp = sub.add_parser(name)
        sp.add_argument("params", nargs="?", default="{}",
                        help="task parameters as inline JSON")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.config:
            with open(args.config, "r", encoding="utf-8") as fh:
                config = json.load(fh)
        else:
            if not args.command:
                raise ConfigError("either --config or a subcommand is required")
            try:
                params = json.loads(args.params)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"task parameters are not valid JSON: {exc}")
            curve = args.curve
            if curve.strip().startswith("{"):
                curve = json.loads(curve)
            config = {
                "curve": curve,
                "precision": args.precision,
                "seed": args.seed,
                "output": args.output,
                "tasks": [{"task": args.command, **params}],
            }
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2

    try:
        code, out = run_config(config)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except TatecharError as exc:
        sys.stderr.write(f"computation error: {exc}\n")
        return 3
    sys.stdout.write(render(out, config.get("output", "json")))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
