"""Command-line driver.

One scenario file per invocation; artifacts land under ``--out`` as
``report.json`` plus task-specific files (``certificate.json``,
``envelope.csv``, ``counts.csv``).  Exit status: 0 on success, 2 when a
search budget ran out (partial artifacts are still written), 1 on validation
errors, which are printed as machine-readable JSON objects.

Dispatch is single-threaded; SWMIX_THREADS is validated and acts as an upper
cap, which the serial implementation trivially honors.
"""

from __future__ import annotations

import argparse
import json
import os
from pathlib import Path
from typing import Any, Callable, Sequence

from . import demo
from .chaos import distance_envelope, scrambled_verdict, verify_xiong, xiong_witness
from .core import SwitchedSystem, eval_interval, eval_point
from .errors import BudgetExceeded, ScenarioError, SwmixError
from .hitting import WMCertificate, hitting_sets, verify_wm_certificate, wm_certificate
from .language import count_words, enumerate_words
from .search import SearchBudget
from .serialization import (
    budget_to_json,
    budget_from_json,
    dumps,
    envelope_to_csv,
    hitting_report_to_json,
    interval_set_from_json,
    interval_set_to_json,
    scalar_from_json,
    scalar_to_json,
    spread_certificate_from_json,
    spread_certificate_to_json,
    system_from_json,
    system_to_json,
    wm_certificate_from_json,
    wm_certificate_to_json,
    word_from_json,
    word_to_json,
    xiong_witness_from_json,
    xiong_witness_to_json,
)
from .spread import build_qnet, certify_spread, verify_certificate

__all__ = ["main"]

_LIST_CAP = 100_000


def _error_payload(exc: BaseException) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON in {path}: {exc}") from exc


def _write_artifacts(out_dir: Path, artifacts: dict[str, str]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in artifacts.items():
        (out_dir / name).write_text(text, encoding="utf-8")


def _thread_cap() -> int:
    raw = os.environ.get("SWMIX_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ScenarioError(f"SWMIX_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ScenarioError("SWMIX_THREADS must be at least 1")
    return n


def _require(params: dict, key: str) -> Any:
    if key not in params:
        raise ScenarioError(f"task parameter {key!r} is required")
    return params[key]


def _int_param(params: dict, key: str, default: int, minimum: int = 1) -> int:
    v = params.get(key, default)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioError(f"task parameter {key!r} must be an integer")
    if v < minimum:
        raise ScenarioError(f"task parameter {key!r} must be >= {minimum}")
    return v


def _set_pairs(raw: Any) -> list:
    if not isinstance(raw, list) or not raw:
        raise ScenarioError("'pairs' must be a non-empty list of [U, V] pairs")
    pairs = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 2:
            raise ScenarioError("each pair must be a [U, V] list")
        pairs.append((interval_set_from_json(entry[0]), interval_set_from_json(entry[1])))
    return pairs


def _wrap(system: SwitchedSystem, kind: str, payload: dict) -> dict:
    return {"kind": kind, "system": system_to_json(system), "certificate": payload}


TaskResult = tuple[int, dict, dict[str, str]]


def _task_prelang(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    max_len = _int_param(params, "max_len", 10)
    counts = [count_words(system.automaton, n) for n in range(1, max_len + 1)]
    payload: dict[str, Any] = {
        "alphabet": system.automaton.m,
        "max_len": max_len,
        "counts": counts,
    }
    if "list_len" in params:
        n = _int_param(params, "list_len", 1)
        total = count_words(system.automaton, n)
        if total > _LIST_CAP:
            raise ScenarioError(f"refusing to list {total} words at length {n}")
        payload["words"] = [w.as_string() for w in enumerate_words(system.automaton, n)]
    csv = "length,count\n" + "".join(
        f"{n},{c}\n" for n, c in enumerate(counts, start=1)
    )
    return 0, payload, {"counts.csv": csv}


def _task_orbit(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    word = word_from_json(_require(params, "word"))
    payload: dict[str, Any] = {"word": word_to_json(word)}
    if "x" in params:
        value = eval_point(system, word, scalar_from_json(params["x"]))
        payload["value"] = scalar_to_json(value)
    if "source" in params:
        image = eval_interval(system, word, interval_set_from_json(params["source"]))
        payload["image"] = interval_set_to_json(image)
    if "x" not in params and "source" not in params:
        raise ScenarioError("orbit task needs 'x' or 'source'")
    return 0, payload, {}


def _task_hitting(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    U = interval_set_from_json(_require(params, "U"))
    V = interval_set_from_json(_require(params, "V"))
    report = hitting_sets(system, U, V, budget)
    return (0 if report.exhausted else 2), hitting_report_to_json(report), {}


def _task_wm_cert(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    K = interval_set_from_json(_require(params, "K"))
    Q = interval_set_from_json(_require(params, "Q"))
    pairs = _set_pairs(_require(params, "pairs"))
    kind = params.get("kind", "wm1")
    try:
        cert = wm_certificate(system, K, Q, pairs, kind=kind, budget=budget)
    except BudgetExceeded as exc:
        artifacts: dict[str, str] = {}
        payload = {"error": _error_payload(exc)}
        if isinstance(exc.partial, WMCertificate):
            doc = _wrap(system, "wm", wm_certificate_to_json(exc.partial))
            artifacts["certificate.json"] = dumps(doc)
            payload["partial_certificate"] = "certificate.json"
        return 2, payload, artifacts
    cert_json = wm_certificate_to_json(cert)
    payload = {"certificate": cert_json, "verified": verify_wm_certificate(system, cert)}
    return 0, payload, {"certificate.json": dumps(_wrap(system, "wm", cert_json))}


def _task_scrambled(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    x = scalar_from_json(_require(params, "x"))
    y = scalar_from_json(_require(params, "y"))
    kind = params.get("kind", "type2")
    horizon = _int_param(params, "horizon", 10)
    eps_prox = scalar_from_json(params.get("eps_prox", "1/10"))
    eps_div = scalar_from_json(params.get("eps_div", "1/2"))
    k = _int_param(params, "k", 3)
    env = distance_envelope(system, x, y, kind=kind, horizon=horizon, budget=budget)
    payload: dict[str, Any] = {
        "kind": kind,
        "horizon": horizon,
        "lengths_computed": len(env.rows),
        "truncated": env.truncated,
    }
    if env.rows:
        verdict = scrambled_verdict(env, eps_prox, eps_div, k=k)
        payload["verdict"] = {
            "verdict": verdict.verdict,
            "prox_hits": verdict.prox_hits,
            "div_hits": verdict.div_hits,
            "best_min": scalar_to_json(verdict.best_min),
            "best_max": scalar_to_json(verdict.best_max),
            "eps_prox": scalar_to_json(eps_prox),
            "eps_div": scalar_to_json(eps_div),
            "k": k,
        }
    return (2 if env.truncated else 0), payload, {"envelope.csv": envelope_to_csv(env)}


def _task_xiong(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    points = [scalar_from_json(p) for p in _require(params, "points")]
    targets = [scalar_from_json(t) for t in _require(params, "targets")]
    tolerances = [scalar_from_json(t) for t in _require(params, "tolerances")]
    kind = params.get("kind", "type2")
    wit = xiong_witness(system, points, targets, kind=kind, tolerances=tolerances, budget=budget)
    wit_json = xiong_witness_to_json(wit)
    payload = {
        "witness": wit_json,
        "verified": wit.complete and verify_xiong(system, wit),
    }
    artifacts = {"certificate.json": dumps(_wrap(system, "xiong", wit_json))}
    return (0 if wit.complete else 2), payload, artifacts


def _task_spread(
    system: SwitchedSystem, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    seeds = [interval_set_from_json(s) for s in _require(params, "seeds")]
    K = interval_set_from_json(_require(params, "K"))
    Q = interval_set_from_json(_require(params, "Q"))
    eps = scalar_from_json(_require(params, "eps"))
    radius = scalar_from_json(params["net_radius"]) if "net_radius" in params else eps / 2
    max_table = _int_param(params, "max_table", 4096)
    net = build_qnet(Q, radius)
    cert = certify_spread(system, seeds, K, Q, eps, net, budget, max_table=max_table)
    cert_json = spread_certificate_to_json(cert)
    payload = {
        "rows": len(cert.rows),
        "net_size": len(net.centers),
        "delta": scalar_to_json(cert.delta),
        "verified": verify_certificate(system, cert),
    }
    return 0, payload, {"certificate.json": dumps(_wrap(system, "spread", cert_json))}


def _task_tent_demo(
    system: SwitchedSystem | None, params: dict, budget: SearchBudget, seed: int
) -> TaskResult:
    report = demo.tent_demo(
        samples=_int_param(params, "samples", 1000),
        steps=_int_param(params, "steps", 20),
        wm_trials=_int_param(params, "wm_trials", 50),
        wm_horizon=_int_param(params, "wm_horizon", 25),
        envelope_pairs=_int_param(params, "envelope_pairs", 10),
        seed=seed,
    )
    return (0 if report["ok"] else 1), report, {}


_TASKS: dict[str, Callable[..., TaskResult]] = {
    "prelang": _task_prelang,
    "orbit": _task_orbit,
    "hitting": _task_hitting,
    "wm-cert": _task_wm_cert,
    "scrambled": _task_scrambled,
    "xiong": _task_xiong,
    "spread": _task_spread,
    "tent-demo": _task_tent_demo,
}


def _dispatch(scenario: Any) -> TaskResult:
    if not isinstance(scenario, dict):
        raise ScenarioError("scenario must be a JSON object")
    task = scenario.get("task")
    if task not in _TASKS:
        raise ScenarioError(f"unknown task {task!r}")
    params = scenario.get("params", {})
    if not isinstance(params, dict):
        raise ScenarioError("'params' must be an object")
    seed = scenario.get("seed", demo.DEFAULT_SEED)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ScenarioError("'seed' must be an integer")
    budget = budget_from_json(scenario.get("budget"))
    if task == "tent-demo":
        system = None
    else:
        if "system" not in scenario:
            raise ScenarioError(f"task {task!r} requires a 'system'")
        system = system_from_json(scenario["system"])
    code, payload, artifacts = _TASKS[task](system, params, budget, seed)
    report = {"task": task, "seed": seed, "budget": budget_to_json(budget)}
    report.update(payload)
    return code, report, artifacts


def _cmd_run(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    try:
        scenario = _load_json(args.scenario)
        code, report, artifacts = _dispatch(scenario)
    except BudgetExceeded as exc:
        code, report, artifacts = 2, {"error": _error_payload(exc)}, {}
    except (SwmixError, ValueError, OSError) as exc:
        print(dumps({"error": _error_payload(exc)}), end="")
        return 1
    try:
        _write_artifacts(out_dir, {"report.json": dumps(report), **artifacts})
    except OSError as exc:
        print(dumps({"error": _error_payload(exc)}), end="")
        return 1
    print(dumps(report), end="")
    return code


def _cmd_tent_demo(args: argparse.Namespace) -> int:
    report = demo.tent_demo(
        samples=args.samples,
        wm_trials=args.trials,
        wm_horizon=args.horizon,
        seed=args.seed,
    )
    try:
        _write_artifacts(Path(args.out), {"report.json": dumps(report)})
    except OSError as exc:
        print(dumps({"error": _error_payload(exc)}), end="")
        return 1
    print(dumps(report), end="")
    return 0 if report["ok"] else 1


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        doc = _load_json(args.certificate)
        if not isinstance(doc, dict):
            raise ScenarioError("certificate file must be a JSON object")
        kind = doc.get("kind")
        system = system_from_json(doc.get("system"))
        payload = doc.get("certificate")
        if kind == "wm":
            ok = verify_wm_certificate(system, wm_certificate_from_json(payload))
        elif kind == "spread":
            ok = verify_certificate(system, spread_certificate_from_json(payload))
        elif kind == "xiong":
            ok = verify_xiong(system, xiong_witness_from_json(payload))
        else:
            raise ScenarioError(f"unknown certificate kind {kind!r}")
    except (SwmixError, ValueError, OSError) as exc:
        print(dumps({"error": _error_payload(exc)}), end="")
        return 1
    print(dumps({"kind": kind, "verified": ok}), end="")
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swmix",
        description="Certificate-producing analyses of switched affine systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("scenario", help="path to scenario JSON")
    p_run.add_argument("--out", default=".", help="artifact directory")
    p_run.set_defaults(func=_cmd_run)

    p_demo = sub.add_parser("tent-demo", help="run the built-in tent example")
    p_demo.add_argument("--samples", type=int, default=1000)
    p_demo.add_argument("--horizon", type=int, default=25)
    p_demo.add_argument("--trials", type=int, default=50)
    p_demo.add_argument("--seed", type=int, default=demo.DEFAULT_SEED)
    p_demo.add_argument("--out", default=".", help="artifact directory")
    p_demo.set_defaults(func=_cmd_tent_demo)

    p_verify = sub.add_parser("verify", help="re-check an emitted certificate")
    p_verify.add_argument("certificate", help="path to certificate JSON")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _thread_cap()
    except ScenarioError as exc:
        print(dumps({"error": _error_payload(exc)}), end="")
        return 1
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
