"""Command-line interface: ``uwk <command> [options]``.

Every command prints one JSON document {"command", "inputs", "result"} (or a
short text rendering with --text).  Exit codes: 0 success, 2 precondition or
input failure, 1 internal error.  ``s`` is a bitstring with the leftmost
character for j = 0; characters are comma-separated flat integer lists.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .extgraph import RegionError
from .fingroups import CentralCharacterError, GuardError, check_group_guard
from .lattice import DoubleCharacter, DoubleWeylElement, LatticeError, UnitaryCharacter, WeylElement
from .lifts import lift_data
from .polysym import RewriteError, load_table_file, symmetry_rewrite
from .shapes import component_match, intersection, labels_for, shape_of
from .suites import SUITES, run_suite
from .types import (
    AdmissibleWord,
    DoubleTypePresentation,
    find_equivalence,
    jh_of_type,
    theta,
    type_for_shape,
    types_containing_weight,
)
from .weights import PreconditionError, TameParam, canonicalize, jh_factors, predicted_weights_by_omega

INPUT_ERRORS = (PreconditionError, LatticeError, RegionError, GuardError, CentralCharacterError,
                RewriteError, ValueError)

DEFAULTS = {"groups": (3, 1), "graph": (7, 1), "types": (7, 1), "lifts": (7, 1), "ideals": (7, 1)}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in str(text).replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def parse_unitary(text: str, f: int, name: str) -> UnitaryCharacter:
    values = parse_ints(text)
    if len(values) != 2 * f:
        raise UsageError(f"--{name} needs {2 * f} integers for f={f}, got {len(values)}")
    return UnitaryCharacter.from_flat(values)


def parse_double(text: str, f: int, name: str) -> DoubleCharacter:
    values = parse_ints(text)
    if len(values) != 4 * f:
        raise UsageError(f"--{name} needs {4 * f} integers for f={f}, got {len(values)}")
    return DoubleCharacter.from_flat(values)


def parse_weyl(text: str, n: int, name: str) -> WeylElement:
    w = WeylElement.from_string(str(text))
    if len(w) != n:
        raise UsageError(f"--{name} needs {n} bits, got {len(w)}")
    return w


def parse_word(text: str, f: int) -> AdmissibleWord:
    letters = [x for x in str(text).replace(" ", "").split(",") if x]
    if len(letters) == f:
        return AdmissibleWord.symmetric(letters)
    if len(letters) == 2 * f:
        return AdmissibleWord(tuple(letters))
    raise UsageError(f"--shape needs {f} or {2 * f} letters, got {len(letters)}")


def read_config(path: str) -> dict[str, str]:
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line without '=': {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


class Job:
    """Flags merged over an optional key=value config file."""

    def __init__(self, ns: argparse.Namespace):
        self.ns = ns
        self.config = read_config(ns.config) if getattr(ns, "config", None) else {}

    def get(self, key: str, default=None, required: bool = False):
        value = getattr(self.ns, key, None)
        if value is None:
            value = self.config.get(key)
        if value is None:
            if required:
                raise UsageError(f"--{key.replace('_', '-')} is required")
            return default
        return value

    def int(self, key: str, default=None, required: bool = True) -> int:
        value = self.get(key, default, required and default is None)
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"--{key} must be an integer") from exc

    def pf(self):
        return self.int("p"), self.int("f")

    def param(self, mu_key: str = "mu") -> TameParam:
        p, f = self.pf()
        s = parse_weyl(self.get("s", required=True), f, "s")
        return TameParam(s, parse_unitary(self.get(mu_key, required=True), f, mu_key), p, f)


# ---------------------------------------------------------------------------
# JSON helpers


def weight_json(sigma) -> dict:
    return {"label": sigma.label(), **sigma.to_json()}


def omega_key(om) -> str:
    return ",".join(str(x) for x in om)


def maybe_plot(job: Job, param: TameParam, stem: str) -> list[str]:
    plot_dir = job.get("plot_dir")
    if not plot_dir:
        return []
    from .plots import plot_extension_graph

    return [str(plot_extension_graph(param, Path(plot_dir) / f"{stem}.png"))]


# ---------------------------------------------------------------------------
# commands


def cmd_weights(job: Job):
    param = job.param()
    by_omega = predicted_weights_by_omega(param)
    result = {
        "weights": [weight_json(w) for w in sorted(set(by_omega.values()), key=lambda x: x.sort_key())],
        "by_omega": {omega_key(om): by_omega[om].label() for om in sorted(by_omega)},
    }
    figures = maybe_plot(job, param, "weights")
    if figures:
        result["figures"] = figures
    return {"p": param.p, "f": param.f, "s": param.s.to_string(), "mu": param.mu.flat()}, result


def cmd_jh(job: Job):
    p, f = job.pf()
    mu = parse_unitary(job.get("mu", required=True), f, "mu")
    s = parse_weyl(job.get("s", required=True), f, "s")
    w = parse_weyl(job.get("w", "0" * f), f, "w")
    nu = parse_unitary(job.get("nu", ",".join(["1,0"] * f)), f, "nu")
    res = jh_factors(mu, s, w, nu, p)
    inputs = {"p": p, "f": f, "s": s.to_string(), "w": w.to_string(), "mu": mu.flat(), "nu": nu.flat()}
    return inputs, {
        "weights": [weight_json(x) for x in res.weights],
        "by_omega": {omega_key(om): res.by_omega[om].label() for om in sorted(res.by_omega)},
        "type": res.type.to_json(),
    }


def cmd_types(job: Job):
    p, f = job.pf()
    mu = parse_unitary(job.get("mu", required=True), f, "mu")
    sigma = canonicalize(mu, p)
    ts = types_containing_weight(sigma, p, f)
    out = []
    for t in ts:
        out.append({"type": t.to_json(), "jh": [x.label() for x in jh_of_type(t)]})
    return {"p": p, "f": f, "mu": mu.flat()}, {"weight": weight_json(sigma), "types": out}


def cmd_theta(job: Job):
    param = job.param()
    return ({"p": param.p, "f": param.f, "s": param.s.to_string(), "mu": param.mu.flat()},
            theta(param).to_json())


def _type_from_job(job: Job, prefix: str, f: int, p: int) -> DoubleTypePresentation:
    s = DoubleWeylElement(parse_weyl(job.get(f"{prefix}_s", required=True), 2 * f, f"{prefix}-s").bits)
    mu = parse_double(job.get(f"{prefix}_mu", required=True), f, f"{prefix}-mu")
    return DoubleTypePresentation(s, mu, p)


def _shape_result(param, w, t) -> dict:
    inter = intersection(param, w) if w is not None and w.is_symmetric() else {}
    return {
        "shape": None if w is None else w.to_json(),
        "type": t.to_json(),
        "intersection": {omega_key(om): s.label() for om, s in sorted(inter.items())},
        "labels": {omega_key(om): list(labels_for(w, om).values) for om in sorted(inter)},
    }


def cmd_shape(job: Job):
    param = job.param()
    inputs = {"p": param.p, "f": param.f, "s": param.s.to_string(), "mu": param.mu.flat()}
    if job.get("shape"):
        w = parse_word(job.get("shape"), param.f)
        inputs["shape"] = w.to_json()
        return inputs, _shape_result(param, w, type_for_shape(param, w))
    t = _type_from_job(job, "type", param.f, param.p)
    inputs["type"] = t.to_json()
    return inputs, _shape_result(param, shape_of(param, t), t)


def cmd_match(job: Job):
    param = job.param()
    w = parse_word(job.get("shape", required=True), param.f)
    omega = tuple(parse_ints(job.get("omega", required=True)))
    by_omega = predicted_weights_by_omega(param)
    if omega not in by_omega:
        raise UsageError(f"--omega must be a 0/1 vector of length {param.f}")
    sigma = by_omega[omega]
    label = component_match(param, w, sigma)
    inputs = {"p": param.p, "f": param.f, "s": param.s.to_string(), "mu": param.mu.flat(),
              "shape": w.to_json(), "omega": list(omega)}
    return inputs, {"shape": w.to_json(), "weight": sigma.label(), **label.to_json()}


def cmd_lift(job: Job):
    param = job.param("nu")
    mu = parse_unitary(job.get("mu", required=True), param.f, "mu")
    data = lift_data(param, mu)
    inputs = {"p": param.p, "f": param.f, "s": param.s.to_string(), "nu": param.mu.flat(), "mu": mu.flat()}
    return inputs, data.to_json()


def cmd_equiv(job: Job):
    p, f = job.pf()
    t1 = _type_from_job(job, "t1", f, p)
    t2 = _type_from_job(job, "t2", f, p)
    found = find_equivalence(t1, t2)
    result = {"equivalent": found is not None}
    if found is not None:
        s, nu = found
        result["witness"] = {"s": s.to_string(), "nu": [list(x) for x in nu]}
    return {"p": p, "f": f, "t1": t1.to_json(), "t2": t2.to_json()}, result


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("UWK_THREADS", "1")))
    except ValueError:
        return 1


def _suite_task(args):
    name, p, f = args
    return name, [(r.name, r.passed, r.detail) for r in run_suite(name, p, f)]


def cmd_verify(job: Job):
    suite = job.get("suite", "all")
    names = list(SUITES) if suite == "all" else [suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    tasks = []
    for n in names:
        dp, df = DEFAULTS[n]
        tasks.append((n, job.int("p", dp), job.int("f", df)))
    for n, p, f in tasks:
        if n == "groups":
            check_group_guard(p, f)
    workers = min(_threads(), len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_suite_task, tasks))
    else:
        results = [_suite_task(t) for t in tasks]
    checks = []
    for name, rows in results:
        for check, passed, detail in rows:
            checks.append({"suite": name, "check": check, "passed": passed, "detail": detail})
    table_file = job.get("table_file")
    if table_file:
        ideal = load_table_file(table_file)
        ok = all(symmetry_rewrite(ideal, g).is_zero() for g in ideal)
        checks.append({"suite": "ideals", "check": f"rewriting {Path(table_file).name}", "passed": ok,
                       "detail": f"{len(ideal)} generators"})
    passed = sum(c["passed"] for c in checks)
    result = {"checks": checks, "summary": {"total": len(checks), "passed": passed,
                                            "failed": len(checks) - passed}}
    inputs = {"suite": suite, "runs": [{"suite": n, "p": p, "f": f} for n, p, f in tasks]}
    return inputs, result


def cmd_report(job: Job):
    """Weights, theta and JH incidence for one parameter, with figures."""
    from .plots import plot_extension_graph, plot_jh_incidence

    param = job.param()
    out_dir = Path(job.get("out", required=True))
    inputs = {"p": param.p, "f": param.f, "s": param.s.to_string(), "mu": param.mu.flat()}
    by_omega = predicted_weights_by_omega(param)
    result = {
        "by_omega": {omega_key(om): by_omega[om].label() for om in sorted(by_omega)},
        "theta": theta(param).to_json(),
        "figures": [str(plot_extension_graph(param, out_dir / "extension_graph.png")),
                    str(plot_jh_incidence(param, out_dir / "jh_incidence.png"))],
    }
    (out_dir / "report.json").write_text(render_json("report", inputs, result))
    return inputs, result


COMMANDS = {
    "weights": cmd_weights,
    "jh": cmd_jh,
    "types": cmd_types,
    "theta": cmd_theta,
    "shape": cmd_shape,
    "match": cmd_match,
    "lift": cmd_lift,
    "equiv": cmd_equiv,
    "verify": cmd_verify,
    "report": cmd_report,
}


# ---------------------------------------------------------------------------


def render_json(command: str, inputs, result) -> str:
    return json.dumps({"command": command, "inputs": inputs, "result": result}, sort_keys=True, indent=2) + "\n"


def render_text(command: str, inputs, result) -> str:
    if command == "verify":
        lines = [f"{'PASS' if c['passed'] else 'FAIL'} [{c['suite']}] {c['check']}"
                 + (f": {c['detail']}" if c["detail"] else "") for c in result["checks"]]
        s = result["summary"]
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return "\n".join(lines) + "\n"
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in result.items()) + "\n" \
        if isinstance(result, dict) else f"{result}\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uwk", description="Serre weights and tame types for unramified U(1,1).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key=value file; flags take precedence")
        sp.add_argument("--p", type=int)
        sp.add_argument("--f", type=int)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
        fmt.add_argument("--text", dest="text", action="store_true", help="plain text output")
        sp.set_defaults(text=False)

    for name in ("weights", "theta", "report"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--s")
        sp.add_argument("--mu")
        if name == "weights":
            sp.add_argument("--plot-dir", dest="plot_dir")
        if name == "report":
            sp.add_argument("--out")

    sp = sub.add_parser("jh")
    common(sp)
    for opt in ("--s", "--w", "--mu", "--nu"):
        sp.add_argument(opt)

    sp = sub.add_parser("types")
    common(sp)
    sp.add_argument("--mu", help="a representative of the weight")

    for name in ("shape", "match"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--s")
        sp.add_argument("--mu")
        sp.add_argument("--shape", help="f or 2f letters among t10, wt10, t01")
        if name == "shape":
            sp.add_argument("--type-s", dest="type_s")
            sp.add_argument("--type-mu", dest="type_mu")
        else:
            sp.add_argument("--omega")

    sp = sub.add_parser("lift")
    common(sp)
    sp.add_argument("--s")
    sp.add_argument("--nu", help="the parameter character")
    sp.add_argument("--mu", help="the weight character")

    sp = sub.add_parser("equiv")
    common(sp)
    for opt in ("--t1-s", "--t1-mu", "--t2-s", "--t2-mu"):
        sp.add_argument(opt, dest=opt[2:].replace("-", "_"))

    sp = sub.add_parser("verify")
    common(sp)
    sp.add_argument("suite", nargs="?", choices=SUITES + ("all",))
    sp.add_argument("--suite", dest="suite_flag", choices=SUITES + ("all",))
    sp.add_argument("--table-file", dest="table_file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "verify" and getattr(ns, "suite_flag", None):
        ns.suite = ns.suite_flag
    job = Job(ns)
    try:
        inputs, result = COMMANDS[ns.command](job)
    except INPUT_ERRORS as exc:
        print(f"uwk {ns.command}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"uwk {ns.command}: internal error: {exc!r}", file=sys.stderr)
        return 1
    render = render_text if ns.text else render_json
    sys.stdout.write(render(ns.command, inputs, result))
    if ns.command == "verify" and result["summary"]["failed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
