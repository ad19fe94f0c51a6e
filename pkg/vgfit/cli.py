# -*- coding: utf-8 -*-
"""
CLI: python -m vgfit <subcommand>
- sample / fit / asymptotics / simulate / feasibility
- 공통 옵션: --config FILE (key=value, 플래그보다 우선), --format json|text, --threads, --log-level
- 종료 코드: 0 성공, 2 사용법/입력 오류, 3 추정량 부재(infeasible)
- stdout 은 결과 전용, 로그/오류 메시지는 stderr
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from vgfit import __version__

try:
    from vgfit.asymptotics.cov import MODES, VARIANTS, full_cov
    from vgfit.core.config import (
        as_bool, as_int, as_int_list, default_seed,
        load_mle_cfg, load_sim_cfg, read_config_file,
    )
    from vgfit.core.env import load_env_chain
    from vgfit.core.errors import DomainError, InfeasibleError, UsageError
    from vgfit.core.logging import setup_logging
    from vgfit.dist.gen_laplace import Params, read_sample_csv, sample, write_sample_csv
    from vgfit.estimate.mme import Method, fit
    from vgfit.simlab.report import CSV_COLUMNS, format_text, json_mirror_path, to_json, write_csv, write_json
    from vgfit.simlab.runner import feasibility_table, location_table, paper_tables, run_grid
except Exception:  # pragma: no cover
    from asymptotics.cov import MODES, VARIANTS, full_cov  # type: ignore
    from core.config import (  # type: ignore
        as_bool, as_int, as_int_list, default_seed,
        load_mle_cfg, load_sim_cfg, read_config_file,
    )
    from core.env import load_env_chain  # type: ignore
    from core.errors import DomainError, InfeasibleError, UsageError  # type: ignore
    from core.logging import setup_logging  # type: ignore
    from dist.gen_laplace import Params, read_sample_csv, sample, write_sample_csv  # type: ignore
    from estimate.mme import Method, fit  # type: ignore
    from simlab.report import CSV_COLUMNS, format_text, json_mirror_path, to_json, write_csv, write_json  # type: ignore
    from simlab.runner import feasibility_table, location_table, paper_tables, run_grid  # type: ignore

log = logging.getLogger("vgfit.cli")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

_GLOBAL_KEYS = ("format", "threads", "log_level")


# ----------------------------- 파서 -----------------------------
def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--config", default=d(None), help="key=value file; overrides flags")
    p.add_argument("--format", choices=("json", "text"), default=d("json"))
    p.add_argument("--threads", type=int, default=d(None), help="simlab workers (default: cores)")
    p.add_argument("--log-level", dest="log_level", default=d(None))


def _add_mle_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mle-max-iter", dest="mle_max_iter", type=int)
    p.add_argument("--mle-xatol", dest="mle_xatol", type=float)
    p.add_argument("--mle-fatol", dest="mle_fatol", type=float)
    p.add_argument("--mle-clamp-param", dest="mle_clamp_param", type=float)
    p.add_argument("--mle-clamp-sigma-nu", dest="mle_clamp_sigma_nu", type=float)
    p.add_argument("--mle-log-param", dest="mle_log_param")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vgfit", description="symmetric variance-gamma parameter estimation")
    ap.add_argument("--version", action="version", version=f"vgfit {__version__}")
    _add_globals(ap, suppress=False)
    sub = ap.add_subparsers(dest="cmd", required=True)

    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)

    sp = sub.add_parser("sample", parents=[common], help="draw a sample into a single-column CSV")
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--m", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")

    sp = sub.add_parser("fit", parents=[common], help="fit (a, b, m) to a CSV sample")
    sp.add_argument("--in", dest="in_path")
    sp.add_argument("--column", default=None)
    sp.add_argument("--method", default=None, help="classic-mme | modified-mme | mle")
    sp.add_argument("--known-m", dest="known_m", type=float)
    _add_mle_opts(sp)

    sp = sub.add_parser("asymptotics", parents=[common], help="print the limiting covariance")
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--estimator", default=None, help="classic | modified")
    sp.add_argument("--mode", default=None, help="centered | paper (modified 공분산의 적률 행렬 형태)")
    sp.add_argument("--variant", default=None, help="corrected | printed (classic)")
    sp.add_argument("--with-m", dest="with_m", default=None, help="include the m block (3x3)")

    sp = sub.add_parser("simulate", parents=[common], help="Monte Carlo bias/MSE tables")
    sp.add_argument("--estimator", default=None, help="classic | modified | mle | location")
    sp.add_argument("--a-values", dest="a_values")
    sp.add_argument("--b-values", dest="b_values")
    sp.add_argument("--N", dest="N", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--m-true", dest="m_true", type=float)
    sp.add_argument("--m-known", dest="m_known", default=None)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--paper-tables", dest="paper_tables", action="store_true", default=None)
    sp.add_argument("--out", help="CSV path (JSON mirror written next to it)")
    _add_mle_opts(sp)

    sp = sub.add_parser("feasibility", parents=[common], help="estimator existence probabilities")
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--N-values", dest="N_values")
    sp.add_argument("--k", type=int)
    sp.add_argument("--seed", type=int)
    return ap


def _subparser_keys(ap: argparse.ArgumentParser, cmd: str) -> List[str]:
    for act in ap._actions:
        if isinstance(act, argparse._SubParsersAction):
            sp = act.choices[cmd]
            return [a.dest for a in sp._actions if a.dest not in ("help", "config")]
    return []  # pragma: no cover


# ----------------------------- 값 해석 -----------------------------
class _Opts:
    """설정 파일 > 플래그 > (호출부 기본값) 순서로 값 조회."""

    def __init__(self, args: argparse.Namespace, cfg_file: Dict[str, str]) -> None:
        self.flags: Dict[str, Any] = {k: v for k, v in vars(args).items() if v is not None}
        self.cfg_file = cfg_file

    def get(self, key: str, caster: Callable[[Any], Any] = str, default: Any = None, required: bool = False) -> Any:
        v = self.cfg_file.get(key)
        if v in (None, ""):
            v = self.flags.get(key)
        if v is None:
            if required:
                raise UsageError(f"missing required option --{key.replace('_', '-')}")
            return default
        try:
            return caster(v)
        except (TypeError, ValueError) as e:
            raise UsageError(f"invalid value for {key}: {v!r} ({e})")


def _emit(obj: Any, fmt: str, rows: Optional[list] = None, columns: Optional[Sequence[str]] = None) -> None:
    if fmt == "text" and rows is not None:
        print(format_text(rows, columns))
    elif fmt == "text" and isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        for k, v in obj.items():
            print(f"{k:<{width}} : {_fmt_value(v)}")
    else:
        print(to_json(obj))


def _fmt_value(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt_value(x)}" for k, x in v.items())
    return str(v)


def _format_matrix(m) -> str:
    cells = [[f"{v:.17g}" for v in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


# ----------------------------- 서브커맨드 -----------------------------
# [ANCHOR:CMD_SAMPLE]
def cmd_sample(o: _Opts) -> int:
    n = o.get("n", as_int, required=True)
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")
    p = Params(o.get("a", float, required=True), o.get("b", float, required=True), o.get("m", float, 0.0))
    seed = o.get("seed", as_int, default_seed())
    out = o.get("out", str, required=True)
    path = write_sample_csv(sample(p, n, seed), out)
    log.info("[CLI] sample a=%g b=%g m=%g n=%d seed=%d → %s", p.a, p.b, p.m, n, seed, path)
    return EXIT_OK


# [ANCHOR:CMD_FIT]
def cmd_fit(o: _Opts) -> int:
    path = o.get("in_path", str, required=True)
    method = Method.parse(o.get("method", str, "modified-mme"))
    known_m = o.get("known_m", float)
    s = read_sample_csv(path, o.get("column", str, "x"))
    mle_cfg = None
    if method is Method.MLE:
        mle_cfg = load_mle_cfg(o.cfg_file, o.flags)
    res = fit(s, method, known_m=known_m, mle_cfg=mle_cfg)
    _emit(res.to_dict(), o.get("format", str, "json"))
    if not res.feasible:
        cond = res.diagnostics.get("condition", "infeasible")
        print(f"vgfit: infeasible estimate ({method.value}): {cond}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


# [ANCHOR:CMD_ASYMPTOTICS]
def cmd_asymptotics(o: _Opts) -> int:
    a = o.get("a", float, required=True)
    b = o.get("b", float, required=True)
    estimator = o.get("estimator", str, "classic").strip().lower()
    mode = o.get("mode", str, "centered")
    variant = o.get("variant", str, "corrected")
    with_m = o.get("with_m", as_bool, False)
    if mode not in MODES or variant not in VARIANTS:
        raise UsageError(f"--mode {MODES} / --variant {VARIANTS}")
    cov = full_cov(a, b, estimator, mode=mode, variant=variant)
    matrix = cov.as_array() if with_m else cov.inner.as_array()
    payload = {
        "a": float(a), "b": float(b), "estimator": estimator,
        "mode": mode if estimator.startswith("modified") else None,
        "variant": variant if estimator.startswith("classic") else None,
        "params": ["m", "a", "b"] if with_m else ["a", "b"],
        "matrix": matrix.tolist(),
        "correlation": cov.inner.correlation(),
        "det": cov.inner.det(),
    }
    if o.get("format", str, "json") == "text":
        print(_format_matrix(matrix))
    else:
        print(to_json(payload))
    return EXIT_OK


# [ANCHOR:CMD_SIMULATE]
def cmd_simulate(o: _Opts) -> int:
    fmt = o.get("format", str, "json")
    out = o.get("out", str)
    sim_flags = dict(o.flags)
    if "seed" not in sim_flags and "seed" not in o.cfg_file:
        sim_flags["seed"] = default_seed()
    grid = load_sim_cfg(o.cfg_file, sim_flags)
    mle_cfg = load_mle_cfg(o.cfg_file, o.flags)

    if o.get("paper_tables", as_bool, False):
        tables = paper_tables(seed=grid.seed, threads=grid.threads, k=grid.k, N=grid.N, mle_cfg=mle_cfg)
        rows = tables["known_m"]
        if out:
            _write_rows(rows, out)
            stem = out[:-4] if out.lower().endswith(".csv") else out
            _write_rows(tables["unknown_m"], f"{stem}_unknown_m.csv")
            _write_rows(tables["location"], f"{stem}_location.csv", columns=None)
            _write_rows(tables["feasibility"], f"{stem}_feasibility.csv", columns=None)
        elif fmt == "text":
            _emit(None, fmt, rows, CSV_COLUMNS)
        else:
            print(to_json(tables))
        return EXIT_OK

    est = o.get("estimator", str, "classic").strip().lower()
    if est == "location":
        rows, columns = location_table(grid), None
    else:
        rows, columns = run_grid(grid, Method.parse(est), mle_cfg), CSV_COLUMNS
    if out:
        _write_rows(rows, out, columns)
    elif fmt == "text":
        _emit(None, fmt, rows, columns)
    else:
        print(to_json(rows))
    return EXIT_OK


def _write_rows(rows: list, path: str, columns: Optional[Sequence[str]] = CSV_COLUMNS) -> None:
    write_csv(rows, path, columns)
    write_json(rows, json_mirror_path(path))
    log.info("[CLI] wrote %d rows → %s (+ .json)", len(rows), path)


# [ANCHOR:CMD_FEASIBILITY]
def cmd_feasibility(o: _Opts) -> int:
    rows = feasibility_table(
        o.get("a", float, required=True),
        o.get("b", float, required=True),
        N_values=o.get("N_values", as_int_list, (10, 20, 50)),
        k=o.get("k", as_int, 10000),
        seed=o.get("seed", as_int, default_seed()),
        threads=o.get("threads", as_int),
    )
    if o.get("format", str, "json") == "text":
        _emit(None, "text", rows)
    else:
        print(to_json(rows))
    return EXIT_OK


_COMMANDS: Dict[str, Callable[[_Opts], int]] = {
    "sample": cmd_sample,
    "fit": cmd_fit,
    "asymptotics": cmd_asymptotics,
    "simulate": cmd_simulate,
    "feasibility": cmd_feasibility,
}


# ----------------------------- 진입점 -----------------------------
def main(argv: Optional[Sequence[str]] = None) -> int:
    load_env_chain()
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:  # argparse: 오류 2, --help 0
        return int(e.code or 0)

    try:
        cfg_file: Dict[str, str] = {}
        if args.config:
            cfg_file = read_config_file(args.config, _subparser_keys(ap, args.cmd))
        opts = _Opts(args, cfg_file)
        setup_logging(opts.get("log_level", str))
        if opts.get("format", str, "json") not in ("json", "text"):
            raise UsageError("--format must be json or text")
        return _COMMANDS[args.cmd](opts)
    except (UsageError, DomainError) as e:
        print(f"vgfit: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as e:
        print(f"vgfit: infeasible: {e.condition or e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as e:
        print(f"vgfit: I/O error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
