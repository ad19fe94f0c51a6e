# -*- coding: utf-8 -*-
"""
CLI: python -m vgfit.simlab
ENV 로더(SIM_*, VGFIT_SEED, MLE_*)로 격자를 구성해 run_grid 실행
  SIM_ESTIMATOR=classic|modified|mle (기본 classic), SIM_OUT=CSV 경로(선택)
"""
from __future__ import annotations
import logging

try:
    from vgfit.core.config import load_mle_cfg, load_sim_cfg
    from vgfit.core.env import load_env_chain
    from vgfit.core.logging import setup_logging
    from vgfit.simlab.report import format_text, json_mirror_path, write_csv, write_json
    from vgfit.simlab.runner import run_grid
    from vgfit.utils.env import env_str
except Exception:  # pragma: no cover
    from core.config import load_mle_cfg, load_sim_cfg  # type: ignore
    from core.env import load_env_chain  # type: ignore
    from core.logging import setup_logging  # type: ignore
    from simlab.report import format_text, json_mirror_path, write_csv, write_json  # type: ignore
    from simlab.runner import run_grid  # type: ignore
    from utils.env import env_str  # type: ignore

log = logging.getLogger("vgfit.sim.cli")


def main() -> None:
    load_env_chain()
    setup_logging()
    grid = load_sim_cfg()
    est = env_str("SIM_ESTIMATOR", "classic")
    rows = run_grid(grid, est, load_mle_cfg())
    out = env_str("SIM_OUT", None)
    if out:
        write_csv(rows, out)
        write_json(rows, json_mirror_path(out))
        log.info("[SIM] wrote %s", out)
    print(format_text(rows))


if __name__ == "__main__":
    main()
