# -*- coding: utf-8 -*-
"""
Monte Carlo 러너
- 셀 (a, b) 마다 k 회 반복: 표본 생성 → 요약(기지 m / 중심형) → 추정 → 누적
- 반복별 난수: SeedSequence(seed, spawn_key=(cell, rep)) → Philox
- 병렬: ThreadPoolExecutor 청크, 결과는 인덱스 배열에 기록 후 인덱스 순서로 축약
  → 스레드 수와 무관하게 동일 결과
- 불가능(infeasible) 반복은 bias/MSE 에서 제외, feasibility_rate 로 보고
- ℓ 경계 상한에 걸린 수정 MME 는 상한값으로 평균에 포함, failure_count 로 집계
"""
from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from vgfit.core.errors import DomainError
    from vgfit.dist.gen_laplace import Params, Sample, make_rng, sample_values
    from vgfit.estimate.mle import MleConfig, fit_mle
    from vgfit.estimate.mme import (
        COND_BOUNDARY, ELL_A_CAP, Method, classic_mme, feasibility_classic,
        feasibility_modified, modified_mme, summarize,
    )
except Exception:  # pragma: no cover
    from core.errors import DomainError  # type: ignore
    from dist.gen_laplace import Params, Sample, make_rng, sample_values  # type: ignore
    from estimate.mle import MleConfig, fit_mle  # type: ignore
    from estimate.mme import (  # type: ignore
        COND_BOUNDARY, ELL_A_CAP, Method, classic_mme, feasibility_classic,
        feasibility_modified, modified_mme, summarize,
    )

log = logging.getLogger("vgfit.sim")

DEFAULT_A = (0.25, 0.5, 1.0, 2.0, 3.0)
DEFAULT_B = (0.01, 0.1, 1.0, 5.0)
DEFAULT_SEED = 2024

# spawn_key 첫 원소 (run_grid 는 (cell, rep) 그대로 사용)
_TAG_FEAS = 1_000_001
_TAG_TRAJ = 1_000_002

_CHUNK = 256


# ----------------------------- 설정/결과 타입 -----------------------------
@dataclass
class SimGrid:
    a_values: Tuple[float, ...] = DEFAULT_A
    b_values: Tuple[float, ...] = DEFAULT_B
    N: int = 1000
    k: int = 10000
    m_true: float = 0.0
    m_known: bool = True
    seed: int = DEFAULT_SEED
    threads: Optional[int] = None     # None → os.cpu_count()

    def __post_init__(self) -> None:
        self.a_values = tuple(float(v) for v in self.a_values)
        self.b_values = tuple(float(v) for v in self.b_values)
        if not self.a_values or not self.b_values:
            raise DomainError("grid needs at least one a and one b")
        if any(not (v > 0.0 and math.isfinite(v)) for v in self.a_values + self.b_values):
            raise DomainError(f"all a, b must be > 0 (a={self.a_values}, b={self.b_values})")
        if int(self.N) < 2:
            raise DomainError(f"N must be >= 2, got {self.N!r}")
        if int(self.k) < 1:
            raise DomainError(f"k must be >= 1, got {self.k!r}")
        if not math.isfinite(float(self.m_true)):
            raise DomainError("m_true must be finite")
        if self.threads is not None and int(self.threads) < 1:
            raise DomainError(f"threads must be >= 1, got {self.threads!r}")
        self.N, self.k, self.seed = int(self.N), int(self.k), int(self.seed)
        self.m_true = float(self.m_true)

    def cells(self) -> List[Tuple[int, float, float]]:
        return [(i * len(self.b_values) + j, a, b)
                for i, a in enumerate(self.a_values)
                for j, b in enumerate(self.b_values)]

    def workers(self) -> int:
        return int(self.threads or os.cpu_count() or 1)


@dataclass
class SimRow:
    a: float
    b: float
    N: int
    k: int
    estimator: str
    bias_a: float
    mse_a: float
    se_a: float
    bias_b: float
    mse_b: float
    se_b: float
    bias_m: float
    mse_m: float
    se_m: float
    feasibility_rate: float
    failure_count: int
    feasible_count: int
    infeasible_count: int
    m_known: bool = True
    se_mse_a: float = math.nan     # MSE 자체의 몬테카를로 표준오차
    se_mse_b: float = math.nan


@dataclass
class FeasibilityRow:
    a: float
    b: float
    N: int
    k: int
    p_modified: float
    p_classic: float


@dataclass
class LocationRow:
    a: float
    b: float
    N: int
    k: int
    bias_m: float
    mse_m: float
    se_m: float
    mse_ratio: float     # MSE / (ab/N)


@dataclass
class TrajectoryRow:
    a: float
    b: float
    N: int
    k: int
    estimator: str
    feasible_count: int
    nmse_a: float
    se_nmse_a: float
    nmse_b: float
    se_nmse_b: float


# ----------------------------- 통계 -----------------------------
def _bias_mse_se(est: np.ndarray, true: float) -> Tuple[float, float, float]:
    """StError = 표본표준편차/√k' (k' = 사용된 반복 수)."""
    kk = est.size
    if kk == 0:
        return math.nan, math.nan, math.nan
    err = est - true
    bias = float(np.mean(err))
    mse = float(np.mean(err * err))
    se = float(np.std(est, ddof=1) / math.sqrt(kk)) if kk > 1 else math.nan
    return bias, mse, se


def _mse_se(est: np.ndarray, true: float) -> float:
    """MSE 의 표준오차 = sd((θ̂−θ)²)/√k'."""
    kk = est.size
    if kk < 2:
        return math.nan
    sq = (est - true) ** 2
    return float(np.std(sq, ddof=1) / math.sqrt(kk))


def _parallel_fill(total: int, workers: int, fill: Callable[[int, int], None]) -> None:
    """[0, total) 을 청크로 나눠 fill(lo, hi) 실행. fill 은 인덱스 영역에만 기록."""
    spans = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    if workers <= 1 or len(spans) <= 1:
        for lo, hi in spans:
            fill(lo, hi)
        return
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="vgfit-sim") as ex:
        for fut in [ex.submit(fill, lo, hi) for lo, hi in spans]:
            fut.result()


# ----------------------------- 반복 1회 -----------------------------
def _fit_one(
    s: Sample, method: Method, known_m: Optional[float], mle_cfg: Optional[MleConfig]
) -> Tuple[float, float, float, bool, bool]:
    """→ (â, b̂, m̂, 평균 포함 여부, failure 여부)"""
    if method is Method.MLE:
        r = fit_mle(s, mle_cfg, known_m=known_m)
        if not r.feasible:
            return math.nan, math.nan, math.nan, False, True
        return r.params.a, r.params.b, r.params.m, True, False
    ms = summarize(s, known_m)
    r = classic_mme(ms) if method is Method.CLASSIC_MME else modified_mme(ms)
    if r.feasible:
        return r.params.a, r.params.b, r.params.m, True, False
    if r.diagnostics.get("condition") == COND_BOUNDARY:
        # 정규 극한 근처: 상한값으로 평균에 포함
        return ELL_A_CAP, ms.V / ELL_A_CAP, ms.center, True, True
    return math.nan, math.nan, math.nan, False, False


# [ANCHOR:RUN_GRID]
def run_cell(
    grid: SimGrid, cell: int, a: float, b: float, method: Method,
    mle_cfg: Optional[MleConfig] = None,
) -> SimRow:
    k, N = grid.k, grid.N
    p = Params(a, b, grid.m_true)
    known_m = grid.m_true if grid.m_known else None
    est = np.full((k, 3), np.nan)
    used = np.zeros(k, dtype=bool)
    failed = np.zeros(k, dtype=bool)

    def fill(lo: int, hi: int) -> None:
        for rep in range(lo, hi):
            x = sample_values(p, N, make_rng(grid.seed, (cell, rep)))
            ah, bh, mh, ok, fail = _fit_one(Sample(x), method, known_m, mle_cfg)
            est[rep] = (ah, bh, mh)
            used[rep] = ok
            failed[rep] = fail

    _parallel_fill(k, grid.workers(), fill)

    good = est[used]
    ba, ma, sa = _bias_mse_se(good[:, 0], a)
    bb, mb, sb = _bias_mse_se(good[:, 1], b)
    bm, mm, sm = _bias_mse_se(good[:, 2], grid.m_true)
    n_ok = int(used.sum())
    return SimRow(
        a=a, b=b, N=N, k=k, estimator=method.value,
        bias_a=ba, mse_a=ma, se_a=sa,
        bias_b=bb, mse_b=mb, se_b=sb,
        bias_m=bm, mse_m=mm, se_m=sm,
        feasibility_rate=n_ok / k,
        failure_count=int(failed.sum()),
        feasible_count=n_ok,
        infeasible_count=k - n_ok,
        m_known=grid.m_known,
        se_mse_a=_mse_se(good[:, 0], a),
        se_mse_b=_mse_se(good[:, 1], b),
    )


def run_grid(grid: SimGrid, estimator, mle_cfg: Optional[MleConfig] = None) -> List[SimRow]:
    method = estimator if isinstance(estimator, Method) else Method.parse(estimator)
    rows: List[SimRow] = []
    t0 = time.time()
    for cell, a, b in grid.cells():
        row = run_cell(grid, cell, a, b, method, mle_cfg)
        log.info("[SIM] %s a=%g b=%g N=%d k=%d feas=%.4f fail=%d mse_a=%.3e mse_b=%.3e",
                 method.value, a, b, grid.N, grid.k, row.feasibility_rate, row.failure_count,
                 row.mse_a, row.mse_b)
        rows.append(row)
    log.info("[SIM] %s grid done: cells=%d %.1fs", method.value, len(rows), time.time() - t0)
    return rows


# ----------------------------- 실현가능성 표 -----------------------------
# [ANCHOR:FEASIBILITY]
def feasibility_table(
    a: float, b: float, N_values: Sequence[int] = (10, 20, 50), k: int = 10000,
    seed: int = DEFAULT_SEED, threads: Optional[int] = None,
) -> List[FeasibilityRow]:
    """m 미지(중심형 적률)에서 두 존재 조건의 확률."""
    p = Params(a, b, 0.0)
    if int(k) < 1:
        raise DomainError(f"k must be >= 1, got {k!r}")
    workers = int(threads or os.cpu_count() or 1)
    rows: List[FeasibilityRow] = []
    for i, N in enumerate(N_values):
        N = int(N)
        if N < 2:
            raise DomainError(f"N must be >= 2, got {N!r}")
        mod = np.zeros(k, dtype=bool)
        cls = np.zeros(k, dtype=bool)

        def fill(lo: int, hi: int) -> None:
            for rep in range(lo, hi):
                x = sample_values(p, N, make_rng(seed, (_TAG_FEAS, i, rep)))
                ms = summarize(Sample(x))
                mod[rep] = feasibility_modified(ms)
                cls[rep] = feasibility_classic(ms)

        _parallel_fill(int(k), workers, fill)
        rows.append(FeasibilityRow(p.a, p.b, N, int(k), float(mod.mean()), float(cls.mean())))
        log.debug("[SIM] feasibility a=%g b=%g N=%d P_mod=%.4f P_cls=%.4f", a, b, N, rows[-1].p_modified, rows[-1].p_classic)
    return rows


# ----------------------------- 위치 추정 -----------------------------
# [ANCHOR:LOCATION]
def location_table(grid: SimGrid) -> List[LocationRow]:
    """m̂ = X̄. 표본은 run_grid 와 같은 스트림을 사용한다."""
    rows: List[LocationRow] = []
    for cell, a, b in grid.cells():
        p = Params(a, b, grid.m_true)
        xbar = np.empty(grid.k)

        def fill(lo: int, hi: int) -> None:
            for rep in range(lo, hi):
                xbar[rep] = float(np.mean(sample_values(p, grid.N, make_rng(grid.seed, (cell, rep)))))

        _parallel_fill(grid.k, grid.workers(), fill)
        bias, mse, se = _bias_mse_se(xbar, grid.m_true)
        rows.append(LocationRow(a, b, grid.N, grid.k, bias, mse, se, mse / (a * b / grid.N)))
    return rows


# ----------------------------- N·MSE 궤적 -----------------------------
# [ANCHOR:TRAJECTORY]
def nmse_trajectory(
    a: float, b: float, N_values: Sequence[int] = (1000, 10000, 100000), k: int = 2000,
    estimator="modified", seed: int = DEFAULT_SEED, known_m: bool = True,
    threads: Optional[int] = None, mle_cfg: Optional[MleConfig] = None,
) -> List[TrajectoryRow]:
    """N·MSE(â), N·MSE(b̂) 를 N 에 따라 추적 (점근 공분산 대각과 비교용)."""
    method = estimator if isinstance(estimator, Method) else Method.parse(estimator)
    p = Params(a, b, 0.0)
    workers = int(threads or os.cpu_count() or 1)
    km = 0.0 if known_m else None
    rows: List[TrajectoryRow] = []
    for i, N in enumerate(N_values):
        N = int(N)
        est = np.full((k, 2), np.nan)
        used = np.zeros(k, dtype=bool)

        def fill(lo: int, hi: int) -> None:
            for rep in range(lo, hi):
                x = sample_values(p, N, make_rng(seed, (_TAG_TRAJ, i, rep)))
                ah, bh, _, ok, _ = _fit_one(Sample(x), method, km, mle_cfg)
                est[rep] = (ah, bh)
                used[rep] = ok

        _parallel_fill(int(k), workers, fill)
        good = est[used]
        kk = good.shape[0]
        sq_a = N * (good[:, 0] - p.a) ** 2
        sq_b = N * (good[:, 1] - p.b) ** 2
        se = (lambda v: float(np.std(v, ddof=1) / math.sqrt(kk)) if kk > 1 else math.nan)
        rows.append(TrajectoryRow(
            a=p.a, b=p.b, N=N, k=int(k), estimator=method.value, feasible_count=kk,
            nmse_a=float(np.mean(sq_a)) if kk else math.nan, se_nmse_a=se(sq_a),
            nmse_b=float(np.mean(sq_b)) if kk else math.nan, se_nmse_b=se(sq_b),
        ))
        log.info("[SIM] trajectory %s N=%d N*MSE(a)=%.4g N*MSE(b)=%.4g", method.value, N, rows[-1].nmse_a, rows[-1].nmse_b)
    return rows


# ----------------------------- 전체 표 -----------------------------
# [ANCHOR:PAPER_TABLES]
def paper_tables(
    seed: int = DEFAULT_SEED, threads: Optional[int] = None, k: int = 10000, N: int = 1000,
    mle_cfg: Optional[MleConfig] = None,
) -> Dict[str, list]:
    """기본 격자 전체: 기지 m (classic/modified/mle), 미지 m (classic/modified), 위치, 실현가능성."""
    known = SimGrid(N=N, k=k, m_known=True, seed=seed, threads=threads)
    unknown = SimGrid(N=N, k=k, m_known=False, seed=seed, threads=threads)
    out: Dict[str, list] = {
        "known_m": [],
        "unknown_m": [],
    }
    for meth in (Method.CLASSIC_MME, Method.MLE, Method.MODIFIED_MME):
        out["known_m"].extend(run_grid(known, meth, mle_cfg))
    for meth in (Method.CLASSIC_MME, Method.MODIFIED_MME):
        out["unknown_m"].extend(run_grid(unknown, meth))
    out["location"] = location_table(unknown)
    feas: List[FeasibilityRow] = []
    for _, a, b in unknown.cells():
        feas.extend(feasibility_table(a, b, k=k, seed=seed, threads=threads))
    out["feasibility"] = feas
    return out
