# -*- coding: utf-8 -*-
"""
최우추정 (MLE): 비교 기준선
- 목적함수: −Σ log f(x_i; a, b, m), 로그 스케일 Bessel-K
- 최적화: Nelder–Mead (scipy), 계수 표준값 (1, 2, ½, ½)
- 클램핑: a,b ≤ 0 → 1e-5 / σ=√(ab), ν=1/a 가 1e-4 미만이면 1e-4
- 초기점: 수정 MME → 고전 MME → (1, V̂, X̄)
- 상수 표본은 degenerate-sample, 최적점이 클램프 하한에 붙으면 boundary 로 feasible=False
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

try:
    from vgfit.core.errors import DomainError
    from vgfit.dist.gen_laplace import Params, Sample, SINGULAR_EPS, log_pdf
    from vgfit.estimate.mme import FitResult, Method, classic_mme, modified_mme, summarize
except Exception:  # pragma: no cover
    from core.errors import DomainError  # type: ignore
    from dist.gen_laplace import Params, Sample, SINGULAR_EPS, log_pdf  # type: ignore
    from estimate.mme import FitResult, Method, classic_mme, modified_mme, summarize  # type: ignore

log = logging.getLogger("vgfit.mle")

COND_DEGENERATE = "degenerate-sample"
COND_MLE_BOUNDARY = "boundary"

# 클램프 경계 판정 여유 (상대)
_BOUND_RTOL = 1e-6


# ----------------------------- 설정 -----------------------------
@dataclass
class MleConfig:
    clamp_param: float = 1e-5       # a, b 음수 제안 시 대입값
    clamp_sigma_nu: float = 1e-4    # σ=√(ab), ν=1/a 하한
    max_iter: int = 5000
    xatol: float = 1e-8             # 심플렉스 지름
    fatol: float = 1e-10            # 함수값 폭
    log_param: bool = False         # (ln a, ln b) 재매개화 실험용

    def __post_init__(self) -> None:
        if not (self.clamp_param > 0.0 and self.clamp_sigma_nu > 0.0):
            raise DomainError("MLE clamps must be > 0")
        if int(self.max_iter) < 100:
            raise DomainError(f"MLE max_iter must be >= 100, got {self.max_iter!r}")
        if not (self.xatol > 0.0 and self.fatol > 0.0):
            raise DomainError("MLE tolerances must be > 0")
        self.max_iter = int(self.max_iter)


# ----------------------------- 우도 -----------------------------
# [ANCHOR:NEG_LOGLIK]
def neg_log_likelihood(p: Params, s: Sample) -> float:
    x = s.values
    r = np.abs(x - p.m)
    # m 과 일치하는 관측치는 |x−m| = 1e-12 로 평가
    x_eval = np.where(r < SINGULAR_EPS, p.m + SINGULAR_EPS, x)
    return float(-np.sum(log_pdf(p, x_eval)))


def clamp_params(a: float, b: float, m: float, cfg: MleConfig) -> Params:
    if not a > 0.0:
        a = cfg.clamp_param
    if not b > 0.0:
        b = cfg.clamp_param
    sigma = math.sqrt(a * b)
    nu = 1.0 / a
    if sigma < cfg.clamp_sigma_nu or nu < cfg.clamp_sigma_nu:
        sigma = max(sigma, cfg.clamp_sigma_nu)
        nu = max(nu, cfg.clamp_sigma_nu)
        a = 1.0 / nu
        b = sigma * sigma / a
    return Params(a, b, m)


def on_clamp_bounds(p: Params, cfg: MleConfig) -> bool:
    """a, b, σ=√(ab), ν=1/a 중 하나라도 클램프 하한에 붙어 있으면 True."""
    lim = 1.0 + _BOUND_RTOL
    return (
        p.a <= cfg.clamp_param * lim
        or p.b <= cfg.clamp_param * lim
        or math.sqrt(p.a * p.b) <= cfg.clamp_sigma_nu * lim
        or 1.0 / p.a <= cfg.clamp_sigma_nu * lim
    )


# ----------------------------- 초기점 -----------------------------
def _initial_point(s: Sample, known_m: Optional[float]) -> Tuple[Params, str]:
    ms = summarize(s, known_m)
    for fit in (modified_mme(ms), classic_mme(ms)):
        if fit.feasible and fit.params is not None:
            return fit.params, fit.method.value
    V = ms.V if ms.V > 0.0 else 1.0
    return Params(1.0, V, ms.center), "fallback"


# [ANCHOR:FIT_MLE]
def fit_mle(
    s: Sample,
    cfg: Optional[MleConfig] = None,
    known_m: Optional[float] = None,
    init: Optional[Params] = None,
) -> FitResult:
    cfg = cfg or MleConfig()
    if s.n < 2:
        raise DomainError(f"fit_mle needs n >= 2, got n={s.n}")
    if float(np.ptp(s.values)) == 0.0:
        log.debug("[MLE] degenerate sample n=%d value=%.6g", s.n, s.values[0])
        return FitResult(None, Method.MLE, False, {"condition": COND_DEGENERATE, "converged": False, "n": s.n})
    if init is None:
        init, init_method = _initial_point(s, known_m)
    else:
        init_method = "given"
    m_fixed = None if known_m is None else float(known_m)

    def unpack(theta: np.ndarray) -> Params:
        if cfg.log_param:
            with np.errstate(over="ignore"):
                a, b = float(np.exp(theta[0])), float(np.exp(theta[1]))
        else:
            a, b = float(theta[0]), float(theta[1])
        m = m_fixed if m_fixed is not None else float(theta[2])
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(m)):
            return Params(1.0 / cfg.clamp_sigma_nu, cfg.clamp_param, m if math.isfinite(m) else 0.0)
        return clamp_params(a, b, m, cfg)

    def objective(theta: np.ndarray) -> float:
        try:
            val = neg_log_likelihood(unpack(theta), s)
        except DomainError:  # a·b 오버플로
            return 1e300
        return val if math.isfinite(val) else 1e300

    if cfg.log_param:
        x0 = [math.log(init.a), math.log(init.b)]
    else:
        x0 = [init.a, init.b]
    if m_fixed is None:
        x0.append(init.m)

    res = minimize(
        objective,
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options={"maxiter": cfg.max_iter, "maxfev": 4 * cfg.max_iter, "xatol": cfg.xatol, "fatol": cfg.fatol},
    )
    try:
        best = unpack(res.x)
    except DomainError:
        best = init
    sim = np.asarray(res.final_simplex[0])
    simplex_size = float(np.max(np.abs(sim[1:] - sim[0]))) if len(sim) > 1 else 0.0
    nll = float(res.fun)
    converged = bool(res.success) and math.isfinite(nll) and nll < 1e300
    diag: Dict[str, Any] = {
        "iterations": int(res.nit),
        "nfev": int(res.nfev),
        "simplex_size": simplex_size,
        "nll": nll,
        "init_method": init_method,
        "converged": converged,
        "log_param": cfg.log_param,
    }
    feasible = converged
    if on_clamp_bounds(best, cfg):
        feasible = False
        diag["condition"] = COND_MLE_BOUNDARY
        log.debug("[MLE] optimum on clamp bounds a=%.6g b=%.6g", best.a, best.b)
    elif not converged:
        diag["condition"] = f"Nelder-Mead not converged: {res.message}"
        log.debug("[MLE] not converged nit=%d msg=%s", res.nit, res.message)
    return FitResult(best, Method.MLE, feasible, diag)
