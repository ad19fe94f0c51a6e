# -*- coding: utf-8 -*-
"""
적률추정 (MME)
- summarize: 경험 적률 요약 (중심형 V̂,K̂,Â / 기지 m 기준 V̂',K̂',Â')
- classic_mme: (V, K) → (a, b)
- modified_mme: (A, V) → a = ℓ(½lnV − lnA), b = V/a
- L, L', ℓ(L의 역함수), 실현가능성 판정
분모는 1/N (naive), 시뮬레이션 표 재현 기준
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from scipy.optimize import brentq

try:
    from vgfit.core.errors import BoundaryError, DomainError, InfeasibleError
    from vgfit.dist.gen_laplace import Params, Sample
    from vgfit.special.functions import digamma, log_gamma
except Exception:  # pragma: no cover
    from core.errors import BoundaryError, DomainError, InfeasibleError  # type: ignore
    from dist.gen_laplace import Params, Sample  # type: ignore
    from special.functions import digamma, log_gamma  # type: ignore

log = logging.getLogger("vgfit.mme")

HALF_LN_PI_2 = 0.5 * math.log(math.pi / 2.0)   # L(∞)
TOL_BOUNDARY = 1e-10
ELL_A_CAP = 1e8
ELL_A_FLOOR = 1e-300

COND_CLASSIC = "K_hat <= 3*V_hat^2"
COND_MODIFIED = "0.5*ln(V_hat) - ln(A_hat) <= 0.5*ln(pi/2)"
COND_BOUNDARY = "L-boundary"


class Method(str, enum.Enum):
    CLASSIC_MME = "classic_mme"
    MODIFIED_MME = "modified_mme"
    MLE = "mle"

    @classmethod
    def parse(cls, s: str) -> "Method":
        key = str(s).strip().lower().replace("-", "_")
        alias = {"classic": "classic_mme", "modified": "modified_mme"}
        try:
            return cls(alias.get(key, key))
        except ValueError:
            raise DomainError(f"unknown method {s!r} (classic-mme | modified-mme | mle)")


# ----------------------------- 타입 -----------------------------
@dataclass(frozen=True)
class MomentSummary:
    n: int
    mean: float
    v_hat: float          # 중심형 2차
    k_hat: float          # 중심형 4차
    a_hat_abs: float      # 중심형 1차 절대
    v_prime: float        # 기지 m(없으면 0) 기준
    k_prime: float
    a_prime_abs: float
    known_m: Optional[float] = None

    # 추정에 쓰이는 집합: known_m 이 있으면 prime, 아니면 중심형
    @property
    def V(self) -> float:
        return self.v_prime if self.known_m is not None else self.v_hat

    @property
    def K(self) -> float:
        return self.k_prime if self.known_m is not None else self.k_hat

    @property
    def A(self) -> float:
        return self.a_prime_abs if self.known_m is not None else self.a_hat_abs

    @property
    def center(self) -> float:
        return float(self.known_m) if self.known_m is not None else self.mean


@dataclass
class FitResult:
    params: Optional[Params]
    method: Method
    feasible: bool
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        p = self.params
        return {
            "a_hat": p.a if p else None,
            "b_hat": p.b if p else None,
            "m_hat": p.m if p else None,
            "method": self.method.value,
            "feasible": bool(self.feasible),
            "diagnostics": dict(self.diagnostics),
        }


# ----------------------------- 요약 -----------------------------
# [ANCHOR:SUMMARIZE]
def summarize(s: Sample, known_m: Optional[float] = None) -> MomentSummary:
    x = s.values
    if x.size < 2:
        raise DomainError(f"summarize needs n >= 2, got n={x.size}")
    mean = float(np.mean(x))
    c = x - mean
    c2 = c * c
    ref = 0.0 if known_m is None else float(known_m)
    d = x - ref
    d2 = d * d
    return MomentSummary(
        n=int(x.size),
        mean=mean,
        v_hat=float(np.mean(c2)),
        k_hat=float(np.mean(c2 * c2)),
        a_hat_abs=float(np.mean(np.abs(c))),
        v_prime=float(np.mean(d2)),
        k_prime=float(np.mean(d2 * d2)),
        a_prime_abs=float(np.mean(np.abs(d))),
        known_m=None if known_m is None else ref,
    )


# ----------------------------- 실현가능성 -----------------------------
def feasibility_classic(ms: MomentSummary) -> bool:
    V, K = ms.V, ms.K
    return bool(V > 0.0 and K > 3.0 * V * V)


def _ratio(ms: MomentSummary) -> float:
    V, A = ms.V, ms.A
    if not (V > 0.0 and A > 0.0):
        return -math.inf
    return 0.5 * math.log(V) - math.log(A)


def feasibility_modified(ms: MomentSummary) -> bool:
    return bool(_ratio(ms) > HALF_LN_PI_2 + TOL_BOUNDARY)


# ----------------------------- 고전 MME -----------------------------
# [ANCHOR:CLASSIC_MME]
def classic_mme(ms: MomentSummary) -> FitResult:
    V, K = ms.V, ms.K
    diag: Dict[str, Any] = {"V": V, "K": K, "known_m": ms.known_m is not None}
    if not feasibility_classic(ms):
        diag["condition"] = COND_CLASSIC
        return FitResult(None, Method.CLASSIC_MME, False, diag)
    a_hat = 3.0 * V * V / (K - 3.0 * V * V)
    b_hat = K / (3.0 * V) - V
    return FitResult(Params(a_hat, b_hat, ms.center), Method.CLASSIC_MME, True, diag)


# ----------------------------- L 함수 -----------------------------
# [ANCHOR:L_FUNCTION]
# 큰 a 에서는 lnΓ 차분이 상쇄오차로 L − ½ln(π/2) ≈ 1/(8a) 를 덮어버리므로 점근전개 사용
_L_SERIES_FROM = 25.0


def L(a: float) -> float:
    """L(a) = ½ln(π/2) + ½ln a + lnΓ(a) − lnΓ(a+½), (0,∞) → (½ln(π/2), ∞) 감소."""
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"L requires a > 0, got {a!r}")
    if a >= _L_SERIES_FROM:
        r = 1.0 / a
        r2 = r * r
        return HALF_LN_PI_2 + r * (1.0 / 8.0 + r2 * (-1.0 / 192.0 + r2 * (1.0 / 640.0 - r2 * 17.0 / 14336.0)))
    return HALF_LN_PI_2 + 0.5 * math.log(a) + log_gamma(a) - log_gamma(a + 0.5)


def L_prime(a: float) -> float:
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"L_prime requires a > 0, got {a!r}")
    if a >= _L_SERIES_FROM:
        r2 = 1.0 / (a * a)
        return r2 * (-1.0 / 8.0 + r2 * (1.0 / 64.0 + r2 * (-1.0 / 128.0 + r2 * 17.0 / 2048.0)))
    return 0.5 / a + digamma(a) - digamma(a + 0.5)


def ell(u: float) -> float:
    """L 의 역함수. 치역 하한 근처(정규 극한)와 브래킷 상한 초과는 예외."""
    u = float(u)
    if not math.isfinite(u) or u <= HALF_LN_PI_2 + TOL_BOUNDARY:
        raise InfeasibleError(
            f"u={u!r} outside range of L (must exceed 0.5*ln(pi/2)={HALF_LN_PI_2:.12g})",
            condition=COND_MODIFIED,
        )
    f = lambda a: L(a) - u

    # 브래킷: a=1 에서 위로 두 배, 아래로 절반
    lo, hi = 1.0, 1.0
    if f(1.0) > 0.0:
        while f(hi) > 0.0:
            lo = hi
            hi *= 2.0
            if hi > ELL_A_CAP:
                raise BoundaryError(
                    f"ell bracket exceeded cap a={ELL_A_CAP:g} for u={u!r}",
                    condition=COND_BOUNDARY,
                    diagnostics={"u": u, "a_lo": lo, "a_cap": ELL_A_CAP, "L_gap": u - HALF_LN_PI_2},
                )
    else:
        while f(lo) < 0.0:
            hi = lo
            lo *= 0.5
            if lo < ELL_A_FLOOR:  # pragma: no cover - L(0+) = ∞
                raise BoundaryError(f"ell bracket underflow for u={u!r}", condition=COND_BOUNDARY,
                                    diagnostics={"u": u})
    if f(lo) == 0.0:
        return lo
    if f(hi) == 0.0:
        return hi
    return float(brentq(f, lo, hi, xtol=1e-300, rtol=4.0 * np.finfo(float).eps, maxiter=500))


# ----------------------------- 수정 MME -----------------------------
# [ANCHOR:MODIFIED_MME]
def modified_mme(ms: MomentSummary) -> FitResult:
    V, A = ms.V, ms.A
    u = _ratio(ms)
    diag: Dict[str, Any] = {"V": V, "A": A, "L_target": u, "known_m": ms.known_m is not None}
    if not feasibility_modified(ms):
        diag["condition"] = COND_MODIFIED
        return FitResult(None, Method.MODIFIED_MME, False, diag)
    try:
        a_hat = ell(u)
    except BoundaryError as e:
        diag["condition"] = COND_BOUNDARY
        diag.update(e.diagnostics)
        log.debug("[MME] ell boundary u=%.6g", u)
        return FitResult(None, Method.MODIFIED_MME, False, diag)
    return FitResult(Params(a_hat, V / a_hat, ms.center), Method.MODIFIED_MME, True, diag)


# ----------------------------- 디스패처 -----------------------------
# [ANCHOR:FIT]
def fit(s: Sample, method: Any, known_m: Optional[float] = None, mle_cfg: Any = None) -> FitResult:
    """CLI / simlab 공통 진입점. method: Method 또는 문자열."""
    meth = method if isinstance(method, Method) else Method.parse(method)
    if meth is Method.MLE:
        # mle 는 mme 를 import 하므로 지연 import
        try:
            from vgfit.estimate.mle import fit_mle
        except Exception:  # pragma: no cover
            from estimate.mle import fit_mle  # type: ignore
        return fit_mle(s, mle_cfg, known_m=known_m)
    ms = summarize(s, known_m)
    if meth is Method.CLASSIC_MME:
        return classic_mme(ms)
    return modified_mme(ms)
