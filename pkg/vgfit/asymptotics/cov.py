# -*- coding: utf-8 -*-
"""
점근 공분산 (delta method)
- classic_cov: 닫힌 형태 Σ(a, b)  (variant: corrected | printed)
- classic_cov_delta: J·C·Jᵀ 재구성 (C = (X², X⁴) 적률 공분산)
- modified_cov: J₂·C₂·J₂ᵀ, ℓ'(u) = 1/L'(a)  (mode: centered | paper)
- full_cov: diag(ab, Σ), 순서 (m̂, â, b̂)
MLE 공분산은 범위 밖
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

try:
    from vgfit.core.errors import DomainError
    from vgfit.dist.gen_laplace import Params, population_moments
    from vgfit.estimate.mme import L_prime
except Exception:  # pragma: no cover
    from core.errors import DomainError  # type: ignore
    from dist.gen_laplace import Params, population_moments  # type: ignore
    from estimate.mme import L_prime  # type: ignore

VARIANTS = ("corrected", "printed")
MODES = ("centered", "paper")


@dataclass(frozen=True)
class Cov2:
    aa: float
    ab: float
    bb: float

    def as_array(self) -> NDArray[np.float64]:
        return np.array([[self.aa, self.ab], [self.ab, self.bb]], dtype=float)

    def correlation(self) -> float:
        return self.ab / math.sqrt(self.aa * self.bb)

    def det(self) -> float:
        return self.aa * self.bb - self.ab * self.ab


@dataclass(frozen=True)
class Cov3:
    mm: float
    inner: Cov2

    def as_array(self) -> NDArray[np.float64]:
        out = np.zeros((3, 3), dtype=float)
        out[0, 0] = self.mm
        out[1:, 1:] = self.inner.as_array()
        return out


def _check(a: float, b: float) -> Params:
    # DomainError on invalid (a, b)
    return Params(a, b, 0.0)


# ----------------------------- 고전 MME -----------------------------
# [ANCHOR:CLASSIC_COV]
def classic_cov(a: float, b: float, variant: str = "corrected") -> Cov2:
    """
    N·Cov(â, b̂) 극한. 'printed' 는 b 거듭제곱이 (b², b⁴) 인 옛 닫힌 형태로,
    b = 1 이 아니면 delta 재구성과 어긋난다. 회귀 비교용.
    """
    p = _check(a, b)
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")
    a, b = p.a, p.b
    aa = (2.0 / 3.0) * (4 * a**4 + 36 * a**3 + 95 * a**2 + 63 * a)
    ab = -(2.0 / 3.0) * (4 * a**3 + 36 * a**2 + 101 * a + 69)
    bb = (1.0 / 3.0) * (8 * a**2 + 72 * a + 220 + 159 / a)
    if variant == "printed":
        return Cov2(aa, ab * b * b, bb * b**4)
    return Cov2(aa, ab * b, bb * b * b)


def moment_cov_classic(a: float, b: float) -> NDArray[np.float64]:
    """(X², X⁴) 의 공분산 C (m 기지, 원점 = m)."""
    pm = population_moments(_check(a, b))
    V, K = pm.V, pm.K
    c_vk = pm.M6 - V * K
    return np.array([[K - V * V, c_vk], [c_vk, pm.M8 - K * K]], dtype=float)


def jacobian_classic(a: float, b: float) -> NDArray[np.float64]:
    """∂(a, b)/∂(V, K) 를 모집단 (V, K) 에서 평가."""
    p = _check(a, b)
    a, b = p.a, p.b
    return np.array(
        [
            [2.0 * (a + 1.0) / b, -1.0 / (3.0 * b * b)],
            [-2.0 - 1.0 / a, 1.0 / (3.0 * a * b)],
        ],
        dtype=float,
    )


def classic_cov_delta(a: float, b: float) -> Cov2:
    J = jacobian_classic(a, b)
    S = J @ moment_cov_classic(a, b) @ J.T
    return Cov2(float(S[0, 0]), float(0.5 * (S[0, 1] + S[1, 0])), float(S[1, 1]))


# ----------------------------- 수정 MME -----------------------------
# [ANCHOR:MODIFIED_COV]
def moment_cov_modified(a: float, b: float, mode: str = "centered") -> NDArray[np.float64]:
    """
    (|X−m|, (X−m)²) 의 공분산 C₂.
    centered: [[V−A², T−AV], [T−AV, K−V²]]
    paper:    [[V, T], [T, K]]  (비중심 2차 적률, 회귀용)
    """
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    pm = population_moments(_check(a, b))
    if mode == "paper":
        return np.array([[pm.V, pm.T], [pm.T, pm.K]], dtype=float)
    c = pm.T - pm.A * pm.V
    return np.array([[pm.V - pm.A**2, c], [c, pm.K - pm.V**2]], dtype=float)


def jacobian_modified(a: float, b: float) -> NDArray[np.float64]:
    """∂(a, b)/∂(A, V), â = ℓ(½lnV − lnA), b̂ = V/â."""
    p = _check(a, b)
    pm = population_moments(p)
    a, V, A = p.a, pm.V, pm.A
    ell_prime = 1.0 / L_prime(a)
    da_dA = -ell_prime / A
    da_dV = ell_prime / (2.0 * V)
    db_dA = -V / (a * a) * da_dA
    db_dV = 1.0 / a - V / (a * a) * da_dV
    return np.array([[da_dA, da_dV], [db_dA, db_dV]], dtype=float)


def modified_cov(a: float, b: float, mode: str = "centered") -> Cov2:
    J = jacobian_modified(a, b)
    S = J @ moment_cov_modified(a, b, mode) @ J.T
    return Cov2(float(S[0, 0]), float(0.5 * (S[0, 1] + S[1, 0])), float(S[1, 1]))


# ----------------------------- (m, a, b) -----------------------------
def full_cov(a: float, b: float, estimator: str = "classic", mode: str = "centered",
             variant: str = "corrected") -> Cov3:
    """m 미지: X̄ 는 대칭성으로 (â, b̂) 와 점근 무상관 → 블록 대각."""
    key = str(estimator).strip().lower().replace("-", "_")
    if key in ("classic", "classic_mme"):
        inner = classic_cov(a, b, variant)
    elif key in ("modified", "modified_mme"):
        inner = modified_cov(a, b, mode)
    else:
        raise DomainError(f"asymptotic covariance available for classic|modified only, got {estimator!r}")
    p = _check(a, b)
    return Cov3(p.a * p.b, inner)
