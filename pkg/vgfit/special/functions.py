# -*- coding: utf-8 -*-
"""
특수함수 커널
- log_gamma, digamma: scipy.special.gammaln / psi 래핑 + 정의역 검증
- log_bessel_k: ln K_ν(x), 지수스케일 kve 기반 (K_ν e^x)
  · kve 가 0/inf 로 넘치면 점근식으로 대체 (x² ≪ ν: 소인수 선도항, 그 외: 큰 차수 Debye 전개)
  · K_ν = K_{-ν} 이므로 |ν| 만 사용
"""
from __future__ import annotations

import math
from typing import Union

import numpy as np
from numpy.typing import NDArray
from scipy.special import gammaln, kve, psi

try:
    from vgfit.core.errors import DomainError
except Exception:  # pragma: no cover
    from core.errors import DomainError  # type: ignore

ArrayLike = Union[float, NDArray[np.float64]]

_LN2 = math.log(2.0)


def as_real_pos(x: float, name: str = "x") -> float:
    """RealPos 검증: 유한한 양의 실수만 통과."""
    try:
        v = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {x!r}")
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {v!r}")
    return v


# [ANCHOR:GAMMA]
def log_gamma(x: float) -> float:
    return float(gammaln(as_real_pos(x, "x")))


def digamma(x: float) -> float:
    return float(psi(as_real_pos(x, "x")))


# [ANCHOR:BESSEL_K]
def _small_x_log_k(nu_abs: NDArray[np.float64], x: NDArray[np.float64]) -> NDArray[np.float64]:
    # K_ν(x) ≈ Γ(ν)/2 · (2/x)^ν  (ν > 0),  K_0(x) ≈ −ln(x/2) − γ
    out = np.empty_like(x)
    pos = nu_abs > 1e-10
    if np.any(pos):
        v = nu_abs[pos]
        out[pos] = gammaln(v) - _LN2 + v * (_LN2 - np.log(x[pos]))
    if np.any(~pos):
        inner = -np.log(x[~pos] / 2.0) - np.euler_gamma
        out[~pos] = np.log(np.maximum(inner, np.finfo(float).tiny))
    return out


def _large_order_log_k(nu: NDArray[np.float64], x: NDArray[np.float64]) -> NDArray[np.float64]:
    # 큰 차수 균등 점근전개 (Debye), u_1..u_3 항까지
    z = x / nu
    s = np.sqrt(1.0 + z * z)
    p = 1.0 / s
    eta = s + np.log(z / (1.0 + s))
    p2 = p * p
    u1 = p * (3.0 - 5.0 * p2) / 24.0
    u2 = p2 * (81.0 - 462.0 * p2 + 385.0 * p2 * p2) / 1152.0
    u3 = p * p2 * (30375.0 - 369603.0 * p2 + 765765.0 * p2 * p2 - 425425.0 * p2 ** 3) / 414720.0
    corr = 1.0 - u1 / nu + u2 / nu ** 2 - u3 / nu ** 3
    return 0.5 * np.log(np.pi / (2.0 * nu)) - nu * eta - 0.5 * np.log(s) + np.log(corr)


def _fallback_log_k(nu_abs: NDArray[np.float64], x: NDArray[np.float64]) -> NDArray[np.float64]:
    # x² ≪ ν 이면 소인수 선도항, 아니면 큰 차수 전개
    out = _small_x_log_k(nu_abs, x)
    big = (x * x > 1e-8 * nu_abs) & (nu_abs > 1.0)
    if np.any(big):
        out[big] = _large_order_log_k(nu_abs[big], x[big])
    return out


def log_bessel_k_array(nu: ArrayLike, x: ArrayLike) -> NDArray[np.float64]:
    """벡터화 ln K_ν(x). x 는 모두 양수여야 한다 (호출측 책임). 0-d 입력은 0-d 배열로 반환."""
    v, z = np.broadcast_arrays(np.abs(np.asarray(nu, dtype=float)), np.asarray(x, dtype=float))
    shape = v.shape
    v = np.atleast_1d(np.array(v, dtype=float))
    z = np.atleast_1d(np.array(z, dtype=float))
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        res = np.atleast_1d(np.log(kve(v, z)) - z)
    bad = ~np.isfinite(res)
    if np.any(bad):
        res[bad] = _fallback_log_k(v[bad], z[bad])
    return res.reshape(shape)


def log_bessel_k(nu: float, x: float) -> float:
    nu_f = float(nu)
    if not math.isfinite(nu_f):
        raise DomainError(f"nu must be finite, got {nu!r}")
    z = as_real_pos(x, "x")
    return float(log_bessel_k_array(nu_f, z)[()])
