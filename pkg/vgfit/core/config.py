# -*- coding: utf-8 -*-
"""
설정 로더
- 우선순위: 설정 파일(key=value) > 명시적 플래그 > os.environ > 기본값
- 설정 파일 키는 CLI 플래그 이름과 같다 (a_values, max_iter, ...)
"""
from __future__ import annotations

import logging
import os
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Tuple

from dotenv import dotenv_values

try:
    from vgfit.core.errors import DomainError, UsageError
    from vgfit.estimate.mle import MleConfig
    from vgfit.simlab.runner import DEFAULT_SEED, SimGrid
    from vgfit.utils.env import env_str
except Exception:  # pragma: no cover
    from core.errors import DomainError, UsageError  # type: ignore
    from estimate.mle import MleConfig  # type: ignore
    from simlab.runner import DEFAULT_SEED, SimGrid  # type: ignore
    from utils.env import env_str  # type: ignore

log = logging.getLogger("vgfit.cfg")

Source = Optional[Mapping[str, Any]]


# [ANCHOR:CFG_FILE]
def _norm_key(k: str) -> str:
    return k.strip().replace("-", "_")


def read_config_file(path: str, allowed_keys: Optional[Iterable[str]] = None) -> Dict[str, str]:
    """key=value 파일 파싱. allowed_keys 밖의 키는 UsageError."""
    if not os.path.exists(path):
        raise UsageError(f"config file not found: {path}")
    raw = dotenv_values(path)
    out: Dict[str, str] = {}
    for k, v in raw.items():
        if not k:
            continue
        if v is None:
            raise UsageError(f"config key {k!r} has no value ({path})")
        out[_norm_key(k)] = v.split("#", 1)[0].strip()
    if allowed_keys is not None:
        allowed = {_norm_key(k) for k in allowed_keys}
        unknown = sorted(set(out) - allowed)
        if unknown:
            raise UsageError(f"unknown config key(s) {unknown} in {path}")
    log.debug("[CFG] %s keys=%s", path, sorted(out))
    return out


# [ANCHOR:CFG_LOADER]
def _pick(key: str, env_key: Optional[str], cfg_file: Source, flags: Source) -> Optional[Any]:
    for src in (cfg_file, flags):
        if src is not None:
            v = src.get(key)
            if v not in (None, ""):
                return v
    return env_str(env_key, None) if env_key else None


def _cast(key: str, v: Any, caster: Callable[[Any], Any]) -> Any:
    try:
        return caster(v)
    except (TypeError, ValueError) as e:
        raise UsageError(f"invalid value for {key}: {v!r} ({e})")


def as_bool(v: Any) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "y", "on"):
        return True
    if s in ("0", "false", "no", "n", "off"):
        return False
    raise ValueError("expected a boolean")


def as_int(v: Any) -> int:
    f = float(v)
    if f != int(f):
        raise ValueError("expected an integer")
    return int(f)


def as_float_list(v: Any) -> Tuple[float, ...]:
    if isinstance(v, (list, tuple)):
        return tuple(float(x) for x in v)
    parts = [p.strip() for p in str(v).split(",") if p.strip()]
    if not parts:
        raise ValueError("empty list")
    return tuple(float(p) for p in parts)


def as_int_list(v: Any) -> Tuple[int, ...]:
    return tuple(as_int(x) for x in as_float_list(v))


_MLE_KEYS = (
    # (필드, 파일/플래그 키, ENV 키, 변환)
    ("clamp_param", "mle_clamp_param", "MLE_CLAMP_PARAM", float),
    ("clamp_sigma_nu", "mle_clamp_sigma_nu", "MLE_CLAMP_SIGMA_NU", float),
    ("max_iter", "mle_max_iter", "MLE_MAX_ITER", as_int),
    ("xatol", "mle_xatol", "MLE_XATOL", float),
    ("fatol", "mle_fatol", "MLE_FATOL", float),
    ("log_param", "mle_log_param", "MLE_LOG_PARAM", as_bool),
)

_SIM_KEYS = (
    ("a_values", "a_values", "SIM_A_VALUES", as_float_list),
    ("b_values", "b_values", "SIM_B_VALUES", as_float_list),
    ("N", "N", "SIM_N", as_int),
    ("k", "k", "SIM_K", as_int),
    ("m_true", "m_true", "SIM_M_TRUE", float),
    ("m_known", "m_known", "SIM_M_KNOWN", as_bool),
    ("seed", "seed", "VGFIT_SEED", as_int),
    ("threads", "threads", "SIM_THREADS", as_int),
)


def _collect(table, cfg_file: Source, flags: Source) -> Dict[str, Any]:
    kw: Dict[str, Any] = {}
    for fld, key, env_key, caster in table:
        v = _pick(key, env_key, cfg_file, flags)
        if v is not None:
            kw[fld] = _cast(key, v, caster)
    return kw


def load_mle_cfg(cfg_file: Source = None, flags: Source = None) -> MleConfig:
    """
    ENV 키: MLE_CLAMP_PARAM, MLE_CLAMP_SIGMA_NU, MLE_MAX_ITER, MLE_XATOL, MLE_FATOL, MLE_LOG_PARAM
    """
    kw = _collect(_MLE_KEYS, cfg_file, flags)
    try:
        return MleConfig(**kw)
    except DomainError as e:
        raise UsageError(str(e))


def load_sim_cfg(cfg_file: Source = None, flags: Source = None) -> SimGrid:
    """
    ENV 키: SIM_A_VALUES, SIM_B_VALUES, SIM_N, SIM_K, SIM_M_TRUE, SIM_M_KNOWN, VGFIT_SEED, SIM_THREADS
    (예: SIM_A_VALUES="0.25,0.5,1,2,3")
    """
    kw = _collect(_SIM_KEYS, cfg_file, flags)
    try:
        return SimGrid(**kw)
    except DomainError as e:
        raise UsageError(str(e))


def default_seed() -> int:
    v = env_str("VGFIT_SEED", None)
    return DEFAULT_SEED if v is None else _cast("VGFIT_SEED", v, as_int)
