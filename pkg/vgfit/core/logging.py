# -*- coding: utf-8 -*-
"""
콘솔 로그 + (선택) 로테이션 파일 로그 구성자
ENV:
  LOG_LEVEL, LOG_DIR, LOG_FILE, LOG_MAX_BYTES, LOG_BACKUPS
  LOG_DIR 미설정 시 파일 핸들러 생략
"""
from __future__ import annotations
import os, logging, logging.handlers
from typing import Optional

try:
    from vgfit.utils.env import env_int, env_str
except Exception:  # pragma: no cover
    from utils.env import env_int, env_str  # type: ignore

_FMT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Optional[str] = None) -> None:
    lvl = (level or env_str("LOG_LEVEL", "INFO")).upper()
    log_dir = env_str("LOG_DIR")
    log_file = env_str("LOG_FILE", "vgfit.log")
    max_bytes = env_int("LOG_MAX_BYTES", 10485760)
    backups = env_int("LOG_BACKUPS", 5)

    fmt = logging.Formatter(_FMT)
    root = logging.getLogger()
    root.setLevel(getattr(logging, lvl, logging.INFO))

    # 중복 구성 방지 (CLI 재진입, 테스트)
    if getattr(root, "_vgfit_configured", False):
        return

    # 콘솔 (stdout은 JSON 출력 전용)
    ch = logging.StreamHandler()
    ch.setFormatter(fmt)
    root.addHandler(ch)

    if log_dir:
        try:
            os.makedirs(log_dir, exist_ok=True)
            fh = logging.handlers.RotatingFileHandler(
                os.path.join(log_dir, log_file), maxBytes=max_bytes, backupCount=backups, encoding="utf-8"
            )
            fh.setFormatter(fmt)
            root.addHandler(fh)
        except Exception as e:
            root.warning("[LOG] file handler init failed: %s", e)
    root._vgfit_configured = True  # type: ignore[attr-defined]
