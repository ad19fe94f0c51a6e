# -*- coding: utf-8 -*-
"""
ENV 값 읽기
- 값 뒤의 '# 주석' 과 좌우 공백 제거, 빈 값은 미설정으로 취급
- env_int 는 '1e6', '12.0' 같은 실수 표기도 허용, 해석 실패 시 default
"""
from __future__ import annotations

import os
from typing import Optional


def _strip(raw: Optional[str]) -> Optional[str]:
    if raw is None:
        return None
    return raw.split("#", 1)[0].strip()


def env_str(key: str, default: Optional[str] = None) -> Optional[str]:
    v = _strip(os.getenv(key))
    return v if v else default


def env_int(key: str, default: Optional[int] = None) -> Optional[int]:
    v = env_str(key)
    if v is None:
        return default
    try:
        return int(float(v))
    except (TypeError, ValueError, OverflowError):
        return default
