# -*- coding: utf-8 -*-
"""
간단 ENV 체인 로더
- 우선순위: os.environ > vgfit.env > .env
- 파일이 없으면 무시. 파싱은 python-dotenv
"""
from __future__ import annotations
import os
from typing import Dict, Tuple

from dotenv import dotenv_values


# [ANCHOR:ENV_LOADER]
def _parse_env_file(path: str) -> Dict[str, str]:
    if not os.path.exists(path):
        return {}
    return {k: v for k, v in dotenv_values(path).items() if k and v is not None}


def load_env_chain(paths: Tuple[str, ...] = ("vgfit.env", ".env")) -> Dict[str, str]:
    # 1) 시작은 현재 OS 환경을 복사
    env: Dict[str, str] = dict(os.environ)

    # 2) vgfit.env → .env 순서로, **존재하지 않는 키만** 주입
    for p in paths:
        for k, v in _parse_env_file(p).items():
            if k not in env or env.get(k) in (None, ""):
                os.environ[k] = v
                env[k] = v

    return env
