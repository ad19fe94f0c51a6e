# -*- coding: utf-8 -*-
"""
예외 계층
- DomainError: 인자 정의역 위반 (ValueError 호환)
- InfeasibleError: 적률비가 L 치역 밖 → 추정량 부재
- BoundaryError: ℓ 브래킷 상한 초과
- UsageError: CLI/설정 검증 실패 (exit 2)
"""
from __future__ import annotations
from typing import Any, Dict, Optional


class VgfitError(Exception):
    pass


class DomainError(VgfitError, ValueError):
    pass


class InfeasibleError(VgfitError):
    def __init__(self, message: str, condition: str = "", diagnostics: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.condition = condition
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


class BoundaryError(InfeasibleError):
    pass


class UsageError(VgfitError):
    pass
