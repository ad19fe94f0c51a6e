# -*- coding: utf-8 -*-
"""
vgfit: 대칭 variance-gamma(generalized Laplace) 분포 모수 추정
- 고전/수정 적률추정(MME), 최우추정(MLE)
- 델타법 점근 공분산, 몬테카를로 재현 하니스
"""
__version__ = "0.1.0"
