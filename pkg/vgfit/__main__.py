# -*- coding: utf-8 -*-
"""python -m vgfit"""
import sys

from vgfit.cli import main

sys.exit(main())
