# -*- coding: utf-8 -*-
"""gradus 计算核心"""

__version__ = "1.0.0"
