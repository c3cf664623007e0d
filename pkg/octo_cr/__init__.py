"""octo-cr: 八元数分析的可验证工具集"""

__version__ = "1.0.0"
