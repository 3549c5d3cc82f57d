"""
InnovRisk - tail risk of autoregressive innovations
"""

__version__ = "1.0.0"
