"""
Utility modules
"""

