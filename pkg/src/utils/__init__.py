"""Utilities package"""

