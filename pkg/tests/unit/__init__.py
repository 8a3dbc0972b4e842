"""Unit tests package"""

