"""Integration tests package"""

