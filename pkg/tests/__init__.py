"""Tests package"""

