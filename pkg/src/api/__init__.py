"""API package"""

