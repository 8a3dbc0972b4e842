"""
Main API router for v1 endpoints
"""

from fastapi import APIRouter

from src.api.v1.endpoints import contests

api_router = APIRouter()

# Include all endpoint routers
api_router.include_router(contests.router, prefix="/contests", tags=["contests"])
