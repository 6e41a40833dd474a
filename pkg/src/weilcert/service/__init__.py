"""Service layer: pydantic schemas and the FastAPI application."""

from .app import app, create_app, handle_hyper, handle_pell, handle_plane, handle_verify

__all__ = [
    "app",
    "create_app",
    "handle_hyper",
    "handle_pell",
    "handle_plane",
    "handle_verify",
]
