"""
Модуль для работы с базой данных.
"""

from src.database.repository import SpectralCacheRepository, open_cache

__all__ = ["SpectralCacheRepository", "open_cache"]
