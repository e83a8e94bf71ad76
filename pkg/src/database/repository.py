"""
Модуль для работы с базой данных SQLite.
Реализует паттерн Repository для кэша предвычислений (шаги 1-3).
"""

import io
import json
import sqlite3
from contextlib import contextmanager
from datetime import datetime
from typing import Any, Dict, Optional, Tuple

import numpy as np
import pytz

from src.config import config
from src.errors import CacheError
from src.logger import logger


def _to_blob(array: np.ndarray) -> bytes:
    buf = io.BytesIO()
    np.save(buf, np.asarray(array), allow_pickle=False)
    return buf.getvalue()


def _from_blob(blob: bytes) -> np.ndarray:
    return np.load(io.BytesIO(blob), allow_pickle=False)


class SpectralCacheRepository:
    """Репозиторий для спектров, соответствующих функций и поворотов базиса."""

    def __init__(self, db_path: str):
        """
        Инициализирует репозиторий.

        Args:
            db_path: Путь к файлу базы данных (":memory:" не поддерживается между подключениями)
        """
        self.db_path = db_path
        self._init_db()

    @contextmanager
    def _get_connection(self):
        """
        Контекстный менеджер для работы с подключением к БД.

        Yields:
            sqlite3.Connection: Подключение к базе данных
        """
        try:
            conn = sqlite3.connect(self.db_path)
        except sqlite3.Error as e:
            raise CacheError(f"Cannot open cache {self.db_path}: {e}") from e
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except sqlite3.Error as e:
            conn.rollback()
            logger.error(f"Database error: {e}")
            raise CacheError(str(e)) from e
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()

    def _init_db(self) -> None:
        """Создает таблицы spectra и rotations если их нет."""
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS spectra (
                    graph_hash TEXT NOT NULL,
                    params_key TEXT NOT NULL,
                    eigenvalues BLOB NOT NULL,
                    eigenvectors BLOB NOT NULL,
                    descriptors BLOB NOT NULL,
                    created_at TIMESTAMP NOT NULL,
                    PRIMARY KEY (graph_hash, params_key)
                )
            """)
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS rotations (
                    source_hash TEXT NOT NULL,
                    target_hash TEXT NOT NULL,
                    params_key TEXT NOT NULL,
                    rotation BLOB NOT NULL,
                    objective_trace TEXT NOT NULL,
                    converged BOOLEAN NOT NULL,
                    iterations INTEGER NOT NULL,
                    created_at TIMESTAMP NOT NULL,
                    PRIMARY KEY (source_hash, target_hash, params_key)
                )
            """)
            logger.debug(f"Cache initialized at {self.db_path}")

    @staticmethod
    def params_key(params: Dict[str, Any]) -> str:
        """Стабильный ключ из словаря параметров."""
        return json.dumps(params, sort_keys=True)

    @staticmethod
    def _now() -> datetime:
        return datetime.now(pytz.timezone(config.TIMEZONE))

    def get_spectrum(
        self,
        graph_hash: str,
        params: Dict[str, Any]
    ) -> Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """
        Возвращает спектр и соответствующие функции графа.

        Args:
            graph_hash: Отпечаток графа
            params: Параметры шагов 1-2

        Returns:
            Optional[Tuple]: (eigenvalues, eigenvectors, descriptors) или None
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "SELECT eigenvalues, eigenvectors, descriptors FROM spectra "
                "WHERE graph_hash = ? AND params_key = ?",
                (graph_hash, self.params_key(params))
            )
            row = cursor.fetchone()
            if row is None:
                logger.debug(f"Spectrum cache miss: {graph_hash[:12]}")
                return None
            logger.info(f"Spectrum cache hit: {graph_hash[:12]}")
            return _from_blob(row["eigenvalues"]), _from_blob(row["eigenvectors"]), _from_blob(row["descriptors"])

    def put_spectrum(
        self,
        graph_hash: str,
        params: Dict[str, Any],
        eigenvalues: np.ndarray,
        eigenvectors: np.ndarray,
        descriptors: np.ndarray
    ) -> None:
        """Сохраняет спектр и соответствующие функции графа."""
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "INSERT OR REPLACE INTO spectra "
                "(graph_hash, params_key, eigenvalues, eigenvectors, descriptors, created_at) "
                "VALUES (?, ?, ?, ?, ?, ?)",
                (
                    graph_hash,
                    self.params_key(params),
                    _to_blob(eigenvalues),
                    _to_blob(eigenvectors),
                    _to_blob(descriptors),
                    self._now().isoformat()
                )
            )

    def get_rotation(
        self,
        source_hash: str,
        target_hash: str,
        params: Dict[str, Any]
    ) -> Optional[Dict[str, Any]]:
        """
        Возвращает сохранённый поворот базиса для пары графов.

        Returns:
            Optional[Dict]: Поля M, objective_trace, converged, iterations или None
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "SELECT rotation, objective_trace, converged, iterations FROM rotations "
                "WHERE source_hash = ? AND target_hash = ? AND params_key = ?",
                (source_hash, target_hash, self.params_key(params))
            )
            row = cursor.fetchone()
            if row is None:
                return None
            logger.info(f"Rotation cache hit: {source_hash[:12]} -> {target_hash[:12]}")
            return {
                "M": _from_blob(row["rotation"]),
                "objective_trace": json.loads(row["objective_trace"]),
                "converged": bool(row["converged"]),
                "iterations": int(row["iterations"]),
            }

    def put_rotation(
        self,
        source_hash: str,
        target_hash: str,
        params: Dict[str, Any],
        M: np.ndarray,
        objective_trace: list,
        converged: bool,
        iterations: int
    ) -> None:
        """Сохраняет поворот базиса для пары графов."""
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                "INSERT OR REPLACE INTO rotations "
                "(source_hash, target_hash, params_key, rotation, objective_trace, converged, iterations, created_at) "
                "VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                (
                    source_hash,
                    target_hash,
                    self.params_key(params),
                    _to_blob(M),
                    json.dumps([float(v) for v in objective_trace]),
                    bool(converged),
                    int(iterations),
                    self._now().isoformat()
                )
            )

    def count_entries(self) -> Dict[str, int]:
        """
        Возвращает количество записей в таблицах (для отладки).

        Returns:
            Dict[str, int]: Число спектров и поворотов
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT COUNT(*) AS count FROM spectra")
            spectra = cursor.fetchone()["count"]
            cursor.execute("SELECT COUNT(*) AS count FROM rotations")
            rotations = cursor.fetchone()["count"]
            return {"spectra": int(spectra), "rotations": int(rotations)}

    def clear(self) -> int:
        """
        Удаляет все записи кэша.

        Returns:
            int: Количество удалённых записей
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("DELETE FROM spectra")
            deleted = cursor.rowcount
            cursor.execute("DELETE FROM rotations")
            deleted += cursor.rowcount
            logger.info(f"Cache cleared: {deleted} records deleted")
            return deleted


def open_cache(db_path: Optional[str] = None) -> SpectralCacheRepository:
    """Открывает кэш по пути из конфигурации (или заданному)."""
    return SpectralCacheRepository(db_path or config.CACHE_PATH)
