"""
Модуль конфигурации GRASP.
Загружает переменные окружения из .env файла.
"""

import os
import sys
from pathlib import Path
from dotenv import load_dotenv

# Загружаем переменные окружения
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("true", "1", "yes", "on")


class Config:
    """Класс для хранения конфигурации выравнивания и бенчмарка."""

    # Параметры алгоритма по умолчанию
    GRASP_K: int = int(os.getenv("GRASP_K", "20"))
    GRASP_Q: int = int(os.getenv("GRASP_Q", "100"))
    GRASP_T_MIN: float = float(os.getenv("GRASP_T_MIN", "0.1"))
    GRASP_T_MAX: float = float(os.getenv("GRASP_T_MAX", "50"))
    GRASP_MU: float = float(os.getenv("GRASP_MU", "0.132"))
    GRASP_MATCHER: str = os.getenv("GRASP_MATCHER", "jv").strip().lower()
    GRASP_BASE_ALIGN: bool = _env_bool("GRASP_BASE_ALIGN", "true")
    GRASP_TIME_SCALE: str = os.getenv("GRASP_TIME_SCALE", "linear").strip().lower()

    # Собственные пары: до этого размера плотное разложение, дальше Ланцош
    DENSE_EIGEN_LIMIT: int = int(os.getenv("DENSE_EIGEN_LIMIT", "3000"))

    # Оптимизация поворота базиса
    ROTATION_MAX_ITERATIONS: int = int(os.getenv("ROTATION_MAX_ITERATIONS", "300"))
    ROTATION_GRAD_TOL: float = float(os.getenv("ROTATION_GRAD_TOL", "1e-6"))

    # Настройки логирования
    ENABLE_LOGGING: bool = _env_bool("ENABLE_LOGGING", "true")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO").strip().upper()
    LOG_FILE: str = os.getenv("LOG_FILE", "logs/grasp.log")

    # Кэш шагов 1-3
    ENABLE_CACHE: bool = _env_bool("ENABLE_CACHE", "false")
    CACHE_PATH: str = os.getenv("CACHE_PATH", "data/spectra.db")

    # Часовой пояс для меток времени в результатах
    TIMEZONE: str = os.getenv("TIMEZONE", "UTC")

    # Количество процессов бенчмарка (0 = все доступные)
    BENCH_JOBS: int = int(os.getenv("BENCH_JOBS", "0"))

    @classmethod
    def validate(cls) -> bool:
        """
        Проверяет, что параметры конфигурации согласованы.

        Returns:
            bool: True если конфигурация валидна, иначе False
        """
        if cls.GRASP_K < 1:
            print("❌ Ошибка: GRASP_K должен быть >= 1", file=sys.stderr)
            return False

        if cls.GRASP_Q < 1:
            print("❌ Ошибка: GRASP_Q должен быть >= 1", file=sys.stderr)
            return False

        if not 0 < cls.GRASP_T_MIN < cls.GRASP_T_MAX:
            print("❌ Ошибка: нужно 0 < GRASP_T_MIN < GRASP_T_MAX", file=sys.stderr)
            return False

        if cls.GRASP_MU < 0:
            print("❌ Ошибка: GRASP_MU не может быть отрицательным", file=sys.stderr)
            return False

        if cls.GRASP_MATCHER not in ("jv", "nn", "greedy"):
            print(f"❌ Ошибка: неизвестный GRASP_MATCHER={cls.GRASP_MATCHER}", file=sys.stderr)
            return False

        if cls.GRASP_TIME_SCALE not in ("linear", "log"):
            print(f"❌ Ошибка: неизвестный GRASP_TIME_SCALE={cls.GRASP_TIME_SCALE}", file=sys.stderr)
            return False

        if cls.BENCH_JOBS < 0:
            print("❌ Ошибка: BENCH_JOBS не может быть отрицательным", file=sys.stderr)
            return False

        # Создаем директории если их нет
        if cls.LOG_FILE:
            Path(cls.LOG_FILE).parent.mkdir(parents=True, exist_ok=True)
        Path(cls.CACHE_PATH).parent.mkdir(parents=True, exist_ok=True)

        return True

    @classmethod
    def bench_jobs(cls) -> int:
        """Возвращает число процессов для бенчмарка."""
        if cls.BENCH_JOBS > 0:
            return cls.BENCH_JOBS
        return os.cpu_count() or 1


# Экспортируем экземпляр конфигурации
config = Config()
