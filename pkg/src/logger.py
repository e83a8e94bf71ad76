"""
Модуль для настройки логирования.
Обеспечивает запись логов в файл и вывод в stderr.
"""

import logging
import sys
from pathlib import Path
from src.config import config


def setup_logger() -> logging.Logger:
    """
    Настраивает и возвращает логгер GRASP.

    stdout не используется: туда пишут результаты команд (например, точность в eval).

    Returns:
        logging.Logger: Настроенный логгер
    """
    logger = logging.getLogger("GRASP")
    level = getattr(logging, config.LOG_LEVEL, logging.INFO)
    logger.setLevel(level)
    logger.propagate = False

    # Повторный вызов не должен дублировать хендлеры
    if logger.handlers:
        return logger

    # Если логирование отключено, возвращаем логгер без хендлеров
    if not config.ENABLE_LOGGING:
        logger.addHandler(logging.NullHandler())
        return logger

    formatter = logging.Formatter(
        "[%(asctime)s] %(levelname)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    # Хендлер для записи в файл (пустой LOG_FILE отключает файл)
    if config.LOG_FILE:
        log_path = Path(config.LOG_FILE)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(config.LOG_FILE, encoding="utf-8")
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


# Создаем глобальный экземпляр логгера
logger = setup_logger()
