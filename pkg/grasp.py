"""
Точка входа GRASP.
Проверка конфигурации и запуск команды командной строки.
"""

import sys

from src.config import config
from src.logger import logger
from src.handlers import main


def run() -> int:
    """
    Главная функция запуска CLI.
    """
    # Валидация конфигурации
    if not config.validate():
        logger.error("Configuration validation failed. Please check your .env file.")
        return 1

    logger.debug(
        f"Defaults: k={config.GRASP_K}, q={config.GRASP_Q}, t=[{config.GRASP_T_MIN}, {config.GRASP_T_MAX}], "
        f"mu={config.GRASP_MU}, matcher={config.GRASP_MATCHER}, base_align={config.GRASP_BASE_ALIGN}"
    )
    return main()


if __name__ == "__main__":
    try:
        sys.exit(run())
    except KeyboardInterrupt:
        logger.info("Stopped by user (KeyboardInterrupt)")
        sys.exit(130)
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        sys.exit(1)
