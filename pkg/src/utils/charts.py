"""
Модуль для построения графиков результатов бенчмарка через matplotlib.
"""

import io

import matplotlib
matplotlib.use('Agg')  # Используем backend без GUI
import matplotlib.pyplot as plt
import pandas as pd

from src.logger import logger

# Настройка стиля графиков
try:
    if 'seaborn-v0_8-darkgrid' in plt.style.available:
        plt.style.use('seaborn-v0_8-darkgrid')
    elif 'seaborn-darkgrid' in plt.style.available:
        plt.style.use('seaborn-darkgrid')
    else:
        plt.style.use('default')
except (OSError, ValueError):
    plt.style.use('default')
plt.rcParams['figure.figsize'] = (10, 6)
plt.rcParams['font.size'] = 10
plt.rcParams['axes.labelsize'] = 11
plt.rcParams['axes.titlesize'] = 12

VARIANT_COLORS = ['#4CAF50', '#FF9800', '#2196F3', '#9C27B0', '#F44336', '#607D8B']


def _variant_label(matcher: str, base_align: str) -> str:
    return f"{matcher.upper()}, base align {base_align}"


def _to_png(fig) -> io.BytesIO:
    buf = io.BytesIO()
    fig.savefig(buf, format='png', dpi=100, bbox_inches='tight')
    buf.seek(0)
    plt.close(fig)
    return buf


def create_noise_chart(frame: pd.DataFrame, title: str) -> io.BytesIO:
    """
    Строит кривые средней точности в зависимости от уровня шума, по одной на вариант.

    Args:
        frame: Строки результатов (колонки noise, matcher, base_align, accuracy)
        title: Заголовок графика

    Returns:
        BytesIO: Изображение графика в байтах
    """
    means = frame.groupby(['matcher', 'base_align', 'noise'])['accuracy'].mean().reset_index()

    fig, ax = plt.subplots(figsize=(10, 6))
    for idx, ((matcher, base_align), group) in enumerate(means.groupby(['matcher', 'base_align'], sort=True)):
        group = group.sort_values('noise')
        ax.plot(
            group['noise'], group['accuracy'],
            marker='o', linewidth=2,
            color=VARIANT_COLORS[idx % len(VARIANT_COLORS)],
            label=_variant_label(matcher, base_align)
        )

    ax.set_xlabel('Edge deletion probability p', fontweight='bold')
    ax.set_ylabel('Accuracy', fontweight='bold')
    ax.set_title(title, fontsize=14, fontweight='bold', pad=15)
    ax.set_ylim(0, 1.05)
    ax.grid(alpha=0.3, linestyle='--')
    ax.legend()
    plt.tight_layout()

    logger.debug(f"Noise chart rendered: {len(means)} points")
    return _to_png(fig)


def create_sweep_chart(frame: pd.DataFrame, parameter: str, title: str) -> io.BytesIO:
    """
    Строит кривые средней точности в зависимости от параметра (k или q), по одной на уровень шума.

    Args:
        frame: Строки результатов (колонки parameter, noise, accuracy)
        parameter: Имя изменяемого параметра
        title: Заголовок графика

    Returns:
        BytesIO: Изображение графика в байтах
    """
    means = frame.groupby(['noise', parameter])['accuracy'].mean().reset_index()

    fig, ax = plt.subplots(figsize=(10, 6))
    for idx, (noise, group) in enumerate(means.groupby('noise', sort=True)):
        group = group.sort_values(parameter)
        ax.plot(
            group[parameter], group['accuracy'],
            marker='s', linewidth=2,
            color=VARIANT_COLORS[idx % len(VARIANT_COLORS)],
            label=f"p = {noise:g}"
        )

    ax.set_xlabel(parameter, fontweight='bold')
    ax.set_ylabel('Accuracy', fontweight='bold')
    ax.set_title(title, fontsize=14, fontweight='bold', pad=15)
    ax.set_ylim(0, 1.05)
    ax.grid(alpha=0.3, linestyle='--')
    ax.legend()
    plt.tight_layout()

    return _to_png(fig)
