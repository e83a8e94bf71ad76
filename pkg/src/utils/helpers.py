"""
Вспомогательные функции: разбор списков из флагов, зерна экспериментов,
чтение и запись CSV с парами вершин, форматирование таблиц.
"""

import hashlib
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
import pandas as pd

from src.core.assignment import Alignment
from src.core.graph import Graph
from src.errors import OutputError

PAIR_HEADER = ("g1_node", "g2_node")

PathLike = Union[str, Path]


def derive_seed(base_seed: int, noise: float, trial: int, role: str) -> int:
    """
    Детерминированное зерно из (base_seed, noise*1000, trial, role).

    Args:
        base_seed: Базовое зерно эксперимента
        noise: Уровень шума
        trial: Номер повтора
        role: Назначение зерна (source, perm, target)

    Returns:
        int: Зерно в диапазоне [0, 2^63)
    """
    key = f"{base_seed}:{int(round(noise * 1000))}:{trial}:{role}"
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % (2 ** 63)


def parse_float_list(text: str) -> List[float]:
    """Разбирает список чисел через запятую: "0.05,0.1" -> [0.05, 0.1]."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("empty list")
    return [float(item) for item in items]


def parse_int_list(text: str) -> List[int]:
    """Разбирает список целых через запятую."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("empty list")
    return [int(item) for item in items]


def parse_on_off(text: str) -> bool:
    value = text.strip().lower()
    if value in ("on", "true", "1", "yes"):
        return True
    if value in ("off", "false", "0", "no"):
        return False
    raise ValueError(f"expected on/off, got '{text}'")


def on_off(flag: bool) -> str:
    return "on" if flag else "off"


def parse_variants(text: str) -> List[Tuple[str, bool]]:
    """
    Разбирает варианты "matcher:on|off" через запятую.

    Пример: "jv:on,nn:on,jv:off" -> [("jv", True), ("nn", True), ("jv", False)]
    """
    variants: List[Tuple[str, bool]] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        matcher, _, flag = item.partition(":")
        variants.append((matcher.strip().lower(), parse_on_off(flag or "on")))
    if not variants:
        raise ValueError("empty variant list")
    return variants


def write_pairs_csv(path: PathLike, pairs: List[Tuple[str, str]]) -> None:
    """Пишет CSV с заголовком g1_node,g2_node."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(pairs, columns=list(PAIR_HEADER)).to_csv(path, index=False)
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e


def write_alignment_csv(path: PathLike, g1: Graph, g2: Graph, alignment: Alignment) -> None:
    """
    Сохраняет выравнивание с исходными метками вершин обоих графов.

    Args:
        path: Путь к файлу
        g1: Первый граф
        g2: Второй граф
        alignment: Выравнивание
    """
    pairs = [(g1.label(i), g2.label(int(u))) for i, u in enumerate(alignment.mapping)]
    write_pairs_csv(path, pairs)


def write_truth_csv(path: PathLike, truth: np.ndarray) -> None:
    """Сохраняет эталонное соответствие в индексах вершин."""
    write_pairs_csv(path, [(str(i), str(int(u))) for i, u in enumerate(truth)])


def read_pairs_csv(path: PathLike) -> Dict[str, str]:
    """
    Читает CSV с парами g1_node,g2_node.

    Args:
        path: Путь к файлу

    Returns:
        Dict[str, str]: Метка вершины G1 -> метка вершины G2
    """
    # Лишнее поле в строке - ParserError, пустой файл - EmptyDataError (оба ValueError)
    frame = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding="utf-8")
    header = tuple(str(cell).strip() for cell in frame.iloc[0]) if len(frame) else ()
    if header != PAIR_HEADER:
        raise ValueError(f"{path}: expected header {','.join(PAIR_HEADER)}")

    rows = frame.iloc[1:].fillna("")
    sources = rows[0].str.strip()
    targets = rows[1].str.strip()
    if (sources == "").any() or (targets == "").any():
        raise ValueError(f"{path}: expected 2 non-empty columns in every row")
    duplicated = sources[sources.duplicated()]
    if len(duplicated):
        raise ValueError(f"{path}: duplicate node '{duplicated.iloc[0]}'")
    return dict(zip(sources, targets))


def pairs_accuracy(alignment: Dict[str, str], truth: Dict[str, str]) -> float:
    """
    Доля вершин из эталона, сопоставленных так же.
    Наборы вершин G1 в обоих файлах должны совпадать.
    """
    if set(alignment) != set(truth):
        missing = sorted(set(truth) - set(alignment))[:3]
        extra = sorted(set(alignment) - set(truth))[:3]
        raise ValueError(f"Node labels differ between files (missing: {missing}, unknown: {extra})")
    if not truth:
        raise ValueError("Ground truth is empty")
    hits = sum(1 for node, target in truth.items() if alignment[node] == target)
    return hits / len(truth)


def format_mean_table(frame: pd.DataFrame, by: List[str]) -> str:
    """
    Таблица средней точности по группам для вывода в консоль.

    Args:
        frame: Строки результатов бенчмарка
        by: Колонки группировки

    Returns:
        str: Отформатированная таблица
    """
    table = frame.groupby(by, sort=True)["accuracy"].agg(["mean", "std", "count"]).reset_index()
    table["std"] = table["std"].fillna(0.0)
    return table.to_string(index=False, float_format=lambda value: f"{value:.4f}")
