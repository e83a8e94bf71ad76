import pandas as pd

from src.utils.charts import create_noise_chart, create_sweep_chart

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def bench_frame() -> pd.DataFrame:
    rows = []
    for noise in (0.05, 0.1):
        for k in (10, 20):
            for matcher, base_align in (("jv", "on"), ("nn", "off")):
                rows.append({"noise": noise, "k": k, "matcher": matcher, "base_align": base_align,
                             "accuracy": 0.9 - noise - k / 100})
    return pd.DataFrame(rows)


def test_noise_chart_is_png():
    assert create_noise_chart(bench_frame(), "test").getvalue().startswith(PNG_MAGIC)


def test_sweep_chart_is_png():
    assert create_sweep_chart(bench_frame(), "k", "sweep").getvalue().startswith(PNG_MAGIC)
