"""
GRASP - выравнивание вершин графов через спектральные функциональные отображения.
"""

__version__ = "1.0.0"
