"""
Исключения GRASP.
Каждое исключение знает модуль, в котором произошла ошибка: CLI печатает его в сообщении.
"""


class GraspError(Exception):
    """Базовая ошибка выравнивания."""

    module = "grasp"


class GraphError(GraspError, ValueError):
    module = "graph_core"


class SpectralError(GraspError, ValueError):
    module = "spectral"


class DescriptorError(GraspError, ValueError):
    module = "descriptors"


class BaseAlignError(GraspError, ValueError):
    module = "base_align"


class FunctionalMapError(GraspError, ValueError):
    module = "functional_map"


class AssignmentError(GraspError, ValueError):
    module = "assignment"


class ParameterError(GraspError, ValueError):
    module = "pipeline"


class BenchError(GraspError, ValueError):
    module = "bench_harness"


class CacheError(GraspError):
    module = "database"


class OutputError(GraspError, OSError):
    module = "output"
