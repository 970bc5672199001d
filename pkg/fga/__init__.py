from importlib.metadata import version

__version__ = version("free-group-growth")

__all__ = [
    "engine",
    "constructions",
    "invariants",
    "lamination",
    "__version__",
]
