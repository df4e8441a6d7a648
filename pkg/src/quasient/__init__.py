"""quasient - entanglement entropy of quasiparticle excitations in 1D quantum chains."""

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "analysis",
    "ed",
    "freefermion",
    "model",
    "mpsx",
]


def __getattr__(name: str):
    """Lazy import subpackages to keep ``quasient --version`` fast."""
    if name in ("analysis", "ed", "freefermion", "model", "mpsx"):
        import importlib

        return importlib.import_module(f"quasient.{name}")
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
