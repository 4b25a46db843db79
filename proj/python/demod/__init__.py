"""Deduction-modulo proof kernel: text-in/text-out bindings."""

try:
    from ._core import *  # installed wheel: demod/_core.so
except ImportError:  # build tree: pymod/_core.so on PYTHONPATH
    from _core import *  # noqa: F401,F403

__all__ = [
    "check",
    "sn",
    "normalize",
    "translate",
    "obligations",
    "realize",
    "eval",
    "encode",
    "decode",
    "emit_s",
]
