"""Exact modular Lie algebra computations at desk scale.

Thin wrapper over the C++ extension ``_kwlie``: family builders, coadjoint
index, restricted closures, enveloping-algebra isomorphism witnesses and
MeatAxe sweeps of reduced enveloping algebras.
"""

try:
    from ._kwlie import *  # noqa: F401,F403
    from ._kwlie import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree builds put the extension next to the package
    from _kwlie import *  # noqa: F401,F403

__all__ = [
    "family",
    "validate",
    "index",
    "closure_dims",
    "restrictable",
    "iso_check",
    "chop_regular",
    "kw1_sweep",
    "run_cli",
    "KwlieError",
]
