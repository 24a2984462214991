"""Exact counting of terminalizations over covers of classical nilpotent
orbit closures.

Thin wrapper over the compiled extension: reports come back as dictionaries
parsed from the machine JSON format of the command-line tool.
"""

import json
import os

try:
    from . import _core  # installed layout: the extension sits in the package
except ImportError:  # pragma: no cover - build-tree layout
    import glob
    import importlib.util

    _dir = os.environ.get("ORBITCOVER_MODULE_DIR")
    if not _dir:
        raise
    _candidates = glob.glob(os.path.join(_dir, "_core*.so")) + glob.glob(
        os.path.join(_dir, "_core*.pyd")
    )
    if not _candidates:
        raise ImportError(f"no _core extension under {_dir}")
    _spec = importlib.util.spec_from_file_location(
        __name__ + "._core", _candidates[0]
    )
    _core = importlib.util.module_from_spec(_spec)
    _spec.loader.exec_module(_core)

OrbitCoverError = _core.OrbitCoverError

__version__ = _core.tool_version()

__all__ = [
    "OrbitCoverError",
    "analyze_file",
    "analyze_text",
    "pi1_order",
    "tool_version",
    "x_collapse",
]


def analyze_file(path, max_nodes=-1):
    """Analyze a problem file; returns the report as a dictionary."""
    return json.loads(_core.analyze_file(str(path), max_nodes))


def analyze_text(text, max_nodes=-1):
    """Analyze a problem document given as a string."""
    return json.loads(_core.analyze_text(text, max_nodes))


def x_collapse(family, partition):
    """Collapse of a partition in family 'B', 'C' or 'D'."""
    return list(_core.x_collapse(family, list(partition)))


def pi1_order(family, partition):
    """Fundamental-group order of the orbit ('sp', 'soB' or 'soD')."""
    return _core.pi1_order(family, list(partition))


def tool_version():
    """Version string stamped into every report."""
    return _core.tool_version()
