"""Local limits of subcritical block-stable graph classes.

Graphs are dicts ``{"n": int, "root": int, "edges": [(u, v), ...]}`` and
graph families use the text syntax of the ``bslimits metric`` command,
e.g. ``"join(ray, star(3))"``.
"""

from ._core import (
    FamilyParseError,
    SingularityData,
    UndefinedGroundFloor,
    bs_leaf_probability,
    builtin_names,
    census,
    core,
    counts,
    distance,
    isomorphic,
    link_mass_by_size,
    links,
    normalise_family,
    profile_size,
    radius,
    sample_limit_chain,
    sample_uniform,
    singularity,
)

__version__ = "0.1.0"

__all__ = [
    "FamilyParseError",
    "SingularityData",
    "UndefinedGroundFloor",
    "bs_leaf_probability",
    "builtin_names",
    "census",
    "core",
    "counts",
    "distance",
    "isomorphic",
    "link_mass_by_size",
    "links",
    "normalise_family",
    "profile_size",
    "radius",
    "sample_limit_chain",
    "sample_uniform",
    "singularity",
]
