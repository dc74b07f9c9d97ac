"""Exact-rational variation of GIT quotients for torus actions on P(V).

Five layers:

* :mod:`vgit.polycore` - exact linear algebra, hulls, metric projection,
  hyperplane-arrangement cells;
* :mod:`vgit.stability` - states, linearizations, the instability measure,
  adapted one-parameter subgroups, the Hesselink stratification;
* :mod:`vgit.gitfan` - stability regions, walls, chambers, GIT classes,
  the GIT fan with its inclusion poset;
* :mod:`vgit.fibers` - nilcone components, graded invariant monoids,
  Hilbert bases, weighted-projective classification of quotient-map fibers;
* :mod:`vgit.cli` - the batch command line front end.
"""

from .polycore import (
    GramForm,
    Hyperplane,
    InputError,
    Location,
    PreconditionError,
    QPolytope,
    QVector,
    ResourceLimitError,
    arrangement_cells,
    boundary_distance_sq,
    conv_hull,
    hull_locate,
    primitive,
    project_metric,
)
from .stability import (
    Linearization,
    OneParamSubgroup,
    SignedMeasure,
    Stability,
    State,
    StateFamily,
    Stratum,
    WeightSystem,
    adapted_lps,
    classify_state,
    limit_state,
    measure_M,
    mu,
    stratify,
)

__all__ = [
    "GramForm", "Hyperplane", "InputError", "Location", "PreconditionError",
    "QPolytope", "QVector", "ResourceLimitError", "arrangement_cells",
    "boundary_distance_sq", "conv_hull", "hull_locate", "primitive",
    "project_metric",
    "Linearization", "OneParamSubgroup", "SignedMeasure", "Stability",
    "State", "StateFamily", "Stratum", "WeightSystem", "adapted_lps",
    "classify_state", "limit_state", "measure_M", "mu", "stratify",
]
