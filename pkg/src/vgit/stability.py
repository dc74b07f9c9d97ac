"""The numerical criterion for a torus action.

A point of P(V) is represented combinatorially by its state: the set of
torus weights appearing with nonzero coordinate.  Linearizations are
rational character twists theta.  The convention fixed here and used by the
whole package: a state S is semistable at theta iff theta lies in the
convex hull of S's weights.

The instability measure M is the signed distance from theta to that hull in
the metric dual to the weight system's Gram form: positive (the distance to
the hull) outside, zero on the boundary or whenever the hull is not
full-dimensional, and minus the distance to the boundary when theta is
interior to a full-dimensional hull.  Unstable states have a unique
primitive adapted one-parameter subgroup realizing M, and grouping unstable
states by measure and Weyl orbit of the adapted direction yields the
Hesselink stratification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence, Union

from .polycore import (
    GramForm,
    InputError,
    Location,
    QPolytope,
    QVector,
    ResourceLimitError,
    as_qvector,
    boundary_projection,
    conv_hull,
    mat_rank,
    primitive,
    project_metric,
    rat,
)

IntMatrix = tuple[tuple[int, ...], ...]

ALL_SUBSETS_LIMIT = 16


def _as_int_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def _mat_vec(m: IntMatrix, v: QVector) -> QVector:
    return QVector(tuple(sum((Fraction(m[i][j]) * v[j] for j in range(len(v))),
                             Fraction(0)) for i in range(len(m))))


def _det_int(m: IntMatrix) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    det = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        det += (-1) ** j * m[0][j] * _det_int(minor)
    return det


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _mat_inv_int(m: IntMatrix) -> IntMatrix:
    # determinant is +-1 for lattice automorphisms, so the inverse is integral
    from .polycore import mat_invert
    inv = mat_invert([[Fraction(x) for x in row] for row in m])
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class WeightSystem:
    """A rank-r integer weight multiset with optional Weyl data and form."""

    rank: int
    weights: tuple[tuple[str, QVector], ...]
    weyl: tuple[IntMatrix, ...] = ()
    form: GramForm = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise InputError("rank must be at least 1")
        if not self.weights:
            raise InputError("weight list must be nonempty")
        weights = tuple((str(label), as_qvector(chi))
                        for label, chi in self.weights)
        object.__setattr__(self, "weights", weights)
        labels = [label for label, _ in weights]
        if len(set(labels)) != len(labels):
            raise InputError("weight labels must be unique")
        for label, chi in weights:
            if len(chi) != self.rank:
                raise InputError(
                    f"weight {label!r} has {len(chi)} coordinates, "
                    f"expected {self.rank}")
            if any(c.denominator != 1 for c in chi):
                raise InputError(f"weight {label!r} must be integral")
        weyl = tuple(_as_int_matrix(w) for w in self.weyl)
        object.__setattr__(self, "weyl", weyl)
        form = self.form if self.form is not None else GramForm.identity(self.rank)
        object.__setattr__(self, "form", form)
        if form.rank != self.rank:
            raise InputError("Gram form rank does not match the weight rank")
        self._validate_weyl()

    def _validate_weyl(self) -> None:
        if not self.weyl:
            return
        for w in self.weyl:
            if len(w) != self.rank or any(len(row) != self.rank for row in w):
                raise InputError("Weyl matrix of wrong shape")
            if _det_int(w) not in (1, -1):
                raise InputError("Weyl matrices must have determinant +-1")
        group = set(self.weyl)
        for w in self.weyl:
            if _mat_inv_int(w) not in group:
                raise InputError("Weyl set is not closed under inverse")
            for u in self.weyl:
                if _mat_mul(w, u) not in group:
                    raise InputError("Weyl set is not closed under product")
        chis = sorted((chi.coords for _, chi in self.weights))
        for w in self.weyl:
            mapped = sorted(_mat_vec(w, chi).coords for _, chi in self.weights)
            if mapped != chis:
                raise InputError(
                    "a Weyl matrix does not preserve the weight multiset")
            if not self.form.is_invariant_under(w):
                raise InputError("Gram form is not Weyl-invariant")

    # -- convenience -------------------------------------------------------

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.weights)

    def chi(self, index: int) -> QVector:
        return self.weights[index][1]

    def chis(self, state: "State") -> tuple[QVector, ...]:
        return tuple(sorted((self.chi(i) for i in state.members),
                            key=QVector.key))

    def distinct_chis(self) -> tuple[QVector, ...]:
        return tuple(sorted({chi for _, chi in self.weights}, key=QVector.key))

    def indices_of_chi(self, chi: QVector) -> tuple[int, ...]:
        return tuple(i for i, (_, c) in enumerate(self.weights) if c == chi)

    def state_of_chis(self, chis: Sequence[QVector]) -> "State":
        members = []
        for chi in chis:
            members.extend(self.indices_of_chi(chi))
        return State(frozenset(members))

    def validate_state(self, state: "State") -> None:
        if not state.members:
            raise InputError("state must be nonempty")
        for i in state.members:
            if not 0 <= i < len(self.weights):
                raise InputError(f"state refers to unknown weight index {i}")

    def cocharacter_orbit(self, lam: QVector) -> list[QVector]:
        """Weyl orbit of a one-parameter subgroup (dual action)."""
        if not self.weyl:
            return [lam]
        out = {lam.coords}
        for w in self.weyl:
            winv = _mat_inv_int(w)
            transpose = tuple(tuple(winv[j][i] for j in range(self.rank))
                              for i in range(self.rank))
            out.add(_mat_vec(transpose, lam).coords)
        return [QVector(c) for c in sorted(out)]


@dataclass(frozen=True)
class State:
    """A nonempty set of weight indices: the support of a point of P(V)."""

    members: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(int(i) for i in self.members))
        if not self.members:
            raise InputError("state must be nonempty")

    @staticmethod
    def of(*indices: int) -> "State":
        return State(frozenset(indices))

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __le__(self, other: "State") -> bool:
        return self.members <= other.members


@dataclass(frozen=True)
class StateFamily:
    """Either every nonempty subset of the distinct weights, or an explicit list."""

    states: Optional[tuple[State, ...]] = None

    @staticmethod
    def all_subsets() -> "StateFamily":
        return StateFamily(None)

    @staticmethod
    def explicit(states: Sequence[State]) -> "StateFamily":
        uniq = sorted({s.members for s in states})
        if not uniq:
            raise InputError("explicit state family must be nonempty")
        return StateFamily(tuple(State(m) for m in uniq))

    @property
    def is_all_subsets(self) -> bool:
        return self.states is None

    def enumerate(self, ws: WeightSystem) -> list[State]:
        """Realized states, canonically ordered.

        For the all-subsets family each nonempty subset of the distinct
        weight vectors is realized once, as the state collecting every index
        carrying one of the chosen vectors.
        """
        if self.states is not None:
            for s in self.states:
                ws.validate_state(s)
            return sorted(self.states, key=State.key)
        chis = ws.distinct_chis()
        if len(chis) > ALL_SUBSETS_LIMIT:
            raise ResourceLimitError(
                f"all-subsets enumeration supports at most "
                f"{ALL_SUBSETS_LIMIT} distinct weights, got {len(chis)}")
        out = []
        for k in range(1, len(chis) + 1):
            for sub in combinations(chis, k):
                out.append(ws.state_of_chis(sub))
        return sorted(out, key=State.key)


@dataclass(frozen=True)
class Linearization:
    """A rational character twist: the slice coordinate on the ample cone."""

    theta: QVector

    @staticmethod
    def of(*coords) -> "Linearization":
        return Linearization(QVector.of(*coords))


@dataclass(frozen=True)
class OneParamSubgroup:
    """A primitive integer cocharacter direction."""

    vector: QVector

    def __post_init__(self) -> None:
        v = as_qvector(self.vector)
        object.__setattr__(self, "vector", v)
        if v.is_zero:
            raise InputError("one-parameter subgroup must be nonzero")
        if primitive(v) != v:
            raise InputError("one-parameter subgroup must be primitive")

    def key(self) -> tuple[Fraction, ...]:
        return self.vector.coords


@dataclass(frozen=True)
class SignedMeasure:
    """The instability measure as sign * sqrt(dist_sq), stored exactly."""

    sign: int
    dist_sq: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "dist_sq", rat(self.dist_sq))
        if self.sign not in (-1, 0, 1):
            raise InputError("sign must be -1, 0 or +1")
        if (self.sign == 0) != (self.dist_sq == 0):
            raise InputError("sign is 0 exactly when dist_sq is 0")
        if self.dist_sq < 0:
            raise InputError("dist_sq must be nonnegative")


class Stability(Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class Stratum:
    """One Hesselink stratum: a measure, an adapted direction class, states."""

    measure: SignedMeasure
    lps_class: OneParamSubgroup
    members: tuple[State, ...]


@dataclass(frozen=True)
class Stratification:
    """Unstable strata plus the semistable part of the decomposition."""

    strata: tuple[Stratum, ...]
    semistable: tuple[State, ...]


# ---------------------------------------------------------------------------
# hull cache


@lru_cache(maxsize=4096)
def _hull_of(chis: tuple[tuple[Fraction, ...], ...]) -> QPolytope:
    return conv_hull([QVector(c) for c in chis])


def state_hull(ws: WeightSystem, state: State) -> QPolytope:
    ws.validate_state(state)
    return _hull_of(tuple(c.coords for c in ws.chis(state)))


# ---------------------------------------------------------------------------
# operations


def mu(ws: WeightSystem, state: State, lam: OneParamSubgroup,
       lin: Linearization) -> Fraction:
    """Twisted numerical function: min over chi in the state of <lam, chi - theta>."""
    ws.validate_state(state)
    theta = lin.theta
    if len(theta) != ws.rank or len(lam.vector) != ws.rank:
        raise InputError("dimension mismatch")
    return min(lam.vector.dot(ws.chi(i) - theta) for i in state.members)


def measure_M(ws: WeightSystem, state: State, lin: Linearization
              ) -> tuple[SignedMeasure, QVector]:
    """Instability measure and its witness point.

    Unstable (theta outside the hull): sign +1, squared distance to the
    hull, witness the nearest point.  Theta in the hull: sign 0 with witness
    theta itself when theta is on the boundary or the hull is not
    full-dimensional (the measure vanishes there); otherwise sign -1 with
    the squared distance to the boundary and a nearest boundary point.
    """
    ws.validate_state(state)
    theta = lin.theta
    if len(theta) != ws.rank:
        raise InputError("dimension mismatch")
    hull = state_hull(ws, state)
    loc = hull.locate(theta)
    if loc is Location.OUTSIDE:
        point, dist = project_metric(theta, hull, ws.form)
        return SignedMeasure(1, dist), point
    if loc is Location.BOUNDARY or hull.affine_dim < ws.rank:
        return SignedMeasure(0, Fraction(0)), theta
    point, dist = boundary_projection(theta, hull, ws.form)
    return SignedMeasure(-1, dist), point


def adapted_lps(ws: WeightSystem, state: State, lin: Linearization
                ) -> Optional[OneParamSubgroup]:
    """The unique adapted direction of an unstable state; None otherwise.

    For semistable states the supremum defining the measure need not be
    attained by a unique direction, so no answer is given.
    """
    measure, witness = measure_M(ws, state, lin)
    if measure.sign != 1:
        return None
    direction = ws.form.apply_inverse(witness - lin.theta)
    return OneParamSubgroup(primitive(direction))


def classify_state(ws: WeightSystem, state: State, lin: Linearization
                   ) -> Stability:
    """Stable iff M < 0; semistable iff M <= 0.

    Convention: stability requires the state's hull to be full-dimensional
    with theta in its honest interior.  States with lower-dimensional hulls
    are never stable, even for theta in their relative interior.
    """
    measure, _ = measure_M(ws, state, lin)
    if measure.sign == 1:
        return Stability.UNSTABLE
    if measure.sign == -1:
        return Stability.STABLE
    return Stability.STRICTLY_SEMISTABLE


def is_semistable(ws: WeightSystem, state: State, lin: Linearization) -> bool:
    """theta in conv(state weights); cheaper than the full measure."""
    return state_hull(ws, state).contains(lin.theta)


def limit_state(ws: WeightSystem, state: State, lam: OneParamSubgroup,
                lin: Linearization) -> State:
    """The state of the limit along lam: members attaining min <lam, chi - theta>."""
    ws.validate_state(state)
    theta = lin.theta
    vals = {i: lam.vector.dot(ws.chi(i) - theta) for i in state.members}
    lowest = min(vals.values())
    return State(frozenset(i for i, v in vals.items() if v == lowest))


def canonical_lps_class(ws: WeightSystem, lam: OneParamSubgroup
                        ) -> OneParamSubgroup:
    """Lexicographically least member of the Weyl orbit of lam."""
    orbit = ws.cocharacter_orbit(lam.vector)
    return OneParamSubgroup(orbit[0])


def stratify(ws: WeightSystem, family: StateFamily, lin: Linearization
             ) -> Stratification:
    """Group the family's unstable states into Hesselink strata.

    Strata are keyed by (squared measure, Weyl orbit of the adapted
    direction) and sorted by decreasing measure, then by the canonical
    direction.  Semistable states are reported as the remaining part of the
    decomposition.
    """
    semistable = []
    buckets: dict[tuple, list[State]] = {}
    for state in family.enumerate(ws):
        measure, _ = measure_M(ws, state, lin)
        if measure.sign != 1:
            semistable.append(state)
            continue
        lam = adapted_lps(ws, state, lin)
        assert lam is not None
        rep = canonical_lps_class(ws, lam)
        buckets.setdefault((measure.dist_sq, rep.key()), []).append(state)
    strata = []
    for (dist_sq, rep_key), states in buckets.items():
        strata.append(Stratum(
            measure=SignedMeasure(1, dist_sq),
            lps_class=OneParamSubgroup(QVector(rep_key)),
            members=tuple(sorted(states, key=State.key))))
    strata.sort(key=lambda s: (-s.measure.dist_sq, s.lps_class.key()))
    return Stratification(tuple(strata), tuple(semistable))
