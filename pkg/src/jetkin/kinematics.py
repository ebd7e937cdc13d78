"""Velocity, acceleration, jerk, and snap of a point whose position is a
smooth field over generalized coordinates.

Two equivalent jet routes are provided.  The time-jet route packs the
coordinate values and their first four time derivatives into one jet per
coordinate and evaluates the position field once; its output parts 1..4
are exactly the four kinematic vectors.  The directional route assembles
the same vectors from directional derivatives of the field along the rate
vectors:

    v    = d1(qd)
    a    = d2(qd, qd) + d1(qdd)
    jerk = d3(qd, qd, qd) + 3 d2(qd, qdd) + d1(qddd)
    snap = d4(qd, qd, qd, qd) + 6 d3(qd, qd, qdd) + 4 d2(qd, qddd)
           + 3 d2(qdd, qdd) + d1(qdddd)

The mixed terms are resolved by the polarization identities; only seven
field evaluations are needed in total.  If the position depends explicitly
on time, append time as an extra coordinate with unit first rate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .jets import Jet4, variable

__all__ = [
    "KinematicSnapshot", "KinematicResult",
    "kinematics_directional", "kinematics_timejet", "kinematics_trajectory",
]


def _as_vector(x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionMismatch(f"{name} must be a 1-d vector")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite entries: {v}")
    return v


@dataclass
class KinematicSnapshot:
    """Generalized coordinates and their first four time derivatives."""

    q: np.ndarray
    qd: np.ndarray
    qdd: np.ndarray
    qddd: np.ndarray
    qdddd: np.ndarray

    def __post_init__(self):
        self.q = _as_vector(self.q, "q")
        for name in ("qd", "qdd", "qddd", "qdddd"):
            v = _as_vector(getattr(self, name), name)
            if v.shape != self.q.shape:
                raise DimensionMismatch(
                    f"{name} has dimension {v.shape[0]}, q has {self.q.shape[0]}")
            setattr(self, name, v)

    @property
    def m(self) -> int:
        return self.q.shape[0]

    def to_dict(self) -> dict:
        return {name: getattr(self, name).tolist()
                for name in ("q", "qd", "qdd", "qddd", "qdddd")}

    @classmethod
    def from_dict(cls, d: dict) -> "KinematicSnapshot":
        missing = [k for k in ("q", "qd", "qdd", "qddd", "qdddd") if k not in d]
        if missing:
            raise KeyError(f"snapshot record missing keys: {missing}")
        return cls(**{k: d[k] for k in ("q", "qd", "qdd", "qddd", "qdddd")})

    @classmethod
    def from_json(cls, text: str) -> "KinematicSnapshot":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class KinematicResult:
    """Velocity, acceleration, jerk, and jounce/snap vectors."""

    v: np.ndarray
    a: np.ndarray
    jerk: np.ndarray
    snap: np.ndarray

    def __post_init__(self):
        self.v = _as_vector(self.v, "v")
        for name in ("a", "jerk", "snap"):
            w = _as_vector(getattr(self, name), name)
            if w.shape != self.v.shape:
                raise DimensionMismatch(
                    f"{name} has dimension {w.shape[0]}, v has {self.v.shape[0]}")
            setattr(self, name, w)

    def to_dict(self) -> dict:
        return {name: getattr(self, name).tolist()
                for name in ("v", "a", "jerk", "snap")}


def _field_jets(F, q, direction):
    jets = [Jet4._raw((qi, vi, 0.0, 0.0, 0.0)) for qi, vi in zip(q, direction)]
    out = F(jets)
    if isinstance(out, Jet4):
        out = [out]
    return out


def _parts(jets, k) -> np.ndarray:
    return np.array([float(j.a[k]) for j in jets])


def kinematics_directional(F, s: KinematicSnapshot) -> KinematicResult:
    """Directional-derivative route (seven field evaluations)."""
    q = s.q
    e_qd = _field_jets(F, q, s.qd)
    e_qdd = _field_jets(F, q, s.qdd)
    e_qddd = _field_jets(F, q, s.qddd)
    e_qdddd = _field_jets(F, q, s.qdddd)
    e_d_dd = _field_jets(F, q, s.qd + s.qdd)      # qd + qdd
    e_d_ddd = _field_jets(F, q, s.qd + s.qddd)    # qd + qddd
    e_dd_md = _field_jets(F, q, s.qdd - s.qd)     # qdd - qd

    v = _parts(e_qd, 1)
    a = _parts(e_qd, 2) + _parts(e_qdd, 1)

    d2_qd_qdd = (_parts(e_d_dd, 2) - _parts(e_qd, 2) - _parts(e_qdd, 2)) / 2
    jerk = _parts(e_qd, 3) + 3.0 * d2_qd_qdd + _parts(e_qddd, 1)

    d3_qdqd_qdd = (_parts(e_d_dd, 3) + _parts(e_dd_md, 3)
                   - 2.0 * _parts(e_qdd, 3)) / 6
    d2_qd_qddd = (_parts(e_d_ddd, 2) - _parts(e_qd, 2)
                  - _parts(e_qddd, 2)) / 2
    snap = (_parts(e_qd, 4) + 6.0 * d3_qdqd_qdd + 4.0 * d2_qd_qddd
            + 3.0 * _parts(e_qdd, 2) + _parts(e_qdddd, 1))

    return KinematicResult(v, a, jerk, snap)


def kinematics_timejet(F, s: KinematicSnapshot) -> KinematicResult:
    """Time-jet route: one field evaluation on jets whose part k is the
    k-th time derivative of the corresponding coordinate."""
    jets = [Jet4._raw((s.q[i], s.qd[i], s.qdd[i], s.qddd[i], s.qdddd[i]))
            for i in range(s.m)]
    out = F(jets)
    if isinstance(out, Jet4):
        out = [out]
    return KinematicResult(_parts(out, 1), _parts(out, 2),
                           _parts(out, 3), _parts(out, 4))


def kinematics_trajectory(F, g, t0: float) -> KinematicResult:
    """Kinematics when the coordinates are an explicit trajectory g(t):
    evaluate F(g(t0 + eps)) and read off parts 1..4."""
    qjets = g(variable(float(t0)))
    out = F(qjets)
    if isinstance(out, Jet4):
        out = [out]
    return KinematicResult(_parts(out, 1), _parts(out, 2),
                           _parts(out, 3), _parts(out, 4))
