"""Infinitesimal screw theory for serial chains, plus homogeneous-transform
utilities and the RCR manipulator example.

Screws and kinematic states are 6-vectors stacking an angular part over a
moment/linear part.  Rate-weighted joint screws summed over the chain give
the velocity state; acceleration, jerk, and jounce/snap states add
correction screws built from nested Lie brackets, written out index for
index as the multi-sums they are.  Point kinematics follow from the states
through the usual cross-product ladder, giving an oracle fully independent
of the jet-based routes.

`htm` accepts jets as well as floats for the angle and translation entries,
so the same transform chain doubles as the jet-ready position field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import (
    IndexOutOfRange,
    InsufficientRateOrder,
    NonUnitAxis,
)
from .jets import Jet4, cos, sin
from .kinematics import KinematicResult, KinematicSnapshot

__all__ = [
    "htm", "JointModel", "joint_screws", "lie_bracket",
    "L02", "L03", "L04",
    "velocity_state", "acceleration_state", "jerk_state", "snap_state",
    "point_kinematics", "chain_point_kinematics",
    "HtmFactor", "Chain", "chain_from_json", "RcrModel", "rcr_model",
]

JOINT_KINDS = ("revolute", "prismatic", "cylindrical")


def _unit_axis(u) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (3,):
        raise NonUnitAxis(f"axis must have 3 components, got shape {u.shape}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise NonUnitAxis(f"axis {u} is not unit length")
    return u


def htm(psi, u, s) -> np.ndarray:
    """Homogeneous transform: rotation by psi about the unit axis u composed
    with translation s.  psi and the entries of s may be jets."""
    u = _unit_axis(u)
    ux, uy, uz = (float(c) for c in u)
    s = list(s)
    if len(s) != 3:
        raise ValueError(f"translation must have 3 components, got {len(s)}")
    c = cos(psi)
    si = sin(psi)
    oc = 1.0 - c
    rows = [
        [c + oc * (ux * ux), oc * (ux * uy) - si * uz,
         oc * (ux * uz) + si * uy, s[0]],
        [oc * (ux * uy) + si * uz, c + oc * (uy * uy),
         oc * (uy * uz) - si * ux, s[1]],
        [oc * (ux * uz) - si * uy, oc * (uy * uz) + si * ux,
         c + oc * (uz * uz), s[2]],
        [0.0, 0.0, 0.0, 1.0],
    ]
    jetlike = isinstance(psi, Jet4) or any(isinstance(e, Jet4) for e in s)
    return np.array(rows, dtype=object if jetlike else np.float64)


def chain_product(mats) -> np.ndarray:
    return reduce(np.dot, mats)


@dataclass
class JointModel:
    """A resolved joint: kind, world-frame unit axis, and a point on the
    axis, all at the evaluated configuration."""

    kind: str
    axis: np.ndarray
    origin: np.ndarray

    def __post_init__(self):
        if self.kind not in JOINT_KINDS:
            raise ValueError(f"unknown joint kind {self.kind!r}")
        self.axis = _unit_axis(self.axis)
        self.origin = np.asarray(self.origin, dtype=np.float64)


def joint_screws(j: JointModel):
    """(rotational screw [e; r x e], translational screw [0; e])."""
    rev = np.concatenate([j.axis, np.cross(j.origin, j.axis)])
    pris = np.concatenate([np.zeros(3), j.axis])
    return rev, pris


def lie_bracket(a, b) -> np.ndarray:
    """Lie product of two screws: [s1 x s2 ; s1 x s02 - s2 x s01]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return np.concatenate([
        np.cross(a[:3], b[:3]),
        np.cross(a[:3], b[3:]) - np.cross(b[:3], a[3:]),
    ])


def _rates(rates, n: int, name: str) -> np.ndarray:
    if rates is None:
        raise InsufficientRateOrder(f"{name} rates are required")
    r = np.asarray(rates, dtype=np.float64)
    if r.shape != (n, 2):
        raise InsufficientRateOrder(
            f"{name} rates must have shape ({n}, 2) (angle, slide); got {r.shape}")
    return r


def _rate_screw(joints, rates, k: int) -> np.ndarray:
    # rate row dotted with the joint's screw pair: theta' * $R + s' * $T
    if not 1 <= k <= len(joints):
        raise IndexOutOfRange(f"joint index {k} outside 1..{len(joints)}")
    rev, pris = joint_screws(joints[k - 1])
    return rates[k - 1, 0] * rev + rates[k - 1, 1] * pris


def L02(joints, x, y, a: int, b: int) -> np.ndarray:
    return lie_bracket(_rate_screw(joints, x, a), _rate_screw(joints, y, b))


def L03(joints, x, y, z, a: int, b: int, c: int) -> np.ndarray:
    return lie_bracket(_rate_screw(joints, x, a), L02(joints, y, z, b, c))


def L04(joints, x, y, z, w, a: int, b: int, c: int, d: int) -> np.ndarray:
    return lie_bracket(_rate_screw(joints, x, a), L03(joints, y, z, w, b, c, d))


def velocity_state(joints, qd) -> np.ndarray:
    n = len(joints)
    qd = _rates(qd, n, "first-order")
    state = np.zeros(6)
    for k in range(1, n + 1):
        state += _rate_screw(joints, qd, k)
    return state


def acceleration_state(joints, qd, qdd) -> np.ndarray:
    n = len(joints)
    qd = _rates(qd, n, "first-order")
    qdd = _rates(qdd, n, "second-order")
    state = np.zeros(6)
    for k in range(1, n + 1):
        state += _rate_screw(joints, qdd, k)
    for i in range(1, n):
        for k in range(i + 1, n + 1):
            state += L02(joints, qd, qd, i, k)
    return state


def jerk_state(joints, qd, qdd, qddd) -> np.ndarray:
    n = len(joints)
    qd = _rates(qd, n, "first-order")
    qdd = _rates(qdd, n, "second-order")
    qddd = _rates(qddd, n, "third-order")
    state = np.zeros(6)
    for k in range(1, n + 1):
        state += _rate_screw(joints, qddd, k)
    for i in range(1, n):
        for k in range(i + 1, n + 1):
            state += (2.0 * L02(joints, qd, qdd, i, k)
                      + L02(joints, qdd, qd, i, k)
                      + L03(joints, qd, qd, qd, i, i, k))
    for l in range(1, n - 1):
        for i in range(l + 1, n):
            for k in range(i + 1, n + 1):
                state += 2.0 * L03(joints, qd, qd, qd, l, i, k)
    return state


def snap_state(joints, qd, qdd, qddd, qdddd) -> np.ndarray:
    n = len(joints)
    qd = _rates(qd, n, "first-order")
    qdd = _rates(qdd, n, "second-order")
    qddd = _rates(qddd, n, "third-order")
    qdddd = _rates(qdddd, n, "fourth-order")
    state = np.zeros(6)
    for k in range(1, n + 1):
        state += _rate_screw(joints, qdddd, k)
    # pair sum
    for i in range(1, n):
        for k in range(i + 1, n + 1):
            state += (3.0 * L02(joints, qd, qddd, i, k)
                      + 3.0 * L02(joints, qdd, qdd, i, k)
                      + L02(joints, qddd, qd, i, k)
                      + 3.0 * L03(joints, qd, qd, qdd, i, i, k)
                      + 2.0 * L03(joints, qdd, qd, qd, i, i, k)
                      + L03(joints, qd, qdd, qd, i, i, k)
                      + L04(joints, qd, qd, qd, qd, i, i, i, k))
    # triple sum
    for l in range(1, n - 1):
        for i in range(l + 1, n):
            for k in range(i + 1, n + 1):
                state += (6.0 * L03(joints, qd, qd, qdd, l, i, k)
                          + 3.0 * L03(joints, qd, qdd, qd, l, i, k)
                          + 3.0 * L03(joints, qdd, qd, qd, l, i, k)
                          + 3.0 * L04(joints, qd, qd, qd, qd, l, l, i, k)
                          + 3.0 * L04(joints, qd, qd, qd, qd, l, i, i, k))
    # quadruple sum, first active for n >= 4; the distinct-index bracket
    # carries weight 6 (differentiate the jerk state and reduce by Jacobi:
    # 2[[ab],[cd]] + 2[b,[[ac],d]] + 2[a,[[bc],d]] + 2[b,[c,[ad]]]
    # + 2[a,[c,[bd]]] + 2[a,[b,[cd]]] = 6[a,[b,[c,d]]]); checked against the
    # exact jet route on 4-joint chains
    for hh in range(1, n - 2):
        for l in range(hh + 1, n - 1):
            for i in range(l + 1, n):
                for k in range(i + 1, n + 1):
                    state += 6.0 * L04(joints, qd, qd, qd, qd, hh, l, i, k)
    return state


def point_kinematics(vel_state, acc_state, jerk_st, snap_st, r_p) -> KinematicResult:
    """Point kinematics from the four states and the point's position."""
    r = np.asarray(r_p, dtype=np.float64)
    omega, v_star = vel_state[:3], vel_state[3:]
    alpha, a_star = acc_state[:3], acc_state[3:]
    rho, j_star = jerk_st[:3], jerk_st[3:]
    sigma, s_star = snap_st[:3], snap_st[3:]
    v = v_star + np.cross(omega, r)
    a = a_star + np.cross(alpha, r) + np.cross(omega, v)
    jerk = (j_star + np.cross(rho, r) + 2.0 * np.cross(alpha, v)
            + np.cross(omega, a))
    snap = (s_star + np.cross(sigma, r) + 3.0 * np.cross(rho, v)
            + 3.0 * np.cross(alpha, a) + np.cross(omega, jerk))
    return KinematicResult(v, a, jerk, snap)


def chain_point_kinematics(joints, qd, qdd, qddd, qdddd, r_p) -> KinematicResult:
    """Convenience wrapper computing all four states and the point result."""
    return point_kinematics(
        velocity_state(joints, qd),
        acceleration_state(joints, qd, qdd),
        jerk_state(joints, qd, qdd, qddd),
        snap_state(joints, qd, qdd, qddd, qdddd),
        r_p,
    )


# ---------------------------------------------------------------------------
# chain descriptions


@dataclass
class HtmFactor:
    """One factor of a transform chain; angle and/or one translation
    direction may be bound to a generalized coordinate (1-based index).
    Slide directions must be unit vectors (defaulting to the rotation
    axis), so coordinate values are displacements in length units."""

    axis: np.ndarray
    angle: float = 0.0
    angle_coord: int = 0          # 0 means fixed
    translation: np.ndarray = (0.0, 0.0, 0.0)
    trans_coord: int = 0
    trans_dir: np.ndarray = None

    def __post_init__(self):
        self.axis = _unit_axis(self.axis)
        self.translation = np.asarray(self.translation, dtype=np.float64)
        if self.trans_coord and self.trans_dir is None:
            self.trans_dir = self.axis.copy()
        if self.trans_dir is not None:
            self.trans_dir = _unit_axis(self.trans_dir)

    @property
    def is_joint(self) -> bool:
        return bool(self.angle_coord or self.trans_coord)

    @property
    def kind(self) -> str:
        if self.angle_coord and self.trans_coord:
            return "cylindrical"
        return "revolute" if self.angle_coord else "prismatic"

    def transform(self, q) -> np.ndarray:
        psi = self.angle
        if self.angle_coord:
            psi = q[self.angle_coord - 1] + psi
        s = list(self.translation)
        if self.trans_coord:
            slide = q[self.trans_coord - 1]
            s = [s_i + slide * float(d_i)
                 for s_i, d_i in zip(s, self.trans_dir)]
        return htm(psi, self.axis, s)


@dataclass
class Chain:
    """Serial chain as an ordered product of HTM factors; factors carrying a
    coordinate are joints, the rest are fixed link transforms.  The point of
    interest is the chain tip offset by `point_offset` in the last frame."""

    factors: list
    coords: int
    point_offset: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.point_offset = np.asarray(self.point_offset, dtype=np.float64)
        if self.coords < 1:
            raise ValueError("chain needs at least one coordinate")
        for f in self.factors:
            for c in (f.angle_coord, f.trans_coord):
                if c and not 1 <= c <= self.coords:
                    raise IndexOutOfRange(
                        f"factor coordinate {c} outside 1..{self.coords}")
            if f.kind == "cylindrical" and f.is_joint:
                if np.linalg.norm(np.cross(f.axis, f.trans_dir)) > 1e-9:
                    raise ValueError(
                        "cylindrical factor must slide along its rotation axis")

    @property
    def joints_spec(self):
        return [f for f in self.factors if f.is_joint]

    def product(self, q) -> np.ndarray:
        return chain_product([f.transform(q) for f in self.factors])

    def position(self, q):
        """Position of the point of interest; works on floats and jets."""
        P = self.product(q)
        p = self.point_offset
        if np.any(p):
            return [P[i, 0] * p[0] + P[i, 1] * p[1] + P[i, 2] * p[2] + P[i, 3]
                    for i in range(3)]
        return [P[0, 3], P[1, 3], P[2, 3]]

    def resolve_joints(self, q) -> list:
        """World-frame joint models at configuration q: each joint's axis is
        the prefix rotation applied to its local axis, its origin the prefix
        translation (a point on the axis)."""
        q = np.asarray(q, dtype=np.float64)
        prefix = np.eye(4)
        joints = []
        for f in self.factors:
            if f.is_joint:
                axis_w = prefix[:3, :3] @ f.axis
                axis_w /= np.linalg.norm(axis_w)
                joints.append(JointModel(f.kind, axis_w, prefix[:3, 3].copy()))
            prefix = prefix @ f.transform(q)
        return joints

    def joint_rates(self, qdot) -> np.ndarray:
        """Pack coordinate rates into per-joint (angle, slide) rows."""
        qdot = np.asarray(qdot, dtype=np.float64)
        if qdot.shape != (self.coords,):
            raise InsufficientRateOrder(
                f"rate vector must have {self.coords} components, got {qdot.shape}")
        rows = []
        for f in self.joints_spec:
            rows.append([qdot[f.angle_coord - 1] if f.angle_coord else 0.0,
                         qdot[f.trans_coord - 1] if f.trans_coord else 0.0])
        return np.array(rows)

    def point_kinematics(self, s: KinematicSnapshot) -> KinematicResult:
        joints = self.resolve_joints(s.q)
        r_p = np.array([float(c) for c in self.position(s.q)])
        return chain_point_kinematics(
            joints,
            self.joint_rates(s.qd), self.joint_rates(s.qdd),
            self.joint_rates(s.qddd), self.joint_rates(s.qdddd),
            r_p,
        )

    # -- JSON round trip -----------------------------------------------------
    def to_dict(self) -> dict:
        factors = []
        for f in self.factors:
            angle = ({"coord": f.angle_coord, "offset": f.angle}
                     if f.angle_coord else f.angle)
            translation = []
            for pos in range(3):
                d = float(f.trans_dir[pos]) if f.trans_coord else 0.0
                if f.trans_coord and d != 0.0:
                    translation.append({"coord": f.trans_coord, "scale": d,
                                        "offset": float(f.translation[pos])})
                else:
                    translation.append(float(f.translation[pos]))
            factors.append({"axis": f.axis.tolist(), "angle": angle,
                            "translation": translation})
        return {"coordinates": self.coords, "factors": factors,
                "point": self.point_offset.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Chain":
        factors = []
        for fd in d["factors"]:
            angle_spec = fd.get("angle", 0.0)
            if isinstance(angle_spec, dict):
                angle_coord = int(angle_spec["coord"])
                angle = float(angle_spec.get("offset", 0.0))
            else:
                angle_coord = 0
                angle = float(angle_spec)
            fixed = np.zeros(3)
            trans_coord = 0
            trans_dir = np.zeros(3)
            for pos, entry in enumerate(fd.get("translation", [0, 0, 0])):
                if isinstance(entry, dict):
                    c = int(entry["coord"])
                    if trans_coord and c != trans_coord:
                        raise ValueError(
                            "one slide coordinate per factor is supported")
                    trans_coord = c
                    trans_dir[pos] = float(entry.get("scale", 1.0))
                    fixed[pos] = float(entry.get("offset", 0.0))
                else:
                    fixed[pos] = float(entry)
            factors.append(HtmFactor(
                axis=fd["axis"], angle=angle, angle_coord=angle_coord,
                translation=fixed, trans_coord=trans_coord,
                trans_dir=trans_dir if trans_coord else None))
        return cls(factors=factors, coords=int(d["coordinates"]),
                   point_offset=d.get("point", (0.0, 0.0, 0.0)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def chain_from_json(text: str) -> Chain:
    return Chain.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# the RCR manipulator example


@dataclass
class RcrModel:
    """Revolute-cylindrical-revolute arm: rotation about z, a cylindrical
    joint about/along the rotated x axis, a final rotation about z, then two
    fixed link offsets.  Coordinates are (theta, phi, s, beta)."""

    bc: float = 3.0
    cd: float = 2.0

    def transforms(self, q):
        return [
            htm(q[0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]),
            htm(q[1], [1.0, 0.0, 0.0], [q[2], 0.0, 0.0]),
            htm(q[3], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]),
            htm(0.0, [0.0, 0.0, 1.0], [0.0, 0.0, self.bc]),
            htm(0.0, [1.0, 0.0, 0.0], [self.cd, 0.0, 0.0]),
        ]

    def position(self, q):
        """End-effector position; q entries may be jets."""
        P = chain_product(self.transforms(q))
        return [P[0, 3], P[1, 3], P[2, 3]]

    def point(self, q) -> np.ndarray:
        return np.array([float(c) for c in self.position(q)])

    def frame_origins(self, q):
        """(r2, r3): origins of the cylindrical and final revolute joints
        from the partial transform products."""
        T = self.transforms(q)
        r2 = chain_product(T[:2])[:3, 3]
        r3 = chain_product(T[:4])[:3, 3]
        return r2, r3

    def resolve_joints(self, q) -> list:
        r2, r3 = self.frame_origins(q)
        e2 = r2 / np.linalg.norm(r2)
        e3 = (r3 - r2) / np.linalg.norm(r3 - r2)
        return [
            JointModel("revolute", np.array([0.0, 0.0, 1.0]), np.zeros(3)),
            JointModel("cylindrical", e2, r2),
            JointModel("revolute", e3, r3),
        ]

    @staticmethod
    def joint_rates(rates) -> np.ndarray:
        r = np.asarray(rates, dtype=np.float64)
        if r.shape != (4,):
            raise InsufficientRateOrder(
                f"RCR rate vector must have 4 components, got {r.shape}")
        return np.array([[r[0], 0.0], [r[1], r[2]], [r[3], 0.0]])

    def point_kinematics(self, s: KinematicSnapshot) -> KinematicResult:
        joints = self.resolve_joints(s.q)
        return chain_point_kinematics(
            joints,
            self.joint_rates(s.qd), self.joint_rates(s.qdd),
            self.joint_rates(s.qddd), self.joint_rates(s.qdddd),
            self.point(s.q),
        )

    def chain(self) -> Chain:
        """The same arm expressed as a generic factor chain."""
        return Chain(
            factors=[
                HtmFactor(axis=[0.0, 0.0, 1.0], angle_coord=1),
                HtmFactor(axis=[1.0, 0.0, 0.0], angle_coord=2, trans_coord=3,
                          trans_dir=[1.0, 0.0, 0.0]),
                HtmFactor(axis=[0.0, 0.0, 1.0], angle_coord=4),
                HtmFactor(axis=[0.0, 0.0, 1.0], translation=[0.0, 0.0, self.bc]),
                HtmFactor(axis=[1.0, 0.0, 0.0], translation=[self.cd, 0.0, 0.0]),
            ],
            coords=4,
        )


def rcr_model() -> RcrModel:
    return RcrModel()
