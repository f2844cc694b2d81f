"""Combinatorial model of a cyclic 4-orbifold.

An OrbifoldConfig is the arithmetic shadow of the geometry: isotropy
surfaces with genus / multiplicity / self-intersection, isolated cyclic
singular points with their weights, transverse positive intersection
events, Betti and Euler numbers, and (optionally) a declared homology
basis with its pairing data.

Intersection numbers between distinct surfaces are derived from events:
a smooth transverse point contributes 1, a shared singular point of
order d contributes 1/d.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .exact import IntMatrix, mod_inverse, radical_quotient

SMOOTH = "smooth"


class UnsupportedGeometry(ValueError):
    """Input outside the scope of the implemented constructions."""


class NotIncident(ValueError):
    """The named surface does not pass through the named point."""


@dataclass
class SurfaceData:
    """A closed surface tracked in the configuration.

    multiplicity 1 marks a plain (non-isotropy) surface kept for
    bookkeeping; then local_j must be 0.
    """

    id: str
    genus: int
    multiplicity: int = 1
    local_j: int = 0
    self_intersection: Fraction = Fraction(0)
    qclass: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        self.self_intersection = Fraction(self.self_intersection)
        if self.qclass is not None:
            self.qclass = tuple(Fraction(x) for x in self.qclass)

    def euler(self) -> int:
        return 2 - 2 * self.genus


@dataclass
class SingularPointData:
    """Isolated cyclic quotient singularity of order d with weights (e1, e2)."""

    id: str
    order: int
    exponents: tuple[int, int]
    incident: tuple[str, ...] = ()

    def __post_init__(self):
        self.exponents = (self.exponents[0] % self.order,
                          self.exponents[1] % self.order)
        self.incident = tuple(self.incident)


@dataclass
class IntersectionEvent:
    """One transverse positive intersection point of two distinct surfaces.

    location is SMOOTH or a singular point id; sign is always +1.
    """

    id: str
    a: str
    b: str
    location: str = SMOOTH

    def surfaces(self) -> frozenset[str]:
        return frozenset((self.a, self.b))


@dataclass(frozen=True)
class Violation:
    kind: str
    locus: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.locus}: {self.message}"


@dataclass
class OrbifoldConfig:
    surfaces: list[SurfaceData] = field(default_factory=list)
    points: list[SingularPointData] = field(default_factory=list)
    events: list[IntersectionEvent] = field(default_factory=list)
    b1: int = 0
    b2: int = 0
    euler: int = 0
    basis: tuple[str, ...] | None = None
    integral_pairing: IntMatrix | None = None
    event_seq: int = 0
    point_seq: int = 0

    # -- lookup helpers -------------------------------------------------

    def copy(self) -> "OrbifoldConfig":
        return copy.deepcopy(self)

    def surface(self, sid: str) -> SurfaceData:
        for s in self.surfaces:
            if s.id == sid:
                return s
        raise KeyError(f"no surface {sid!r}")

    def has_surface(self, sid: str) -> bool:
        return any(s.id == sid for s in self.surfaces)

    def point(self, pid: str) -> SingularPointData:
        for p in self.points:
            if p.id == pid:
                return p
        raise KeyError(f"no singular point {pid!r}")

    def events_on(self, sid: str) -> list[IntersectionEvent]:
        return [e for e in self.events if sid in (e.a, e.b)]

    def events_between(self, a: str, b: str) -> list[IntersectionEvent]:
        want = frozenset((a, b))
        return [e for e in self.events if e.surfaces() == want]

    def points_on(self, sid: str) -> list[SingularPointData]:
        return [p for p in self.points if sid in p.incident]

    def fresh_event_id(self) -> str:
        self.event_seq += 1
        return f"ev{self.event_seq}"

    def fresh_point_id(self) -> str:
        self.point_seq += 1
        return f"dp{self.point_seq}"

    def add_event(self, a: str, b: str, location: str = SMOOTH,
                  eid: str | None = None) -> IntersectionEvent:
        ev = IntersectionEvent(eid or self.fresh_event_id(), a, b, location)
        self.events.append(ev)
        return ev

    # -- derived quantities --------------------------------------------

    def event_contribution(self, ev: IntersectionEvent) -> Fraction:
        if ev.location == SMOOTH:
            return Fraction(1)
        return Fraction(1, self.point(ev.location).order)

    def pairing_of(self, a: str, b: str) -> Fraction:
        """Rational intersection number of two tracked surfaces."""
        if a == b:
            return self.surface(a).self_intersection
        return sum((self.event_contribution(e)
                    for e in self.events_between(a, b)), Fraction(0))

    def pairing_matrix(self) -> list[list[Fraction]]:
        """Intersection matrix over the declared basis surfaces."""
        if self.basis is None:
            raise ValueError("no declared basis")
        return [[self.pairing_of(r, c) for c in self.basis]
                for r in self.basis]

    def rename_surface(self, old: str, new: str) -> None:
        """Pure relabeling; ids must stay unique."""
        if self.has_surface(new):
            raise ValueError(f"surface id {new!r} already in use")
        self.surface(old).id = new
        for p in self.points:
            p.incident = tuple(new if s == old else s for s in p.incident)
        for e in self.events:
            if e.a == old:
                e.a = new
            if e.b == old:
                e.b = new
        if self.basis is not None:
            self.basis = tuple(new if s == old else s for s in self.basis)

    def discard_surface(self, sid: str) -> None:
        """Stop tracking a surface (bookkeeping only; topology unchanged)."""
        s = self.surface(sid)
        self.surfaces.remove(s)
        self.events = [e for e in self.events if sid not in (e.a, e.b)]
        for p in self.points:
            p.incident = tuple(x for x in p.incident if x != sid)


@dataclass
class PointLocalInvariant:
    """Weights (m, j1, j2) of the cyclic action at a singular point."""

    point_id: str
    m: int
    j1: int
    j2: int
    derived: tuple[int, int, int, int, int]  # (m1, m2, d, e1, e2)
    incident: tuple[str, ...] = ()

    def violations(self) -> list[str]:
        m1, m2, d, e1, e2 = self.derived
        out = []
        if m1 * m2 * d != self.m:
            out.append(f"m1*m2*d = {m1 * m2 * d} != m = {self.m}")
        if gcd(self.j1, self.m) != m1:
            out.append(f"gcd(j1, m) = {gcd(self.j1, self.m)} != m1 = {m1}")
        if gcd(self.j2, self.m) != m2:
            out.append(f"gcd(j2, m) = {gcd(self.j2, self.m)} != m2 = {m2}")
        if gcd(m1, m2) != 1:
            out.append(f"gcd(m1, m2) != 1")
        if self.j1 % self.m != (m1 * e1) % self.m:
            out.append("j1 != m1*e1 mod m")
        if self.j2 % self.m != (m2 * e2) % self.m:
            out.append("j2 != m2*e2 mod m")
        if gcd(e1, m2 * d) != 1:
            out.append(f"gcd(e1, m2*d) != 1")
        if gcd(e2, m1 * d) != 1:
            out.append(f"gcd(e2, m1*d) != 1")
        return out


# -- operations ---------------------------------------------------------


def validate_config(cfg: OrbifoldConfig) -> list[Violation]:
    """Check every structural invariant; returns violations, not errors."""
    out: list[Violation] = []

    ids = [s.id for s in cfg.surfaces]
    if len(set(ids)) != len(ids):
        out.append(Violation("DuplicateId", "surfaces", "surface ids repeat"))
    pids = [p.id for p in cfg.points]
    if len(set(pids)) != len(pids):
        out.append(Violation("DuplicateId", "points", "point ids repeat"))

    for s in cfg.surfaces:
        if s.genus < 0:
            out.append(Violation("NegativeGenus", s.id, f"genus {s.genus}"))
        if s.multiplicity < 1:
            out.append(Violation("BadMultiplicity", s.id,
                                 f"multiplicity {s.multiplicity}"))
        elif s.multiplicity == 1:
            if s.local_j != 0:
                out.append(Violation("LocalInvariantNotZero", s.id,
                                     "multiplicity 1 requires j = 0"))
        elif gcd(s.local_j, s.multiplicity) != 1:
            out.append(Violation(
                "LocalInvariantNotCoprime", s.id,
                f"gcd({s.local_j}, {s.multiplicity}) != 1"))

    for p in cfg.points:
        if p.order < 2:
            out.append(Violation("BadOrder", p.id, f"order {p.order}"))
            continue
        for e in p.exponents:
            if gcd(e, p.order) != 1:
                out.append(Violation("ExponentNotCoprime", p.id,
                                     f"gcd({e}, {p.order}) != 1"))
        if len(p.incident) > 2:
            out.append(Violation("TooManyIncidentSurfaces", p.id,
                                 f"{len(p.incident)} incident surfaces"))
        for sid in p.incident:
            if not cfg.has_surface(sid):
                out.append(Violation("UnknownSurface", p.id,
                                     f"incident surface {sid!r} not tracked"))
        if len(p.incident) == 2 and all(cfg.has_surface(s) for s in p.incident):
            ma = cfg.surface(p.incident[0]).multiplicity
            mb = cfg.surface(p.incident[1]).multiplicity
            if gcd(ma, mb) != 1:
                out.append(Violation("CoprimalityViolation", p.id,
                                     f"incident multiplicities {ma}, {mb}"))

    for e in cfg.events:
        if e.a == e.b:
            out.append(Violation("SelfTangency", e.id,
                                 "event surfaces must be distinct"))
            continue
        for sid in (e.a, e.b):
            if not cfg.has_surface(sid):
                out.append(Violation("UnknownSurface", e.id,
                                     f"surface {sid!r} not tracked"))
        if e.location != SMOOTH:
            try:
                p = cfg.point(e.location)
            except KeyError:
                out.append(Violation("UnknownPoint", e.id,
                                     f"location {e.location!r} not tracked"))
                continue
            for sid in (e.a, e.b):
                if sid not in p.incident:
                    out.append(Violation(
                        "NotIncidentAtEvent", e.id,
                        f"{sid} not incident to point {p.id}"))

    # every intersecting pair of isotropy surfaces must be coprime
    seen_pairs = set()
    for e in cfg.events:
        if e.a == e.b or not (cfg.has_surface(e.a) and cfg.has_surface(e.b)):
            continue
        pair = frozenset((e.a, e.b))
        if pair in seen_pairs:
            continue
        seen_pairs.add(pair)
        ma = cfg.surface(e.a).multiplicity
        mb = cfg.surface(e.b).multiplicity
        if gcd(ma, mb) != 1:
            out.append(Violation("CoprimalityViolation", f"{e.a}*{e.b}",
                                 f"intersecting with gcd({ma}, {mb}) != 1"))

    if cfg.basis is not None:
        if len(cfg.basis) != cfg.b2:
            out.append(Violation("BasisDimension", "basis",
                                 f"{len(cfg.basis)} basis classes, b2 = {cfg.b2}"))
        mat = None
        if all(cfg.has_surface(s) for s in cfg.basis):
            mat = cfg.pairing_matrix()
            for i in range(len(mat)):
                for j in range(i):
                    if mat[i][j] != mat[j][i]:
                        out.append(Violation("PairingAsymmetry", "pairing",
                                             f"entry ({i},{j})"))
        else:
            out.append(Violation("UnknownSurface", "basis",
                                 "basis references untracked surface"))
        if mat is not None:
            for s in cfg.surfaces:
                if s.qclass is None:
                    continue
                if len(s.qclass) != len(cfg.basis):
                    out.append(Violation("QClassDimension", s.id,
                                         "qclass length != basis size"))
                    continue
                val = sum(s.qclass[i] * mat[i][j] * s.qclass[j]
                          for i in range(len(mat)) for j in range(len(mat)))
                if val != s.self_intersection:
                    out.append(Violation(
                        "SelfIntersectionMismatch", s.id,
                        f"qclass gives {val}, stored {s.self_intersection}"))

    if cfg.integral_pairing is not None:
        P = cfg.integral_pairing
        if P.rows != cfg.b2 or P.cols != len(cfg.surfaces):
            out.append(Violation("IntegralPairingShape", "integral_pairing",
                                 f"{P.rows}x{P.cols} vs b2={cfg.b2}, "
                                 f"{len(cfg.surfaces)} surfaces"))

    return out


def assign_local_invariants(cfg: OrbifoldConfig) -> dict[str, PointLocalInvariant]:
    """Compatible local invariants at every singular point.

    Works under the hypothesis that each singular point lies on at most
    one isotropy surface of multiplicity > 1.  For a point of order d
    with weights (e1, e2) on a surface with invariant (n, j):

        e  = e1 * e2^-1 mod d
        x  = rad(d) / gcd(rad(d), rad(j))
        j2 = j + n*x,  e2' = j2,  e1' = e * e2',  j1 = n * e1'

    giving (m, j1, j2) = (n*d, j1 mod m, j2 mod m).  Points on no
    isotropy surface keep (d, e1, e2) verbatim.
    """
    out: dict[str, PointLocalInvariant] = {}
    for p in cfg.points:
        isotropy = [cfg.surface(s) for s in p.incident
                    if cfg.surface(s).multiplicity > 1]
        d = p.order
        e1, e2 = p.exponents
        if len(isotropy) > 1:
            raise UnsupportedGeometry(
                f"point {p.id}: {len(isotropy)} incident isotropy surfaces; "
                "assignment is only defined for at most one")
        if not isotropy:
            out[p.id] = PointLocalInvariant(
                p.id, m=d, j1=e1 % d, j2=e2 % d,
                derived=(1, 1, d, e1 % d, e2 % d), incident=p.incident)
            continue
        surf = isotropy[0]
        n, j = surf.multiplicity, surf.local_j
        e = (e1 * mod_inverse(e2, d)) % d
        x = radical_quotient(d, j)
        j2 = j + n * x
        e2p = j2
        e1p = e * e2p
        j1 = n * e1p
        m = n * d
        pli = PointLocalInvariant(
            p.id, m=m, j1=j1 % m, j2=j2 % m,
            derived=(n, 1, d, e1p % d, e2p % (n * d)), incident=p.incident)
        bad = pli.violations()
        if bad:
            raise UnsupportedGeometry(
                f"point {p.id}: assignment failed invariants: {bad}")
        out[p.id] = pli
    return out


def check_compatibility(pli: PointLocalInvariant, surf: SurfaceData) -> bool:
    """Does the point invariant restrict to the surface invariant?

    The surface sitting in the slot of multiplicity m1 must satisfy
    j_surface = j2 (mod m1), and symmetrically for the m2 slot.
    """
    if surf.id not in pli.incident:
        raise NotIncident(f"{surf.id} not incident to point {pli.point_id}")
    m1, m2, _, _, _ = pli.derived
    n, j = surf.multiplicity, surf.local_j
    if n == 1:
        return True
    if n == m1:
        return (pli.j2 - j) % m1 == 0
    if n == m2:
        return (pli.j1 - j) % m2 == 0
    return False


def check_even_point_bound(cfg: OrbifoldConfig, p: int) -> bool:
    """At most b2 singular points can have order divisible by p."""
    count = sum(1 for pt in cfg.points if pt.order % p == 0)
    return count <= cfg.b2
