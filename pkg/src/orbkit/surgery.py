"""Surgery calculus on orbifold configurations.

Four geometric moves — blow-up, blow-down of a (-2)-sphere to an
ordinary double point, fiber connected sum along matched genus-g
surfaces, and resolution of a transverse torus pair into a genus-2
surface — each implemented as a pure config -> config transform with
exact Euler / Betti / intersection bookkeeping.  Builders at the bottom
assemble the two standard blocks and their fiber sum.

Every move can append to a SurgeryLog; replaying a log from the same
starting config reproduces the final config exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import IntMatrix
from .model import (
    SMOOTH,
    IntersectionEvent,
    OrbifoldConfig,
    SingularPointData,
    SurfaceData,
    UnsupportedGeometry,
)


class NotSmoothPoint(ValueError):
    """Blow-up requested at a singular location."""


class NotMinusTwoSphere(ValueError):
    pass


class MeetsSingularPoint(ValueError):
    pass


class GenusMismatch(ValueError):
    pass


class NormalBundleObstruction(ValueError):
    pass


class UnmatchedSingularPoint(ValueError):
    pass


class PlanInconsistent(ValueError):
    pass


class NotTorus(ValueError):
    pass


class NotSingleIntersection(ValueError):
    pass


@dataclass(frozen=True)
class GluingPlan:
    """Recipe for a fiber connected sum.

    point_matching pairs event ids (one on fiber_a, one on fiber_b);
    surface_joins names each output surface and lists the pieces (from
    either side) glued into it.  b1/b2 of the result are declared here
    and validated against Euler-characteristic consistency.
    """

    fiber_a: str
    fiber_b: str
    point_matching: tuple[tuple[str, str], ...]
    surface_joins: tuple[tuple[str, tuple[str, ...]], ...]
    b1: int
    b2: int


@dataclass
class LogEntry:
    op: str
    kwargs: dict
    before: tuple[int, int, int]  # (euler, b1, b2)
    after: tuple[int, int, int]
    surface_deltas: dict


@dataclass
class SurgeryLog:
    entries: list[LogEntry] = field(default_factory=list)

    def record(self, op: str, kwargs: dict, before: OrbifoldConfig,
               after: OrbifoldConfig) -> None:
        deltas = {}
        old = {s.id: s for s in before.surfaces}
        for s in after.surfaces:
            prev = old.get(s.id)
            if prev is None:
                deltas[s.id] = ("new", s.genus, s.self_intersection)
            elif (prev.genus, prev.self_intersection) != (
                    s.genus, s.self_intersection):
                deltas[s.id] = ("delta", s.genus - prev.genus,
                                s.self_intersection - prev.self_intersection)
        for sid in old:
            if not after.has_surface(sid):
                deltas[sid] = ("gone", 0, Fraction(0))
        self.entries.append(LogEntry(
            op, kwargs,
            (before.euler, before.b1, before.b2),
            (after.euler, after.b1, after.b2), deltas))


_REPLAY = {}


def _replayable(fn):
    _REPLAY[fn.__name__] = fn
    return fn


def replay(initial: OrbifoldConfig, log: SurgeryLog) -> OrbifoldConfig:
    """Re-apply a recorded operation sequence to a starting config."""
    cfg = initial
    for entry in log.entries:
        cfg = _REPLAY[entry.op](cfg, **entry.kwargs)
    return cfg


def _invalidate_basis(cfg: OrbifoldConfig) -> None:
    # every move changes H_2, so declared coordinates go stale
    cfg.basis = None
    cfg.integral_pairing = None
    for s in cfg.surfaces:
        s.qclass = None


@_replayable
def blow_up(cfg: OrbifoldConfig, through=(), exceptional_id=None,
            log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Blow up a smooth point met pairwise-transversely by `through`.

    Adds the exceptional (-1)-sphere, drops each listed surface's
    self-intersection by 1, separates their pairwise intersections at
    the point, and meets each of them once.
    """
    before = cfg
    cfg = cfg.copy()
    through = list(through)
    for sid in through:
        cfg.surface(sid)
    for a, b in combinations(through, 2):
        smooth = [e for e in cfg.events_between(a, b) if e.location == SMOOTH]
        if not smooth:
            raise NotSmoothPoint(
                f"{a} and {b} have no smooth intersection point to blow up")
        cfg.events.remove(smooth[0])
    eid = exceptional_id
    if eid is None:
        k = 1
        while cfg.has_surface(f"E{k}"):
            k += 1
        eid = f"E{k}"
    elif cfg.has_surface(eid):
        raise ValueError(f"surface id {eid!r} already in use")
    for sid in through:
        cfg.surface(sid).self_intersection -= 1
    cfg.surfaces.append(SurfaceData(eid, genus=0, multiplicity=1, local_j=0,
                                    self_intersection=Fraction(-1)))
    for sid in through:
        cfg.add_event(sid, eid)
    cfg.b2 += 1
    cfg.euler += 1
    _invalidate_basis(cfg)
    if log is not None:
        log.record("blow_up", {"through": tuple(through),
                               "exceptional_id": eid}, before, cfg)
    return cfg


@_replayable
def blow_down_minus2(cfg: OrbifoldConfig, sphere: str, point_id=None,
                     log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Collapse a (-2)-sphere to an ordinary double point of order 2.

    Surfaces that met the sphere become incident to the new point; each
    gains +1/2 of self-intersection, and each pair of them gains a +1/2
    intersection through the point.
    """
    before = cfg
    cfg = cfg.copy()
    s = cfg.surface(sphere)
    if s.genus != 0 or s.multiplicity != 1 or s.self_intersection != -2:
        raise NotMinusTwoSphere(
            f"{sphere}: genus {s.genus}, multiplicity {s.multiplicity}, "
            f"self-intersection {s.self_intersection}")
    if cfg.points_on(sphere) or any(e.location != SMOOTH
                                    for e in cfg.events_on(sphere)):
        raise MeetsSingularPoint(f"{sphere} passes through a singular point")
    neighbors: list[str] = []
    for e in cfg.events_on(sphere):
        other = e.b if e.a == sphere else e.a
        if other in neighbors:
            raise UnsupportedGeometry(
                f"{sphere} meets {other} more than once")
        neighbors.append(other)
    if len(neighbors) > 2:
        raise UnsupportedGeometry(
            f"{sphere} meets {len(neighbors)} surfaces; the double point "
            "would lie on more than two of them")
    cfg.surfaces.remove(s)
    cfg.events = [e for e in cfg.events if sphere not in (e.a, e.b)]
    pid = point_id or cfg.fresh_point_id()
    cfg.points.append(SingularPointData(pid, order=2, exponents=(1, 1),
                                        incident=tuple(neighbors)))
    for sid in neighbors:
        cfg.surface(sid).self_intersection += Fraction(1, 2)
    for a, b in combinations(neighbors, 2):
        cfg.add_event(a, b, location=pid)
    cfg.b2 -= 1
    cfg.euler -= 1
    _invalidate_basis(cfg)
    if log is not None:
        log.record("blow_down_minus2", {"sphere": sphere, "point_id": pid},
                   before, cfg)
    return cfg


@_replayable
def resolve_torus_pair(cfg: OrbifoldConfig, t1: str, t2: str, new_id: str,
                       log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Resolve a transverse torus pair into a disjoint genus-2 surface.

    Smooths the crossing into a genus-2 surface of square t1^2+t2^2+2,
    then blows up the common point, leaving the three surfaces disjoint
    with squares (t1^2-1, t2^2-1, t1^2+t2^2+1); the exceptional sphere
    is not tracked afterwards.
    """
    before = cfg
    cfg = cfg.copy()
    for tid in (t1, t2):
        t = cfg.surface(tid)
        if t.genus != 1 or t.multiplicity != 1:
            raise NotTorus(f"{tid}: genus {t.genus}, "
                           f"multiplicity {t.multiplicity}")
    mutual = [e for e in cfg.events_between(t1, t2) if e.location == SMOOTH]
    if len(cfg.events_between(t1, t2)) != 1 or len(mutual) != 1:
        raise NotSingleIntersection(
            f"{t1} and {t2} must meet in exactly one smooth point")
    if cfg.has_surface(new_id):
        raise ValueError(f"surface id {new_id!r} already in use")
    cfg.events.remove(mutual[0])
    a = cfg.surface(t1).self_intersection
    b = cfg.surface(t2).self_intersection
    cfg.surface(t1).self_intersection = a - 1
    cfg.surface(t2).self_intersection = b - 1
    cfg.surfaces.append(SurfaceData(new_id, genus=2, multiplicity=1,
                                    local_j=0, self_intersection=a + b + 1))
    cfg.b2 += 1
    cfg.euler += 1
    _invalidate_basis(cfg)
    if log is not None:
        log.record("resolve_torus_pair", {"t1": t1, "t2": t2,
                                          "new_id": new_id}, before, cfg)
    return cfg


@_replayable
def discard(cfg: OrbifoldConfig, surface: str,
            log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Stop tracking a surface (topology and Betti numbers unchanged)."""
    before = cfg
    cfg = cfg.copy()
    cfg.discard_surface(surface)
    if log is not None:
        log.record("discard", {"surface": surface}, before, cfg)
    return cfg


@_replayable
def rename(cfg: OrbifoldConfig, old: str, new: str,
           log: SurgeryLog | None = None) -> OrbifoldConfig:
    before = cfg
    cfg = cfg.copy()
    cfg.rename_surface(old, new)
    if log is not None:
        log.record("rename", {"old": old, "new": new}, before, cfg)
    return cfg


@_replayable
def assign_isotropy(cfg: OrbifoldConfig, assignment: dict,
                    log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Declare multiplicities and local invariants: id -> (m, j)."""
    before = cfg
    cfg = cfg.copy()
    for sid, (m, j) in assignment.items():
        s = cfg.surface(sid)
        s.multiplicity = m
        s.local_j = j % m if m > 1 else 0
    if log is not None:
        log.record("assign_isotropy", {"assignment": dict(assignment)},
                   before, cfg)
    return cfg


@_replayable
def declare_lattice(cfg: OrbifoldConfig, basis, qclasses: dict,
                    integral_pairing: IntMatrix | None = None,
                    log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Declare an H_2 basis, surface coordinates and the integral pairing.

    Reorders the surface list to follow the basis when the basis lists
    every surface.
    """
    before = cfg
    cfg = cfg.copy()
    cfg.basis = tuple(basis)
    for sid in cfg.basis:
        cfg.surface(sid)
    for sid, q in qclasses.items():
        cfg.surface(sid).qclass = tuple(Fraction(x) for x in q)
    if set(cfg.basis) == {s.id for s in cfg.surfaces}:
        order = {sid: k for k, sid in enumerate(cfg.basis)}
        cfg.surfaces.sort(key=lambda s: order[s.id])
    cfg.integral_pairing = integral_pairing
    if log is not None:
        log.record("declare_lattice",
                   {"basis": tuple(basis), "qclasses": dict(qclasses),
                    "integral_pairing": integral_pairing}, before, cfg)
    return cfg


def gompf_fiber_sum(cfg_a: OrbifoldConfig, cfg_b: OrbifoldConfig,
                    plan: GluingPlan,
                    log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Fiber connected sum of two configs along matched surfaces.

    Both fiber surfaces are consumed; matched intersection points are
    used up by the gluing (matched singular points disappear from the
    result); each surface join becomes one output surface whose genus
    follows from Euler-characteristic additivity of the glued pieces.
    """
    fa = cfg_a.surface(plan.fiber_a)
    fb = cfg_b.surface(plan.fiber_b)
    if fa.genus != fb.genus:
        raise GenusMismatch(f"fiber genera {fa.genus} != {fb.genus}")
    if fa.self_intersection + fb.self_intersection != 0:
        raise NormalBundleObstruction(
            f"{fa.self_intersection} + {fb.self_intersection} != 0")

    ids_a = {s.id for s in cfg_a.surfaces}
    ids_b = {s.id for s in cfg_b.surfaces}
    if ids_a & ids_b:
        raise ValueError(f"surface id collision: {sorted(ids_a & ids_b)}")
    ev_ids_a = {e.id for e in cfg_a.events}
    ev_ids_b = {e.id for e in cfg_b.events}
    if ev_ids_a & ev_ids_b:
        raise ValueError(f"event id collision: {sorted(ev_ids_a & ev_ids_b)}")
    pt_ids = {p.id for p in cfg_a.points} & {p.id for p in cfg_b.points}
    if pt_ids:
        raise ValueError(f"point id collision: {sorted(pt_ids)}")

    on_a = {e.id: e for e in cfg_a.events_on(plan.fiber_a)}
    on_b = {e.id: e for e in cfg_b.events_on(plan.fiber_b)}
    matched_a = [m[0] for m in plan.point_matching]
    matched_b = [m[1] for m in plan.point_matching]
    if sorted(matched_a) != sorted(on_a) or sorted(matched_b) != sorted(on_b):
        raise PlanInconsistent(
            "point_matching must pair every fiber intersection exactly once")

    consumed_points: set[str] = set()
    for ea_id, eb_id in plan.point_matching:
        ea, eb = on_a[ea_id], on_b[eb_id]
        la, lb = ea.location, eb.location
        if (la == SMOOTH) != (lb == SMOOTH):
            raise UnmatchedSingularPoint(
                f"{ea_id} ({la}) matched with {eb_id} ({lb})")
        if la != SMOOTH:
            da = cfg_a.point(la).order
            db = cfg_b.point(lb).order
            if da != db:
                raise UnmatchedSingularPoint(
                    f"orders {da} != {db} at {la} / {lb}")
            consumed_points.update((la, lb))
    for cfg, fiber in ((cfg_a, plan.fiber_a), (cfg_b, plan.fiber_b)):
        for pt in cfg.points_on(fiber):
            if pt.id not in consumed_points:
                raise UnmatchedSingularPoint(
                    f"singular point {pt.id} on {fiber} is not matched")

    piece_of: dict[str, str] = {}
    for out_id, pieces in plan.surface_joins:
        for sid in pieces:
            if sid in piece_of:
                raise PlanInconsistent(f"{sid} appears in two joins")
            piece_of[sid] = out_id
    for sid in piece_of:
        if not (cfg_a.has_surface(sid) or cfg_b.has_surface(sid)):
            raise PlanInconsistent(f"join references unknown surface {sid!r}")
    if plan.fiber_a in piece_of or plan.fiber_b in piece_of:
        raise PlanInconsistent("a fiber surface cannot be a join piece")

    def lookup(sid):
        return (cfg_a if cfg_a.has_surface(sid) else cfg_b).surface(sid)

    matched_in_join: dict[str, int] = {out_id: 0
                                       for out_id, _ in plan.surface_joins}
    for ea_id, eb_id in plan.point_matching:
        ea, eb = on_a[ea_id], on_b[eb_id]
        pa = ea.b if ea.a == plan.fiber_a else ea.a
        pb = eb.b if eb.a == plan.fiber_b else eb.a
        ja, jb = piece_of.get(pa), piece_of.get(pb)
        if ja is None or ja != jb:
            raise PlanInconsistent(
                f"matched pair ({ea_id}, {eb_id}) joins {pa} with {pb}, "
                "which do not share an output surface")
        matched_in_join[ja] += 1

    out = OrbifoldConfig()
    out.euler = cfg_a.euler + cfg_b.euler - (2 - 2 * fa.genus)
    out.b1, out.b2 = plan.b1, plan.b2
    if out.euler != 2 - 2 * plan.b1 + plan.b2:
        raise PlanInconsistent(
            f"declared b1={plan.b1}, b2={plan.b2} disagree with "
            f"euler characteristic {out.euler}")

    for cfg in (cfg_a, cfg_b):
        for s in cfg.surfaces:
            if s.id in (plan.fiber_a, plan.fiber_b) or s.id in piece_of:
                continue
            out.surfaces.append(SurfaceData(s.id, s.genus, s.multiplicity,
                                            s.local_j, s.self_intersection))
    for out_id, pieces in plan.surface_joins:
        chi = 0
        square = Fraction(0)
        for sid in pieces:
            s = lookup(sid)
            if s.multiplicity != 1:
                raise UnsupportedGeometry(
                    f"join piece {sid} has multiplicity {s.multiplicity}")
            chi += 2 - 2 * s.genus
            square += s.self_intersection
        chi -= 2 * matched_in_join[out_id]
        if chi % 2 != 0 or chi > 2:
            raise PlanInconsistent(
                f"join {out_id} has non-surface euler characteristic {chi}")
        out.surfaces.append(SurfaceData(out_id, genus=(2 - chi) // 2,
                                        multiplicity=1, local_j=0,
                                        self_intersection=square))

    def remap(sid):
        return piece_of.get(sid, sid)

    matched_ids = set(matched_a) | set(matched_b)
    for cfg, fiber in ((cfg_a, plan.fiber_a), (cfg_b, plan.fiber_b)):
        for e in cfg.events:
            if e.id in matched_ids or fiber in (e.a, e.b):
                continue
            if e.location in consumed_points:
                raise UnsupportedGeometry(
                    f"event {e.id} sits at consumed point {e.location}")
            a, b = remap(e.a), remap(e.b)
            if a == b:
                raise UnsupportedGeometry(
                    f"event {e.id} would join {a} to itself")
            out.events.append(IntersectionEvent(e.id, a, b, e.location))
        for p in cfg.points:
            if p.id in consumed_points:
                continue
            out.points.append(SingularPointData(
                p.id, p.order, p.exponents,
                tuple(remap(s) for s in p.incident if s != fiber)))
    out.event_seq = max(cfg_a.event_seq, cfg_b.event_seq)
    out.point_seq = max(cfg_a.point_seq, cfg_b.point_seq)
    if log is not None:
        log.record("gompf_fiber_sum", {"cfg_b": cfg_b.copy(), "plan": plan},
                   cfg_a, out)
    return out


def _gompf_replay(cfg, cfg_b, plan):
    return gompf_fiber_sum(cfg, cfg_b, plan)


_REPLAY["gompf_fiber_sum"] = _gompf_replay


# -- builders -----------------------------------------------------------


def build_block_Y() -> OrbifoldConfig:
    """First building block: a torus-fibered orbifold with 8 double points.

    b1 = 2, b2 = 6, euler 4.  Carries the multiplicity-one skeleton:
    a horizontal torus T1 through two of the double points, two spheres
    S1/S2 through four double points each, eleven generic torus fibers,
    and four tori U1..U4 meeting in the pairs (U1,U2), (U3,U4).
    Rational classes: [S2] = [S1], [fiber] = 2[S1].
    """
    cfg = OrbifoldConfig(b1=2, b2=6, euler=4)

    def unit(i):
        return tuple(Fraction(1 if k == i else 0) for k in range(6))

    fiber_ids = ["T1a", "T1b", "T2a"] + [f"T{i}" for i in range(3, 11)]
    cfg.surfaces.append(SurfaceData("T1", 1, qclass=unit(0)))
    cfg.surfaces.append(SurfaceData("S1", 0, qclass=unit(1)))
    cfg.surfaces.append(SurfaceData("S2", 0, qclass=unit(1)))
    twice_s1 = tuple(2 * x for x in unit(1))
    for fid in fiber_ids:
        cfg.surfaces.append(SurfaceData(fid, 1, qclass=twice_s1))
    for k in range(1, 5):
        cfg.surfaces.append(SurfaceData(f"U{k}", 1, qclass=unit(1 + k)))

    for j in range(1, 5):
        cfg.points.append(SingularPointData(
            f"p1q{j}", 2, (1, 1), ("S1", "T1") if j == 1 else ("S1",)))
    for j in range(1, 5):
        cfg.points.append(SingularPointData(
            f"p2q{j}", 2, (1, 1), ("S2", "T1") if j == 1 else ("S2",)))

    for fid in fiber_ids:
        cfg.events.append(IntersectionEvent(f"f_{fid}", fid, "T1"))
    cfg.events.append(IntersectionEvent("yp1", "S1", "T1", "p1q1"))
    cfg.events.append(IntersectionEvent("yp2", "S2", "T1", "p2q1"))
    cfg.events.append(IntersectionEvent("u12", "U1", "U2"))
    cfg.events.append(IntersectionEvent("u34", "U3", "U4"))

    cfg.basis = ("T1", "S1", "U1", "U2", "U3", "U4")
    return cfg


def build_block_W(stages: list | None = None,
                  log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Second building block, from the projective plane by surgery.

    Cubic C and lines L, L' through a common triple point: two blow-ups,
    a blow-down, a blow-up, a blow-down (yielding the half-integer
    surfaces A1, A2 and double points s1, s2), then eight blow-ups along
    C to kill its square.  Pass a list as `stages` to collect named
    (label, config) snapshots of the chain.
    """
    cfg = OrbifoldConfig(b1=0, b2=1, euler=3)
    cfg.surfaces.append(SurfaceData("C", 1, self_intersection=Fraction(9)))
    cfg.surfaces.append(SurfaceData("L", 0, self_intersection=Fraction(1)))
    cfg.surfaces.append(SurfaceData("Lp", 0, self_intersection=Fraction(1)))
    for k in range(3):
        cfg.events.append(IntersectionEvent(f"cl_{k}", "C", "L"))
        cfg.events.append(IntersectionEvent(f"clp_{k}", "C", "Lp"))
    cfg.events.append(IntersectionEvent("llp_0", "L", "Lp"))

    def snap(label):
        if stages is not None:
            stages.append((label, cfg.copy()))

    snap("P2")
    # the triple point: one C.L, one C.L', one L.L' crossing consumed
    cfg = blow_up(cfg, ["C", "L", "Lp"], exceptional_id="E", log=log)
    snap("X1")
    cfg = blow_up(cfg, ["E", "L"], exceptional_id="Ep", log=log)
    snap("X2")
    cfg = discard(cfg, "Ep", log=log)
    cfg = blow_down_minus2(cfg, "E", point_id="s1", log=log)
    snap("X3")
    cfg = blow_up(cfg, ["C", "L"], exceptional_id="A2", log=log)
    snap("X4")
    cfg = blow_down_minus2(cfg, "L", point_id="s2", log=log)
    cfg = rename(cfg, "Lp", "A1", log=log)
    snap("Wp")
    for i in range(3, 11):
        cfg = blow_up(cfg, ["C"], exceptional_id=f"E{i}", log=log)
    snap("W")
    return cfg


def build_Z(p: int, log: SurgeryLog | None = None) -> OrbifoldConfig:
    """Fiber sum of the two blocks, with isotropy multiplicities p^i.

    Result: 16 disjoint surfaces V1..V16 (genus 2,1,...,1,2,2) of
    multiplicity p^i and local invariant j = 1, six double points of
    order 2 (three each on V1 and V2), b1 = 0, b2 = 16, euler 18, with
    the shipped integral lattice model (2V1, 2V2, V3..V16).
    """
    y = build_block_Y()
    w = build_block_W()

    def only(events):
        (e,) = events
        return e.id

    s1_ev = only([e for e in w.events_between("C", "A1")
                  if e.location == "s1"])
    a1_smooth = sorted(e.id for e in w.events_between("C", "A1")
                       if e.location == SMOOTH)
    s2_ev = only([e for e in w.events_between("C", "A2")
                  if e.location == "s2"])
    a2_smooth = only([e for e in w.events_between("C", "A2")
                      if e.location == SMOOTH])

    matching = [("yp1", s1_ev), ("f_T1a", a1_smooth[0]),
                ("f_T1b", a1_smooth[1]),
                ("yp2", s2_ev), ("f_T2a", a2_smooth)]
    joins = [("V1", ("A1", "S1", "T1a", "T1b")),
             ("V2", ("A2", "S2", "T2a"))]
    for i in range(3, 11):
        matching.append((f"f_T{i}", only(w.events_between("C", f"E{i}"))))
        joins.append((f"V{i}", (f"E{i}", f"T{i}")))

    plan = GluingPlan("T1", "C", tuple(matching), tuple(joins), b1=0, b2=14)
    z = gompf_fiber_sum(y, w, plan, log=log)
    z = resolve_torus_pair(z, "U1", "U2", new_id="V15", log=log)
    z = resolve_torus_pair(z, "U3", "U4", new_id="V16", log=log)
    for k in range(1, 5):
        z = rename(z, f"U{k}", f"V{10 + k}", log=log)

    z = assign_isotropy(z, {f"V{i}": (p ** i, 1) for i in range(1, 17)},
                        log=log)
    basis = tuple(f"V{i}" for i in range(1, 17))
    qclasses = {f"V{i}": tuple(Fraction(1 if k == i - 1 else 0)
                               for k in range(16))
                for i in range(1, 17)}
    # integral basis 2V1, 2V2, V3..V16 pairs diagonally against the V's
    diag = [1, -1] + [-1] * 12 + [1, 1]
    pairing = IntMatrix.from_rows(
        [[diag[r] if r == i else 0 for i in range(16)] for r in range(16)])
    z = declare_lattice(z, basis, qclasses, integral_pairing=pairing, log=log)
    return z
