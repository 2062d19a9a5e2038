"""Towers (inverse sequences) and telescopes (direct sequences) of
finitely generated abelian groups, with exact or certified-classified
derived limits.

A tower or telescope is a finite prefix of groups and connecting maps,
optionally continued forever by an endomorphism of the last prefix group.
``lim`` is computed exactly whenever the tail's image chain stabilizes
(always true in finite cases and for towers of finite groups) or the tail
diagonalizes over a free group; ``lim1`` is classified as Zero via
Mittag-Leffler or as NonzeroUncountable via a strictly descending image
chain on a free summand. For a countable sequence, lim^i vanishes for all
i >= 2, so those terms are certified Zero outright. Every outcome carries
a human-readable certificate explaining which criterion fired.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import (ExtGroup, GroupMap, HomGroup, PresentedGroup,
                     Subquotient, _relations_for_orders, cokernel, inverse,
                     kernel, kernel_lattice)
from .matrices import (IntMatrix, column_basis, hstack, kernel_basis,
                       lattice_equal, smith_normal_form, vstack)

DEFAULT_KMAX = 64


class MalformedTower(ValueError):
    """Stage/map shapes of a tower do not line up."""


class MalformedTelescope(ValueError):
    """Stage/map shapes of a telescope do not line up."""


class NotComparable(ValueError):
    """The requested comparison needs a finitely generated colimit."""


@dataclass(frozen=True)
class Tower:
    """Inverse sequence A_1 <- A_2 <- ...; maps[k] sends stage k+2 to stage
    k+1 (0-indexed: stages[k+1] -> stages[k]). A ``tail`` endomorphism of
    the last prefix group continues the sequence eventually periodically."""

    stages: tuple
    maps: tuple = ()
    tail: GroupMap | None = None

    def __post_init__(self):
        if not self.stages:
            raise MalformedTower("a tower needs at least one stage")
        if len(self.maps) != len(self.stages) - 1:
            raise MalformedTower("expected %d connecting maps, got %d"
                                 % (len(self.stages) - 1, len(self.maps)))
        for k, f in enumerate(self.maps):
            if f.source != self.stages[k + 1] or f.target != self.stages[k]:
                raise MalformedTower("map %d does not connect stage %d to stage %d"
                                     % (k, k + 2, k + 1))
        if self.tail is not None and (self.tail.source != self.stages[-1]
                                      or self.tail.target != self.stages[-1]):
            raise MalformedTower("tail must be an endomorphism of the last prefix stage")

    @classmethod
    def constant(cls, group, length=1):
        stages = (group,) * length
        maps = tuple(GroupMap.identity(group) for _ in range(length - 1))
        return cls(stages, maps, GroupMap.identity(group))

    @classmethod
    def periodic(cls, endo):
        return cls((endo.source,), (), endo)

    def to_json(self):
        obj = {"prefix": {"groups": [g.to_json() for g in self.stages],
                          "maps": [f.matrix.to_json() for f in self.maps]}}
        if self.tail is not None:
            obj["tail"] = {"group": self.stages[-1].to_json(),
                           "endo": self.tail.matrix.to_json()}
        return obj

    @classmethod
    def from_json(cls, obj):
        return _sequence_from_json(cls, obj, inverse_direction=True)


@dataclass(frozen=True)
class Telescope:
    """Direct sequence A_1 -> A_2 -> ...; maps[k]: stages[k] -> stages[k+1],
    optionally continued by a ``tail`` endomorphism of the last stage."""

    stages: tuple
    maps: tuple = ()
    tail: GroupMap | None = None

    def __post_init__(self):
        if not self.stages:
            raise MalformedTelescope("a telescope needs at least one stage")
        if len(self.maps) != len(self.stages) - 1:
            raise MalformedTelescope("expected %d connecting maps, got %d"
                                     % (len(self.stages) - 1, len(self.maps)))
        for k, f in enumerate(self.maps):
            if f.source != self.stages[k] or f.target != self.stages[k + 1]:
                raise MalformedTelescope("map %d does not connect stage %d to stage %d"
                                         % (k, k + 1, k + 2))
        if self.tail is not None and (self.tail.source != self.stages[-1]
                                      or self.tail.target != self.stages[-1]):
            raise MalformedTelescope("tail must be an endomorphism of the last prefix stage")

    @classmethod
    def periodic(cls, endo):
        return cls((endo.source,), (), endo)

    def to_json(self):
        obj = {"prefix": {"groups": [g.to_json() for g in self.stages],
                          "maps": [f.matrix.to_json() for f in self.maps]}}
        if self.tail is not None:
            obj["tail"] = {"group": self.stages[-1].to_json(),
                           "endo": self.tail.matrix.to_json()}
        return obj

    @classmethod
    def from_json(cls, obj):
        return _sequence_from_json(cls, obj, inverse_direction=False)


def _sequence_from_json(cls, obj, inverse_direction):
    prefix = obj.get("prefix", {"groups": [], "maps": []})
    groups = [PresentedGroup.from_json(g) for g in prefix.get("groups", [])]
    mats = [IntMatrix.from_json(m) for m in prefix.get("maps", [])]
    tail_obj = obj.get("tail")
    if not groups:
        if tail_obj is None:
            raise (MalformedTower if inverse_direction else MalformedTelescope)(
                "need a prefix or a tail")
        groups = [PresentedGroup.from_json(tail_obj["group"])]
        mats = []
    if len(mats) != len(groups) - 1:
        raise (MalformedTower if inverse_direction else MalformedTelescope)(
            "expected %d prefix maps, got %d" % (len(groups) - 1, len(mats)))
    maps = []
    for k, mat in enumerate(mats):
        if inverse_direction:
            maps.append(GroupMap(groups[k + 1], groups[k], mat))
        else:
            maps.append(GroupMap(groups[k], groups[k + 1], mat))
    tail = None
    if tail_obj is not None:
        tail_group = PresentedGroup.from_json(tail_obj["group"])
        if tail_group != groups[-1]:
            raise (MalformedTower if inverse_direction else MalformedTelescope)(
                "tail group %s differs from the last prefix group %s"
                % (tail_group, groups[-1]))
        tail = GroupMap(groups[-1], groups[-1], IntMatrix.from_json(tail_obj["endo"]))
    return cls(tuple(groups), tuple(maps), tail)


# -- outcomes ---------------------------------------------------------------

EXACT = "exact"
ZERO = "zero"
NONZERO_UNCOUNTABLE = "nonzero-uncountable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class LimOutcome:
    """Result of a derived-limit computation.

    kind is one of "exact" (group computed exactly), "zero",
    "nonzero-uncountable" or "unknown"; ``certificate`` states the
    criterion that produced the classification. ``presentation`` (internal)
    lets callers express comparison maps into an exactly computed limit.
    """

    kind: str
    group: PresentedGroup | None
    certificate: str
    presentation: object = field(default=None, compare=False, repr=False)

    def describe(self):
        if self.kind == ZERO:
            return "0"
        if self.kind == EXACT:
            return self.group.describe()
        if self.kind == NONZERO_UNCOUNTABLE:
            return "nonzero (uncountable)"
        return "unknown"

    @property
    def is_exact(self):
        return self.kind in (EXACT, ZERO)

    def to_json(self):
        obj = {"kind": self.kind, "value": self.describe(), "certificate": self.certificate}
        if self.group is not None:
            obj["group"] = self.group.to_json()
        return obj


def _outcome(group, certificate, presentation=None):
    kind = ZERO if group.is_trivial else EXACT
    return LimOutcome(kind, group, certificate, presentation)


class _ProductLimPresentation:
    """lim of a finite tower as the kernel of the difference map on the
    product of the stages; converts families of comparison maps (one per
    stage) into a map into the limit."""

    def __init__(self, tower):
        self.tower = tower
        orders = sum((g.orders for g in tower.stages), ())
        self.orders = orders
        n = len(orders)
        offs = []
        pos = 0
        for g in tower.stages:
            offs.append(pos)
            pos += g.n_gens
        rows = []
        for k in range(len(tower.stages) - 1):
            tgt = tower.stages[k]
            for i in range(tgt.n_gens):
                row = [0] * n
                row[offs[k] + i] = 1
                for j in range(tower.stages[k + 1].n_gens):
                    row[offs[k + 1] + j] -= tower.maps[k].matrix.data[i][j]
                rows.append(row)
        diff = IntMatrix(len(rows), n, rows)
        self.sq = Subquotient(kernel_lattice(diff, sum((tower.stages[k].orders
                                                        for k in range(len(tower.stages) - 1)), ())),
                              _relations_for_orders(orders))
        self.group = self.sq.group

    def map_into(self, stage_maps, tail_map=None):
        if len(stage_maps) != len(self.tower.stages):
            raise ValueError("need one comparison map per prefix stage")
        stacked = vstack(*[f.matrix for f in stage_maps])
        return GroupMap(stage_maps[0].source, self.group, self.sq.coords_matrix(stacked))


class _StableLimPresentation:
    """lim of an eventually periodic tower as a stable subgroup of the last
    prefix stage; comparison maps through the tail stage land inside it."""

    def __init__(self, tower, sq, note):
        self.tower = tower
        self.sq = sq
        self.group = sq.group
        self.note = note

    def map_into(self, stage_maps, tail_map=None):
        f = tail_map if tail_map is not None else stage_maps[-1]
        if f.target != self.tower.stages[-1]:
            raise ValueError("comparison must land in the tail stage")
        return GroupMap(f.source, self.group, self.sq.coords_matrix(f.matrix))


def _image_chain(endo, k_max):
    """Iterate L_{k+1} = endo(L_k) + relations until the lattice stabilizes.

    Returns (stable_lattice, steps) or (last_lattice, None) if k_max was hit.
    """
    A = endo.source
    rel = A.relation_matrix()
    current = column_basis(hstack(IntMatrix.identity(A.n_gens), rel))
    for step in range(k_max):
        nxt = column_basis(hstack(endo.matrix * current, rel))
        if lattice_equal(nxt, current):
            return current, step
        current = nxt
    return current, None


def _diagonal_tail(endo):
    """If the tail acts on a free group and diagonalizes (literally, or by
    the conjugating pair of its Smith form), return (diag entries, basis
    columns for the +-1 part); else None."""
    A = endo.source
    if A.torsion or A.free_rank == 0:
        return None
    F = endo.matrix
    if F.is_diagonal():
        diag = [F.data[i][i] for i in range(A.free_rank)]
        unit_cols = [[int(i == j) for i in range(A.free_rank)]
                     for j in range(A.free_rank) if abs(diag[j]) == 1]
        return diag, IntMatrix.from_columns(unit_cols, A.free_rank)
    s = smith_normal_form(F)
    if (s.v * s.u).is_identity():
        # F = Uinv * D * U: conjugate to a diagonal matrix
        diag = list(s.diagonal)
        cols = [s.uinv.column(j) for j in range(A.free_rank) if abs(diag[j]) == 1]
        return diag, IntMatrix.from_columns(cols, A.free_rank)
    return None


def lim(tower, k_max=DEFAULT_KMAX):
    """Inverse limit of a tower.

    Finite towers give the kernel of the difference map on the product.
    Periodic tails are resolved by image-chain stabilization (the
    restriction of the tail to its stable image is an automorphism, so the
    limit is that stable subgroup) or, failing that within k_max steps, by
    a diagonal classification over a free stage.
    """
    if tower.tail is None:
        pres = _ProductLimPresentation(tower)
        return _outcome(pres.group,
                        "finite tower: kernel of the difference map on the product of %d stages"
                        % len(tower.stages), pres)
    stable, steps = _image_chain(tower.tail, k_max)
    A = tower.stages[-1]
    if steps is not None:
        sq = Subquotient(stable, A.relation_matrix())
        pres = _StableLimPresentation(tower, sq, steps)
        return _outcome(pres.group,
                        "image chain of the tail stabilizes after %d steps; the tail restricts "
                        "to an automorphism of the stable subgroup" % steps, pres)
    diag = _diagonal_tail(tower.tail)
    if diag is not None:
        entries, unit_basis = diag
        sq = Subquotient(unit_basis, IntMatrix.zeros(A.free_rank, 0))
        pres = _StableLimPresentation(tower, sq, None)
        cert = ("tail diagonalizes over a free stage with entries %s; |d|>=2 summands have "
                "intersection of images zero, +-1 summands contribute Z" % (entries,))
        return _outcome(pres.group, cert, pres)
    return LimOutcome(UNKNOWN, None,
                      "image chain still strictly descending after %d steps and the tail "
                      "does not diagonalize" % k_max)


def lim1(tower, k_max=DEFAULT_KMAX):
    """First derived limit, classified: Zero under Mittag-Leffler, or
    NonzeroUncountable when a free diagonal summand descends strictly."""
    if tower.tail is None:
        return LimOutcome(ZERO, PresentedGroup(0, ()),
                          "finite tower is Mittag-Leffler: images stabilize at the last stage")
    stable, steps = _image_chain(tower.tail, k_max)
    if steps is not None:
        return LimOutcome(ZERO, PresentedGroup(0, ()),
                          "Mittag-Leffler: the image chain of the tail stabilizes after %d steps"
                          % steps)
    diag = _diagonal_tail(tower.tail)
    if diag is not None:
        entries, _ = diag
        bad = [d for d in entries if abs(d) >= 2]
        if bad:
            return LimOutcome(
                NONZERO_UNCOUNTABLE, None,
                "free summand with multiplication by %d: images d^k Z descend strictly, "
                "Mittag-Leffler fails, and the first derived limit of such a tower is "
                "uncountable" % bad[0])
    return LimOutcome(UNKNOWN, None,
                      "image chain did not stabilize within %d steps and no diagonal "
                      "certificate applies" % k_max)


def lim_higher(tower, i, k_max=DEFAULT_KMAX):
    """lim^i for i >= 2 vanishes for every countable tower of abelian groups."""
    if i < 2:
        raise ValueError("lim_higher handles i >= 2; use lim or lim1")
    return LimOutcome(ZERO, PresentedGroup(0, ()),
                      "lim^%d of a countable tower of abelian groups vanishes" % i)


# -- colimits ---------------------------------------------------------------


@dataclass(frozen=True)
class ColimOutcome:
    """Direct limit of a telescope.

    kind "exact": ``group`` holds colim, ``injections`` the universal maps
    from the prefix stages (the last one doubling as the map from the tail
    stage). kind "symbolic": the colimit is certified not finitely
    generated; ``hom_into``/``ext_into`` on the parent SymbolicTelescope
    remain available.
    """

    kind: str
    group: PresentedGroup | None
    certificate: str
    description: str
    injections: tuple = ()
    tail_data: object = field(default=None, compare=False, repr=False)

    def to_json(self):
        obj = {"kind": self.kind, "value": self.description, "certificate": self.certificate}
        if self.group is not None:
            obj["group"] = self.group.to_json()
        return obj


def _prefix_composites_to_last(maps, stages):
    comps = [None] * len(stages)
    comps[-1] = GroupMap.identity(stages[-1])
    for k in range(len(stages) - 2, -1, -1):
        comps[k] = comps[k + 1] @ maps[k]
    return comps


def colim(telescope, k_max=DEFAULT_KMAX):
    """Direct limit of a telescope, exact whenever it is finitely generated.

    With a periodic tail f the kernels ker(f^k) stabilize; modding them out
    leaves an injective induced endomorphism. If that endomorphism is also
    surjective the colimit is the quotient itself; otherwise the colimit is
    a strictly increasing union, certified not finitely generated, and only
    symbolic queries remain.
    """
    stages, maps = telescope.stages, telescope.maps
    if telescope.tail is None:
        comps = _prefix_composites_to_last(maps, stages)
        return ColimOutcome(EXACT, stages[-1],
                            "finite telescope: the last stage with the composite maps into it",
                            stages[-1].describe(), tuple(comps))
    A = stages[-1]
    f = telescope.tail
    rel = A.relation_matrix()
    kernels = kernel_lattice(f.matrix, A.orders)
    current = column_basis(hstack(kernels, rel)) if rel.cols else column_basis(kernels)
    steps = None
    for step in range(k_max):
        nxt = _preimage_lattice(f, current, rel)
        if lattice_equal(nxt, current):
            steps = step
            break
        current = nxt
    if steps is None:
        return ColimOutcome(UNKNOWN, None,
                            "kernel chain still growing after %d steps" % k_max, "unknown")
    quot = Subquotient(IntMatrix.identity(A.n_gens), current)
    abar = quot.group
    fbar = GroupMap(abar, abar, quot.coords_matrix(f.matrix * quot.lifts))
    coker_group, _ = cokernel(fbar)
    if coker_group.is_trivial:
        fbar_inv = inverse(fbar)
        proj = GroupMap(A, abar, quot.coords_matrix(IntMatrix.identity(A.n_gens)))
        comps = _prefix_composites_to_last(maps, stages)
        injections = tuple(proj @ c for c in comps)
        return ColimOutcome(
            EXACT, abar,
            "kernel chain stabilizes after %d steps; the induced endomorphism of the "
            "quotient is an automorphism" % steps,
            abar.describe(), injections, (proj, fbar, fbar_inv))
    desc = _symbolic_description(abar, fbar)
    return ColimOutcome(
        "symbolic", None,
        "kernel chain stabilizes after %d steps but the induced injective endomorphism "
        "has cokernel %s; the colimit is a strictly increasing union, hence not finitely "
        "generated" % (steps, coker_group.describe()),
        desc, (), (quot, fbar))


def _preimage_lattice(f, lattice, rel):
    """Generators of {x : f(x) in span(lattice)} inside the source's gens."""
    n = f.source.n_gens
    stacked = hstack(f.matrix, lattice) if lattice.cols else f.matrix
    kb = kernel_basis(stacked)
    pre = IntMatrix.from_rows([kb.data[i] for i in range(n)]) if n else IntMatrix.zeros(0, kb.cols)
    return column_basis(hstack(pre, rel) if rel.cols else pre)


def _symbolic_description(abar, fbar):
    if not abar.torsion and fbar.matrix.is_diagonal():
        parts = []
        for i in range(abar.free_rank):
            d = fbar.matrix.data[i][i]
            parts.append("Z" if abs(d) == 1 else "Z[1/%d]" % abs(d))
        if parts:
            return " + ".join(parts)
    return "colim(%s, injective endomorphism)" % abar.describe()


class SymbolicTelescope:
    """Wrapper for a telescope whose colimit is not finitely generated.

    Only two queries are supported, both reduced to tower computations:
    Hom(colim, G) = lim Hom(stages, G), and the Ext classification read off
    the six-term limit sequence.
    """

    def __init__(self, telescope, outcome, k_max=DEFAULT_KMAX):
        self.telescope = telescope
        self.outcome = outcome
        self.k_max = k_max

    def hom_into(self, coefficients):
        tower, _ = hom_tower(self.telescope, coefficients)
        return lim(tower, self.k_max)

    def ext_into(self, coefficients):
        return six_term_check(self.telescope, coefficients, self.k_max).ext_colim


# -- functor towers ---------------------------------------------------------


def hom_tower(telescope, coefficients):
    """Apply Hom(-, G) stagewise; a telescope becomes a tower."""
    homs = [HomGroup(g, coefficients) for g in telescope.stages]
    maps = [homs[k + 1].pullback(telescope.maps[k], homs[k])
            for k in range(len(telescope.maps))]
    tail = None
    if telescope.tail is not None:
        tail = homs[-1].pullback(telescope.tail, homs[-1])
    return Tower(tuple(h.group for h in homs), tuple(maps), tail), homs


def ext_tower(telescope, coefficients):
    """Apply Ext(-, G) stagewise; a telescope becomes a tower."""
    exts = [ExtGroup(g, coefficients) for g in telescope.stages]
    maps = [exts[k + 1].pullback(telescope.maps[k], exts[k])
            for k in range(len(telescope.maps))]
    tail = None
    if telescope.tail is not None:
        tail = exts[-1].pullback(telescope.tail, exts[-1])
    return Tower(tuple(e.group for e in exts), tuple(maps), tail), exts


# -- comparison and six-term reports ----------------------------------------


@dataclass(frozen=True)
class IsoReport:
    """A constructed map together with the verdict of its isomorphism check."""

    name: str
    source: PresentedGroup
    target: PresentedGroup
    map: GroupMap | None
    verified: bool
    detail: str

    def to_json(self):
        return {"name": self.name, "source": self.source.describe(),
                "target": self.target.describe(),
                "matrix": None if self.map is None else self.map.matrix.to_json(),
                "verified": self.verified, "detail": self.detail}


def hom_into_colim_check(telescope, coefficients, k_max=DEFAULT_KMAX):
    """Construct Hom(colim, G) -> lim Hom(stages, G) and verify it is an
    isomorphism. Raises NotComparable when the colimit is not finitely
    generated or the Hom tower's limit resists exact computation."""
    co = colim(telescope, k_max)
    if co.kind != EXACT:
        raise NotComparable("colimit is %s; Hom comparison needs a finitely generated colimit"
                            % co.kind)
    tower, homs = hom_tower(telescope, coefficients)
    limres = lim(tower, k_max)
    if not limres.is_exact:
        raise NotComparable("limit of the Hom tower is %s" % limres.kind)
    hom_colim = HomGroup(co.group, coefficients)
    if telescope.tail is None:
        stage_maps = [hom_colim.pullback(co.injections[k], homs[k])
                      for k in range(len(telescope.stages))]
        nat = limres.presentation.map_into(stage_maps)
    else:
        tail_pull = hom_colim.pullback(co.injections[-1] if co.injections else
                                       GroupMap.identity(co.group), homs[-1])
        nat = limres.presentation.map_into(None, tail_map=tail_pull)
    ok = kernel(nat)[0].is_trivial and cokernel(nat)[0].is_trivial
    detail = "kernel and cokernel of the comparison are trivial" if ok \
        else "comparison map is not an isomorphism"
    return IsoReport("Hom(colim, G) -> lim Hom", hom_colim.group, limres.group, nat, ok, detail)


@dataclass(frozen=True)
class SixTermReport:
    """The limit sequence
    0 -> lim1 Hom(A_k, G) -> Ext(colim A_k, G) -> lim Ext(A_k, G) -> lim2 Hom(A_k, G) -> 0
    with each term classified, and the middle map verified exactly whenever
    the colimit is finitely generated."""

    lim1_hom: LimOutcome
    ext_colim: LimOutcome
    lim_ext: LimOutcome
    lim2_hom: LimOutcome
    iso: IsoReport | None
    notes: tuple

    def to_json(self):
        return {"lim1_hom": self.lim1_hom.to_json(), "ext_colim": self.ext_colim.to_json(),
                "lim_ext": self.lim_ext.to_json(), "lim2_hom": self.lim2_hom.to_json(),
                "iso": None if self.iso is None else self.iso.to_json(),
                "notes": list(self.notes)}


def six_term_check(telescope, coefficients, k_max=DEFAULT_KMAX):
    homtw, _homs = hom_tower(telescope, coefficients)
    exttw, exts = ext_tower(telescope, coefficients)
    l1h = lim1(homtw, k_max)
    le = lim(exttw, k_max)
    l2h = lim_higher(homtw, 2, k_max)
    co = colim(telescope, k_max)
    notes = []
    iso = None
    if co.kind == EXACT:
        ext_co = ExtGroup(co.group, coefficients)
        if not le.is_exact:
            ext_colim = LimOutcome(UNKNOWN, None, "lim Ext did not resolve")
        else:
            if telescope.tail is None:
                stage_maps = [ext_co.pullback(co.injections[k], exts[k])
                              for k in range(len(telescope.stages))]
                nat = le.presentation.map_into(stage_maps)
            else:
                tail_pull = ext_co.pullback(co.injections[-1] if co.injections
                                            else GroupMap.identity(co.group), exts[-1])
                nat = le.presentation.map_into(None, tail_map=tail_pull)
            ok = kernel(nat)[0].is_trivial and cokernel(nat)[0].is_trivial
            iso = IsoReport("Ext(colim, G) -> lim Ext", ext_co.group,
                            le.group, nat, ok,
                            "kernel and cokernel trivial" if ok else "not an isomorphism")
            ext_colim = _outcome(ext_co.group,
                                 "colimit is finitely generated; Ext computed directly")
            if l1h.kind not in (ZERO, UNKNOWN):
                notes.append("lim1 Hom is %s yet Ext(colim) is finitely generated; "
                             "sequence cannot be exact" % l1h.kind)
    else:
        if l1h.kind == ZERO and le.is_exact:
            ext_colim = LimOutcome(
                le.kind, le.group,
                "lim1 Hom vanishes and lim2 Hom vanishes, so Ext(colim, G) = lim Ext exactly")
        elif l1h.kind == NONZERO_UNCOUNTABLE:
            ext_colim = LimOutcome(
                NONZERO_UNCOUNTABLE, None,
                "Ext(colim, G) contains lim1 Hom as a subgroup, and lim1 Hom is uncountable")
        else:
            ext_colim = LimOutcome(UNKNOWN, None, "ends of the sequence did not both resolve")
        notes.append("colimit is %s (%s)" % (co.kind, co.description))
    return SixTermReport(l1h, ext_colim, le, l2h, iso, tuple(notes))


@dataclass(frozen=True)
class ShiftReport:
    """lim^i Ext(A_k, G) compared against lim^{i+2} Hom(A_k, G)."""

    i: int
    lim_ext_i: LimOutcome
    lim_hom_i2: LimOutcome
    consistent: bool

    def to_json(self):
        return {"i": self.i, "lim_ext_i": self.lim_ext_i.to_json(),
                "lim_hom_i2": self.lim_hom_i2.to_json(), "consistent": self.consistent}


def shift_isomorphism_check(telescope, coefficients, i, k_max=DEFAULT_KMAX):
    """Check the degree-shift identification lim^i Ext = lim^{i+2} Hom.

    For i >= 1 the Ext towers consist of finite groups, so their derived
    limits are certified Zero by Mittag-Leffler, matching the vanishing of
    lim^{i+2} of any countable Hom tower.
    """
    if i < 1:
        raise ValueError("shift comparison needs i >= 1")
    homtw, _ = hom_tower(telescope, coefficients)
    exttw, _ = ext_tower(telescope, coefficients)
    left = lim1(exttw, k_max) if i == 1 else lim_higher(exttw, i, k_max)
    right = lim_higher(homtw, i + 2, k_max)
    consistent = (left.kind == right.kind) or UNKNOWN in (left.kind, right.kind)
    return ShiftReport(i, left, right, consistent)
