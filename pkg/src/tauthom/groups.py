"""Finitely generated abelian groups in invariant-factor normal form,
together with homomorphisms, kernels/images/cokernels, and the Hom and Ext
functors with explicit (contravariant) functorial action.

A group is always reported as Z^r (+) Z/d1 (+) ... (+) Z/dk with
2 <= d1 | d2 | ... | dk. Generators are ordered free part first, then
torsion generators in ascending order of their annihilators, and a
homomorphism is an integer matrix in those generators whose column j gives
the image of the j-th source generator. Entries in torsion target rows are
kept reduced modulo the row's annihilator, so equal maps compare equal.

>>> normalize(IntMatrix.from_rows([[2, 0], [0, 0]])).describe()
'Z + Z/2'
>>> hom_group(PresentedGroup(0, (4,)), PresentedGroup(0, (6,))).group.describe()
'Z/2'
>>> ext_group(PresentedGroup(0, (4,)), PresentedGroup(0, (6,))).group.describe()
'Z/2'
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from math import gcd

from .matrices import (IntMatrix, column_basis, hstack, kernel_basis,
                       lattice_equal, smith_normal_form, solve_columns)


class IllFormedMap(ValueError):
    """The matrix does not define a homomorphism between the given groups."""


class GroupParseError(ValueError):
    """Text does not match the group grammar; ``position`` points at the offender."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


@dataclass(frozen=True)
class PresentedGroup:
    """A finitely generated abelian group in invariant-factor form.

    ``presentation`` optionally retains the relation matrix the normal form
    was derived from; it is provenance only and never takes part in
    equality or hashing.
    """

    free_rank: int
    torsion: tuple = ()
    presentation: IntMatrix | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("torsion coefficients must form a divisor chain")
            prev = d

    # -- basic structure -------------------------------------------------

    @property
    def n_gens(self):
        return self.free_rank + len(self.torsion)

    @property
    def orders(self):
        """Annihilator of each generator; 0 marks an infinite-order generator."""
        return (0,) * self.free_rank + self.torsion

    @property
    def is_trivial(self):
        return self.n_gens == 0

    def cardinality(self):
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def relation_matrix(self):
        """n_gens x len(torsion); column i is d_i times the i-th torsion generator."""
        n = self.n_gens
        cols = []
        for i, d in enumerate(self.torsion):
            col = [0] * n
            col[self.free_rank + i] = d
            cols.append(col)
        return IntMatrix.from_columns(cols, n)

    def reduce(self, vec):
        """Canonical representative of an element given in generator coordinates."""
        vec = tuple(int(x) for x in vec)
        if len(vec) != self.n_gens:
            raise ValueError("element has %d coordinates, expected %d" % (len(vec), self.n_gens))
        return tuple(x % d if d else x for x, d in zip(vec, self.orders))

    def zero(self):
        return (0,) * self.n_gens

    def elements(self):
        """Iterate all elements (finite groups only)."""
        if self.free_rank:
            raise ValueError("infinite group")
        return itertools.product(*[range(d) for d in self.torsion])

    def element_order(self, vec):
        vec = self.reduce(vec)
        if any(x and d == 0 for x, d in zip(vec, self.orders)):
            return 0
        n = 1
        for x, d in zip(vec, self.orders):
            if x:
                n = n * (d // gcd(d, x)) // gcd(n, d // gcd(d, x))
        return n

    # -- construction ----------------------------------------------------

    @classmethod
    def from_orders(cls, orders):
        """Normal form of a direct sum of cyclic groups Z/d (d=0 meaning Z)."""
        orders = [int(d) for d in orders]
        if any(d < 0 for d in orders):
            raise ValueError("cyclic orders must be nonnegative")
        rows = []
        for i, d in enumerate(orders):
            if d:
                row = [0] * len(orders)
                row[i] = d
                rows.append(row)
        return normalize(IntMatrix(len(rows), len(orders), rows))

    def direct_sum(self, *others):
        orders = list(self.orders)
        for g in others:
            orders.extend(g.orders)
        return PresentedGroup.from_orders(orders)

    # -- reporting -------------------------------------------------------

    def describe(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.describe()

    def to_json(self):
        return {"free": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            return parse_group(obj)
        return PresentedGroup.from_orders([0] * int(obj["free"]) + list(obj["torsion"]))


def parse_group(text):
    """Parse 'Z', 'Z/6', 'Z^2 + Z/2 + Z/4', or '0' into normal form.

    Summands may appear in any order and need not satisfy the divisor-chain
    condition; the result is normalized, e.g. 'Z/6 + Z/4' -> Z/2 + Z/12.

    >>> parse_group('Z/6 + Z/4').describe()
    'Z/2 + Z/12'
    """
    orders = []
    pos = 0
    stripped = text.strip()
    if stripped == "0":
        return PresentedGroup(0, ())
    if stripped == "":
        raise GroupParseError("empty group expression", 0)
    for chunk in text.split("+"):
        term = chunk.strip()
        offset = pos + (len(chunk) - len(chunk.lstrip()))
        if term == "Z":
            orders.append(0)
        elif term.startswith("Z^"):
            body = term[2:]
            if not body.isdigit() or int(body) < 0:
                raise GroupParseError("bad free rank %r" % term, offset)
            orders.extend([0] * int(body))
        elif term.startswith("Z/"):
            body = term[2:]
            if not body.isdigit() or int(body) < 1:
                raise GroupParseError("bad cyclic order %r" % term, offset)
            orders.append(int(body))
        else:
            raise GroupParseError("expected Z, Z^r or Z/d, got %r" % term, offset)
        pos += len(chunk) + 1
    return PresentedGroup.from_orders(orders)


class Subquotient:
    """(column span of numerator) / (column span of denominator) inside Z^n.

    This is the single engine behind normalization, kernels, images,
    cokernels and homology. It keeps enough of the two Smith forms around
    to convert both ways between ambient coordinates and canonical
    generator coordinates:

    - ``group``       the quotient in invariant-factor form,
    - ``lifts``       ambient representatives of the canonical generators,
    - ``coords(x)``   canonical coordinates of an ambient vector (which must
                      lie in the numerator lattice).
    """

    __slots__ = ("ambient_dim", "group", "lifts", "_basis", "_proj")

    def __init__(self, numerator, denominator):
        if numerator.rows != denominator.rows:
            raise ValueError("numerator and denominator live in different ambient ranks")
        n = numerator.rows
        self.ambient_dim = n
        basis = column_basis(numerator)
        inside = solve_columns(basis, denominator)
        if inside is None:
            raise ValueError("denominator lattice is not contained in the numerator lattice")
        s = smith_normal_form(inside)
        p = basis.cols
        diag = s.diagonal
        orders = [diag[i] if i < len(diag) else 0 for i in range(p)]
        free_idx = [i for i in range(p) if orders[i] == 0]
        tors_idx = [i for i in range(p) if orders[i] >= 2]
        kept = free_idx + tors_idx
        self.group = PresentedGroup(len(free_idx), tuple(orders[i] for i in tors_idx))
        self.lifts = IntMatrix.from_columns(
            [ (basis * IntMatrix.from_columns([s.uinv.column(i)], p)).column(0) for i in kept ], n)
        self._basis = basis
        self._proj = IntMatrix.from_rows([s.u.row(i) for i in kept]) if kept \
            else IntMatrix.zeros(0, p)

    def coords_matrix(self, mat):
        """Canonical coordinates of each column of ``mat``."""
        t = solve_columns(self._basis, mat)
        if t is None:
            raise ValueError("vector lies outside the numerator lattice")
        raw = self._proj * t
        orders = self.group.orders
        data = [[x % d if d else x for x in row] for row, d in zip(raw.data, orders)]
        return IntMatrix(self.group.n_gens, mat.cols, data)

    def coords(self, vec):
        return self.coords_matrix(IntMatrix.from_columns([list(vec)], self.ambient_dim)).column(0)

    def contains(self, vec):
        return solve_columns(self._basis,
                             IntMatrix.from_columns([list(vec)], self.ambient_dim)) is not None

    def in_denominator(self, vec):
        return all(x == 0 for x in self.coords(vec))


def normalize(presentation):
    """Normal form of the abelian group with one generator per column of
    ``presentation`` and one relation per row.

    >>> normalize(IntMatrix.from_rows([[6, 4], [0, 2]])).describe()
    'Z/2 + Z/6'
    >>> normalize(IntMatrix(0, 3, [])).describe()
    'Z^3'
    """
    n = presentation.cols
    sq = Subquotient(IntMatrix.identity(n), presentation.transpose())
    return replace(sq.group, presentation=presentation)


class GroupMap:
    """Homomorphism between presented groups as an integer generator matrix.

    Column j is the image of the j-th source generator. Construction checks
    well-definedness (d_j times column j must die in the target) and
    reduces entries modulo the target's torsion annihilators.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix):
        if matrix.rows != target.n_gens or matrix.cols != source.n_gens:
            raise IllFormedMap("matrix is %dx%d but the groups need %dx%d"
                               % (matrix.rows, matrix.cols, target.n_gens, source.n_gens))
        tgt_orders = target.orders
        data = [[x % d if d else x for x in row] for row, d in zip(matrix.data, tgt_orders)]
        canon = IntMatrix(matrix.rows, matrix.cols, data)
        for j, dj in enumerate(source.orders):
            if dj == 0:
                continue
            for i, ei in enumerate(tgt_orders):
                v = dj * canon.data[i][j]
                if (v if ei == 0 else v % ei) != 0:
                    raise IllFormedMap(
                        "column %d: order-%d generator maps to an element not killed by %d"
                        % (j, dj, dj))
        self.source = source
        self.target = target
        self.matrix = canon

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.n_gens))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, IntMatrix.zeros(target.n_gens, source.n_gens))

    def __call__(self, vec):
        return self.target.reduce(self.matrix.apply(self.source.reduce(vec)))

    def __matmul__(self, other):
        """Composition self after other."""
        if other.target != self.source:
            raise IllFormedMap("composition mismatch: %s vs %s" % (other.target, self.source))
        return GroupMap(other.source, self.target, self.matrix * other.matrix)

    def __eq__(self, other):
        return (isinstance(other, GroupMap) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return "GroupMap(%s -> %s, %r)" % (self.source, self.target, self.matrix)

    @property
    def is_zero(self):
        return self.matrix.is_zero()

    @property
    def is_identity(self):
        return self.source == self.target and self == GroupMap.identity(self.source)

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(PresentedGroup.from_json(obj["source"]),
                   PresentedGroup.from_json(obj["target"]),
                   IntMatrix.from_json(obj["matrix"]))


# -- kernels, images, cokernels ------------------------------------------


def _relations_for_orders(orders):
    cols = []
    n = len(orders)
    for i, d in enumerate(orders):
        if d:
            col = [0] * n
            col[i] = d
            cols.append(col)
    return IntMatrix.from_columns(cols, n)


def kernel_lattice(matrix, target_orders):
    """Generators of {x in Z^cols : matrix*x == 0 modulo the target relations}."""
    rel = _relations_for_orders(tuple(target_orders))
    full = hstack(matrix, rel) if rel.cols else matrix
    kb = kernel_basis(full)
    return IntMatrix.from_rows([kb.data[i] for i in range(matrix.cols)]) if matrix.cols \
        else IntMatrix.zeros(0, kb.cols)


def kernel(f):
    """Kernel subgroup of a GroupMap: (group, inclusion into the source)."""
    lat = kernel_lattice(f.matrix, f.target.orders)
    sq = Subquotient(lat, f.source.relation_matrix())
    return sq.group, GroupMap(sq.group, f.source, sq.lifts)


def image(f):
    """Image subgroup: (group, inclusion into the target)."""
    rel = f.target.relation_matrix()
    sq = Subquotient(hstack(f.matrix, rel), rel)
    return sq.group, GroupMap(sq.group, f.target, sq.lifts)


def cokernel(f):
    """Cokernel quotient: (group, projection from the target)."""
    n = f.target.n_gens
    sq = Subquotient(IntMatrix.identity(n), hstack(f.matrix, f.target.relation_matrix()))
    return sq.group, GroupMap(f.target, sq.group, sq.coords_matrix(IntMatrix.identity(n)))


def subgroup_lattice(into_map):
    """Ambient lattice (in the target's generator space) of the image of a map."""
    return hstack(into_map.matrix, into_map.target.relation_matrix())


def same_subgroup(f, g):
    """Do two maps into a common target have the same image subgroup?"""
    if f.target != g.target:
        raise ValueError("maps land in different groups")
    return lattice_equal(subgroup_lattice(f), subgroup_lattice(g))


def is_injective(f):
    return kernel(f)[0].is_trivial


def is_surjective(f):
    return cokernel(f)[0].is_trivial


def is_isomorphism(f):
    return is_injective(f) and is_surjective(f)


def preimage_vector(f, vec):
    """Some x with f(x) == vec in the target, or None."""
    rel = f.target.relation_matrix()
    full = hstack(f.matrix, rel) if rel.cols else f.matrix
    sol = solve_columns(full, IntMatrix.from_columns([f.target.reduce(vec)], f.target.n_gens))
    if sol is None:
        return None
    return f.source.reduce(sol.column(0)[:f.source.n_gens])


def inverse(f):
    """Inverse GroupMap of an isomorphism, or None when f is not one."""
    cols = []
    for i in range(f.target.n_gens):
        e = [0] * f.target.n_gens
        e[i] = 1
        x = preimage_vector(f, e)
        if x is None:
            return None
        cols.append(list(x))
    g = GroupMap(f.target, f.source, IntMatrix.from_columns(cols, f.source.n_gens))
    if not (f @ g).is_identity or not (g @ f).is_identity:
        return None
    return g


def tensor_identity(mat, block):
    """mat (x) I_block, acting on vectors stored block-major: coordinate
    i*block + g is component g of the i-th block."""
    rows, cols = mat.rows * block, mat.cols * block
    data = [[0] * cols for _ in range(rows)]
    for i in range(mat.rows):
        row = mat.data[i]
        for j in range(mat.cols):
            x = row[j]
            if x:
                for g in range(block):
                    data[i * block + g][j * block + g] = x
    return IntMatrix(rows, cols, data)


# -- Hom and Ext -----------------------------------------------------------


class HomGroup:
    """Hom(A, G) for presented groups, with explicit conversions between
    canonical coordinates and actual homomorphisms.

    The generator pairs are (source generator j, coefficient generator i);
    the component at such a pair is cyclic of order gcd(d_j, e_i) generated
    by the map sending the j-th generator to (e_i/gcd) times the i-th.
    """

    __slots__ = ("source", "coefficients", "pairs", "_sq", "group")

    def __init__(self, source, coefficients):
        self.source = source
        self.coefficients = coefficients
        pairs = []
        for j, dj in enumerate(source.orders):
            for i, ei in enumerate(coefficients.orders):
                if dj == 0:
                    pairs.append((j, i, 1, ei))
                elif ei == 0:
                    continue
                else:
                    g = gcd(dj, ei)
                    if g > 1:
                        pairs.append((j, i, ei // g, g))
        self.pairs = tuple(pairs)
        m = len(pairs)
        self._sq = Subquotient(IntMatrix.identity(m),
                               _relations_for_orders(tuple(p[3] for p in pairs)))
        self.group = self._sq.group

    def to_map(self, coords):
        """The homomorphism source -> coefficients at canonical coordinates."""
        t = self._sq.lifts.apply(self.group.reduce(coords))
        data = [[0] * self.source.n_gens for _ in range(self.coefficients.n_gens)]
        for (j, i, c, _), val in zip(self.pairs, t):
            data[i][j] += val * c
        return GroupMap(self.source, self.coefficients,
                        IntMatrix(self.coefficients.n_gens, self.source.n_gens, data))

    def from_map(self, f):
        """Canonical coordinates of a homomorphism source -> coefficients."""
        if f.source != self.source or f.target != self.coefficients:
            raise IllFormedMap("map does not belong to this Hom group")
        t = []
        for (j, i, c, order) in self.pairs:
            e = f.matrix.data[i][j]
            if order == 0 or c == 1:
                t.append(e)
            else:
                if e % c:
                    raise IllFormedMap("entry (%d,%d) is not a multiple of %d" % (i, j, c))
                t.append(e // c)
        return self._sq.coords(t)

    def pullback(self, f, dest):
        """Contravariant action: f: B -> A induces Hom(A,G) -> Hom(B,G).

        ``self`` must be Hom(A,G) and ``dest`` Hom(B,G) over the same G.
        """
        if f.target != self.source or dest.source != f.source \
                or dest.coefficients != self.coefficients:
            raise IllFormedMap("pullback groups do not line up")
        cols = []
        for k in range(self.group.n_gens):
            e = [0] * self.group.n_gens
            e[k] = 1
            cols.append(list(dest.from_map(self.to_map(e) @ f)))
        return GroupMap(self.group, dest.group,
                        IntMatrix.from_columns(cols, dest.group.n_gens))


class ExtGroup:
    """Ext(A, G) computed from the free resolution
    0 -> Z^t --R--> Z^n -> A -> 0, i.e. the cokernel of
    Hom(Z^n, G) --(R transposed)--> Hom(Z^t, G).

    Elements are carried as G-tuples indexed by the torsion relations of A;
    ``project``/``lift`` convert between that raw space and canonical
    coordinates, and ``pullback`` gives the contravariant action by lifting
    a map of groups to a map of resolutions.
    """

    __slots__ = ("source", "coefficients", "_sq", "group")

    def __init__(self, source, coefficients):
        self.source = source
        self.coefficients = coefficients
        t = len(source.torsion)
        m = coefficients.n_gens
        rel_t = source.relation_matrix().transpose()          # t x n
        restr = tensor_identity(rel_t, m)                     # (t*m) x (n*m)
        denom = hstack(restr, _relations_for_orders(coefficients.orders * t)) \
            if t * m else IntMatrix.zeros(t * m, 0)
        self._sq = Subquotient(IntMatrix.identity(t * m), denom)
        self.group = self._sq.group

    def lift(self, coords):
        """Raw G-tuple (one block per torsion relation of A) representing
        the class at the given canonical coordinates."""
        return self._sq.lifts.apply(self.group.reduce(coords))

    def project(self, raw):
        return self._sq.coords(raw)

    def pullback(self, f, dest):
        """Contravariant action: f: B -> A induces Ext(A,G) -> Ext(B,G)."""
        if f.target != self.source or dest.source != f.source \
                or dest.coefficients != self.coefficients:
            raise IllFormedMap("pullback groups do not line up")
        m = self.coefficients.n_gens
        r_a = self.source.relation_matrix()
        r_b = f.source.relation_matrix()
        lifted = solve_columns(r_a, f.matrix * r_b)           # t_A x t_B
        if lifted is None:
            raise AssertionError("resolution lift must exist for a well-defined map")
        push = tensor_identity(lifted.transpose(), m)         # (t_B*m) x (t_A*m)
        cols = []
        for k in range(self.group.n_gens):
            e = [0] * self.group.n_gens
            e[k] = 1
            cols.append(list(dest.project(push.apply(self.lift(e)))))
        return GroupMap(self.group, dest.group,
                        IntMatrix.from_columns(cols, dest.group.n_gens))


def hom_group(source, coefficients):
    """Hom(source, coefficients) with coordinate adapters attached."""
    return HomGroup(source, coefficients)


def ext_group(source, coefficients):
    """Ext(source, coefficients) with coordinate adapters attached."""
    return ExtGroup(source, coefficients)
