"""Set-function homology on finite closure models.

A finite closure model is an atom set together with the combinatorial
record of which atom closures intersect (an abstract simplicial complex on
the atoms: the model IS its intersection pattern). Chains of degree n are
G-valued functions on (n+1)-tuples of blocks of a partition, subject to

  additivity      f(E' u E'', ...) = f(E', ...) + f(E'', ...) for disjoint
                  E', E'' (values on unions are derived by summation),
  alternation     permuting arguments multiplies by the sign, and a tuple
                  with a repeated argument evaluates to zero,
  disjointness    f vanishes on tuples whose closures have empty common
                  intersection.

Only compact models are supported: the whole space is an admissible open
bounded set, so the boundary operator is total,
Delta f(E_0,...,E_{n-1}) = f(U, E_0,...,E_{n-1}) with U = everything. The
repeated-argument clause then gives Delta Delta f = f(U, U, ...) = 0.

The homology of this chain complex is computed twice, by construction
routes that share no code path: once from boundary matrices obtained by
evaluating Delta on generator chains, and once from the nerve of the
partition via coefficient complexes over its integral cochain complex.
Any disagreement raises PipelineMismatch.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import CertificateFailure, CoefficientComplex, FreeComplex, uct_certificates
from .groups import (GroupMap, PresentedGroup, Subquotient, _relations_for_orders,
                     kernel_lattice, tensor_identity)
from .limits import Telescope, colim
from .matrices import IntMatrix, hstack


class NotACover(ValueError):
    """The union of the given sets is not the whole atom set."""


class NotARefinement(ValueError):
    """The allegedly finer partition does not refine the coarser one."""


class BlockMismatch(ValueError):
    """A set is not a union of blocks of the chain's partition."""


class PipelineMismatch(AssertionError):
    """The two independent homology pipelines disagree."""


class ConditionViolated(ValueError):
    """A telescope map is not a disjoint-support sum of basis elements.

    ``map_index`` is the offending prefix map index (or "tail");
    ``witness`` pinpoints the entry or the shared basis row.
    """

    def __init__(self, map_index, witness):
        self.map_index = map_index
        self.witness = witness
        super().__init__("map %s violates the disjoint-support basis condition: %s"
                         % (map_index, witness))


class FiniteModel:
    """Atoms 0..atoms-1 plus the downward-closed family of atom subsets
    with commonly intersecting closures. Every singleton is present (each
    atom meets its own closure); the model always stands for a compact
    space, so the union of all atoms is open and bounded."""

    __slots__ = ("atoms", "simplices", "maximal")

    def __init__(self, atoms, faces):
        atoms = int(atoms)
        if atoms <= 0:
            raise ValueError("a model needs at least one atom")
        self.atoms = atoms
        closed = set()
        for face in faces:
            face = frozenset(int(a) for a in face)
            if not face:
                continue
            if min(face) < 0 or max(face) >= atoms:
                raise ValueError("face %s mentions an atom outside 0..%d"
                                 % (sorted(face), atoms - 1))
            for r in range(1, len(face) + 1):
                for sub in itertools.combinations(sorted(face), r):
                    closed.add(frozenset(sub))
        for a in range(atoms):
            closed.add(frozenset((a,)))
        self.simplices = frozenset(closed)
        self.maximal = tuple(sorted(tuple(sorted(s)) for s in closed
                                    if not any(s < t for t in closed)))

    def closure_meets(self, atom_set):
        """Whether the closures of the given atoms have a common point."""
        s = frozenset(atom_set)
        return bool(s) and s in self.simplices

    @property
    def dimension(self):
        return max(len(s) for s in self.simplices) - 1

    def __eq__(self, other):
        return (isinstance(other, FiniteModel) and self.atoms == other.atoms
                and self.simplices == other.simplices)

    def __hash__(self):
        return hash((self.atoms, self.simplices))

    def __repr__(self):
        return "FiniteModel(atoms=%d, maximal=%r)" % (self.atoms, list(self.maximal))

    def to_json(self):
        return {"atoms": self.atoms, "nerve": [list(s) for s in self.maximal]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["atoms"], obj.get("nerve", []))


class Partition:
    """Pairwise disjoint nonempty atom blocks. Blocks are canonically
    ordered by smallest member, so nerve vertex order is deterministic."""

    __slots__ = ("blocks", "block_of")

    def __init__(self, blocks):
        cleaned = []
        seen = {}
        for block in blocks:
            block = tuple(sorted(int(a) for a in block))
            if not block:
                raise ValueError("empty block")
            if len(set(block)) != len(block):
                raise ValueError("block %r repeats an atom" % (block,))
            cleaned.append(block)
        cleaned.sort(key=lambda b: b[0])
        block_of = {}
        for i, block in enumerate(cleaned):
            for a in block:
                if a in seen:
                    raise ValueError("atom %d appears in two blocks" % a)
                seen[a] = True
                block_of[a] = i
        self.blocks = tuple(cleaned)
        self.block_of = block_of

    @classmethod
    def singletons(cls, atoms):
        return cls([(a,) for a in range(atoms)])

    @classmethod
    def one_block(cls, atoms):
        return cls([tuple(range(atoms))])

    def covers(self, atoms):
        return set(self.block_of) == set(range(atoms))

    def refines(self, other):
        """Every block of self is contained in a single block of other."""
        for block in self.blocks:
            targets = {other.block_of.get(a) for a in block}
            if len(targets) != 1 or None in targets:
                return False
        return True

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "Partition(%r)" % (list(self.blocks),)

    def to_json(self):
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, obj):
        return cls(obj)


def mosaic(sets):
    """Disjointify a finite system of atom sets.

    Returns the nonempty signature classes: atoms grouped by exactly which
    input sets contain them. The pieces are pairwise disjoint, cover the
    union, and every input set is the disjoint union of the pieces inside
    it. Deterministic order by smallest atom.
    """
    sets = [frozenset(int(a) for a in s) for s in sets]
    signature = {}
    for a in sorted(set().union(*sets) if sets else ()):
        sig = frozenset(i for i, s in enumerate(sets) if a in s)
        if sig:
            signature.setdefault(sig, []).append(a)
    pieces = sorted((tuple(v) for v in signature.values()), key=lambda p: p[0])
    return tuple(pieces)


def regularize(cover, atoms):
    """Disjointify a cover in input order: O1, O2 minus O1, ...; empty
    residues are dropped. Raises NotACover when the union misses an atom."""
    covered = set()
    blocks = []
    for s in cover:
        s = set(int(a) for a in s)
        residue = tuple(sorted(s - covered))
        if residue:
            blocks.append(residue)
            covered.update(residue)
    if covered != set(range(atoms)):
        raise NotACover("cover misses atoms %s" % sorted(set(range(atoms)) - covered))
    return Partition(blocks)


def _sort_with_sign(tup):
    """Sort a tuple, tracking permutation sign; None when entries repeat."""
    items = list(tup)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(items)):
        if items[i - 1] == items[i]:
            return None, 0
    return tuple(items), sign


class NerveComplex:
    """The nerve of a partition of a model: blocks are vertices, and
    distinct blocks B_0..B_n span a simplex when atoms a_i in B_i exist
    whose closures share a point. Simplices per dimension are sorted
    lexicographically; the integral simplicial chain complex is exposed as
    a FreeComplex."""

    __slots__ = ("model", "partition", "simplices", "index", "chain")

    def __init__(self, model, partition):
        if not partition.covers(model.atoms):
            raise ValueError("partition does not cover the model's atoms")
        self.model = model
        self.partition = partition
        nerve_sets = {frozenset(partition.block_of[a] for a in s)
                      for s in model.simplices}
        by_dim = {}
        for s in nerve_sets:
            by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
        dim = max(by_dim)
        self.simplices = tuple(tuple(sorted(by_dim.get(d, ()))) for d in range(dim + 1))
        self.index = tuple({s: i for i, s in enumerate(level)} for level in self.simplices)
        diffs = {}
        for n in range(1, dim + 1):
            rows = []
            lower = self.index[n - 1]
            for _ in range(len(self.simplices[n - 1])):
                rows.append([0] * len(self.simplices[n]))
            for j, s in enumerate(self.simplices[n]):
                for i in range(n + 1):
                    face = s[:i] + s[i + 1:]
                    rows[lower[face]][j] += (-1) ** i
            diffs[n] = IntMatrix(len(self.simplices[n - 1]), len(self.simplices[n]), rows)
        self.chain = FreeComplex("chain", 0, dim,
                                 [len(level) for level in self.simplices], diffs)

    @property
    def dimension(self):
        return len(self.simplices) - 1

    def count(self, n):
        if 0 <= n <= self.dimension:
            return len(self.simplices[n])
        return 0

    def boundary_matrix(self, n):
        return self.chain.diff(n) if 1 <= n <= self.dimension else \
            IntMatrix.zeros(self.count(n - 1), self.count(n))

    def cochain_complex(self):
        """Integral simplicial cochains: transposed boundary matrices."""
        dim = self.dimension
        diffs = {n: self.chain.diff(n + 1).transpose() for n in range(dim)}
        return FreeComplex("cochain", 0, dim,
                           [len(level) for level in self.simplices], diffs)

    def is_simplex(self, blocks):
        s, _ = _sort_with_sign(tuple(blocks))
        if s is None:
            return False
        n = len(s) - 1
        return n <= self.dimension and s in self.index[n]

    def __eq__(self, other):
        return (isinstance(other, NerveComplex) and self.model == other.model
                and self.partition == other.partition)

    def __repr__(self):
        return "NerveComplex(%d blocks, counts=%r)" % (
            len(self.partition), [self.count(n) for n in range(self.dimension + 1)])


class NerveGChain:
    """A G-valued function on the n-simplices of a nerve, stored as a flat
    coordinate vector (simplex-major, G-generator-minor)."""

    __slots__ = ("nerve", "degree", "coefficients", "coords")

    def __init__(self, nerve, degree, coefficients, coords):
        m = nerve.count(degree) * coefficients.n_gens
        coords = tuple(int(c) for c in coords)
        if len(coords) != m:
            raise ValueError("expected %d coordinates, got %d" % (m, len(coords)))
        g = coefficients.n_gens
        reduced = []
        for s in range(nerve.count(degree)):
            reduced.extend(coefficients.reduce(coords[s * g:(s + 1) * g]))
        self.nerve = nerve
        self.degree = degree
        self.coefficients = coefficients
        self.coords = tuple(reduced)

    def value(self, simplex):
        s, sign = _sort_with_sign(tuple(simplex))
        g = self.coefficients.n_gens
        if s is None or not self.nerve.is_simplex(s):
            return (0,) * g
        i = self.nerve.index[self.degree][s]
        vec = self.coords[i * g:(i + 1) * g]
        return self.coefficients.reduce(tuple(sign * v for v in vec))

    def boundary(self):
        """Simplicial boundary acting on G-valued coefficient vectors."""
        mat = tensor_identity(self.nerve.boundary_matrix(self.degree),
                              self.coefficients.n_gens)
        return NerveGChain(self.nerve, self.degree - 1, self.coefficients,
                           mat.apply(self.coords))

    def __eq__(self, other):
        return (isinstance(other, NerveGChain) and self.nerve == other.nerve
                and self.degree == other.degree and self.coords == other.coords
                and self.coefficients == other.coefficients)

    def __repr__(self):
        return "NerveGChain(degree=%d, coords=%r)" % (self.degree, self.coords)


class KolmogoroffChain:
    """A degree-n set function on a partitioned model with values in G.

    Values are stored sparsely on strictly increasing block tuples lying on
    the nerve; every other evaluation is derived (sign under permutation,
    zero on repeats and off the nerve, summation over block decompositions
    for non-block sets), so the three chain axioms hold by construction.
    """

    __slots__ = ("nerve", "degree", "coefficients", "values")

    def __init__(self, nerve, degree, coefficients, values):
        self.nerve = nerve
        self.degree = degree
        self.coefficients = coefficients
        cleaned = {}
        for tup, vec in values.items():
            tup = tuple(int(b) for b in tup)
            if (len(tup) != degree + 1 or len(set(tup)) != len(tup)
                    or tuple(sorted(tup)) != tup):
                raise ValueError("keys must be strictly increasing %d-tuples"
                                 % (degree + 1,))
            vec = coefficients.reduce(tuple(int(v) for v in vec))
            if not any(vec):
                continue
            if not (0 <= degree <= nerve.dimension and tup in nerve.index[degree]):
                raise ValueError("tuple %r is not on the nerve; a chain must "
                                 "vanish there" % (tup,))
            cleaned[tup] = vec
        self.values = cleaned

    @classmethod
    def zero(cls, nerve, degree, coefficients):
        return cls(nerve, degree, coefficients, {})

    @classmethod
    def from_items(cls, nerve, degree, coefficients, items):
        """Build a chain from (tuple, value) pairs in arbitrary argument
        order; alternation is normalized at insertion and repeated-argument
        tuples contribute nothing."""
        acc = {}
        for tup, vec in items:
            s, sign = _sort_with_sign(tuple(tup))
            if s is None:
                continue
            vec = tuple(sign * int(v) for v in vec)
            if s in acc:
                acc[s] = tuple(a + b for a, b in zip(acc[s], vec))
            else:
                acc[s] = vec
        return cls(nerve, degree, coefficients, acc)

    def evaluate_blocks(self, blocks):
        """Value on an arbitrary tuple of block indices."""
        g = self.coefficients.n_gens
        s, sign = _sort_with_sign(tuple(blocks))
        if s is None or s not in self.values:
            return (0,) * g
        return self.coefficients.reduce(tuple(sign * v for v in self.values[s]))

    def _block_union(self, atom_set):
        atoms = set(int(a) for a in atom_set)
        blocks = sorted({self.nerve.partition.block_of[a] for a in atoms
                         if a in self.nerve.partition.block_of})
        covered = set()
        for b in blocks:
            covered.update(self.nerve.partition.blocks[b])
        if covered != atoms:
            raise BlockMismatch("%s is not a union of partition blocks" % sorted(atoms))
        return blocks

    def evaluate_sets(self, sets):
        """Value on a tuple of atom sets, each a union of partition blocks,
        by additivity: sum over all tuples of constituent blocks."""
        decomposed = [self._block_union(s) for s in sets]
        g = self.coefficients.n_gens
        total = (0,) * g
        for combo in itertools.product(*decomposed):
            v = self.evaluate_blocks(combo)
            total = tuple(a + b for a, b in zip(total, v))
        return self.coefficients.reduce(total)

    def evaluate_via_mosaic(self, sets, pieces=None):
        """Value on a tuple of atom sets computed through an intermediate
        mosaic: decompose each set into the mosaic pieces it contains,
        evaluate each piece tuple, and sum. Must agree with evaluate_sets
        for every admissible mosaic."""
        sets = [frozenset(int(a) for a in s) for s in sets]
        if pieces is None:
            pieces = mosaic(sets)
        pieces = [frozenset(p) for p in pieces]
        for s in sets:
            covered = set()
            for p in pieces:
                if p <= s:
                    covered.update(p)
            if covered != s:
                raise BlockMismatch("mosaic does not decompose %s" % sorted(s))
        g = self.coefficients.n_gens
        total = (0,) * g
        for combo in itertools.product(*[[p for p in pieces if p <= s] for s in sets]):
            v = self.evaluate_sets(combo)
            total = tuple(a + b for a, b in zip(total, v))
        return self.coefficients.reduce(total)

    def boundary_value(self, args, support=None):
        """One boundary evaluation Delta f(E_0,...,E_{n-1}) = f(U, E_0,...)
        on a tuple of block indices, with U decomposed into blocks.

        ``support`` optionally replaces the whole space by a smaller
        bounded neighborhood: a block set that must contain the argument
        blocks and every block whose closure meets all their closures (the
        combinatorial counterpart of an open superset of the closures).
        Admissibility is checked, so the value never depends on the choice.
        """
        args = tuple(int(b) for b in args)
        if len(args) != self.degree:
            raise ValueError("expected %d argument blocks" % self.degree)
        if support is None:
            blocks = range(len(self.nerve.partition))
        else:
            support = set(int(b) for b in support)
            required = set(args)
            for b in range(len(self.nerve.partition)):
                joined, _ = _sort_with_sign((b,) + args)
                if joined is not None and self.nerve.is_simplex(joined):
                    required.add(b)
            missing = required - support
            if missing:
                raise ValueError("support omits blocks %s whose closures meet the "
                                 "arguments; not an admissible bounded neighborhood"
                                 % sorted(missing))
            blocks = sorted(support)
        g = self.coefficients.n_gens
        total = (0,) * g
        for b in blocks:
            v = self.evaluate_blocks((b,) + args)
            total = tuple(x + y for x, y in zip(total, v))
        return self.coefficients.reduce(total)

    def boundary(self, support=None):
        """The boundary chain: evaluate against the whole space in front,
        Delta f(E_0,...,E_{n-1}) = f(U, E_0,...,E_{n-1}), decomposing U
        into partition blocks.

        ``support`` optionally replaces U by a smaller admissible bounded
        set (a set of block indices); it must still contain every block
        whose closure meets a tuple the result is evaluated on, which is
        checked, so the boundary never depends on the choice.
        """
        n = self.degree
        if n == 0:
            return _EmptyChain(self.nerve, self.coefficients)
        blocks = range(len(self.nerve.partition))
        if support is not None:
            support = set(int(b) for b in support)
            for s in self.nerve.simplices[n]:
                for tau in itertools.combinations(s, n):
                    extra = (set(s) - set(tau)).pop()
                    if extra not in support:
                        raise ValueError(
                            "support omits block %d whose closure meets %r; not an "
                            "admissible bounded neighborhood" % (extra, tau))
            blocks = sorted(support)
        out = {}
        g = self.coefficients.n_gens
        for tau in self.nerve.simplices[n - 1]:
            total = (0,) * g
            for b in blocks:
                v = self.evaluate_blocks((b,) + tau)
                total = tuple(x + y for x, y in zip(total, v))
            total = self.coefficients.reduce(total)
            if any(total):
                out[tau] = total
        return KolmogoroffChain(self.nerve, n - 1, self.coefficients, out)

    def to_nerve_chain(self):
        """Restrict to nerve simplices: the simplicial chain with the same
        values on strictly increasing block tuples."""
        g = self.coefficients.n_gens
        coords = []
        for s in self.nerve.simplices[self.degree] if self.degree <= self.nerve.dimension else ():
            coords.extend(self.values.get(s, (0,) * g))
        return NerveGChain(self.nerve, self.degree, self.coefficients, coords)

    @classmethod
    def from_nerve_chain(cls, chain):
        """Extend a simplicial chain to a set function: values on block
        tuples by alternation, on everything else by mosaic summation."""
        g = chain.coefficients.n_gens
        values = {}
        for i, s in enumerate(chain.nerve.simplices[chain.degree]):
            vec = chain.coords[i * g:(i + 1) * g]
            if any(vec):
                values[s] = vec
        return cls(chain.nerve, chain.degree, chain.coefficients, values)

    def __add__(self, other):
        self._compatible(other)
        keys = set(self.values) | set(other.values)
        g = self.coefficients.n_gens
        zero = (0,) * g
        return KolmogoroffChain(self.nerve, self.degree, self.coefficients,
                                {k: tuple(a + b for a, b in
                                          zip(self.values.get(k, zero),
                                              other.values.get(k, zero)))
                                 for k in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return KolmogoroffChain(self.nerve, self.degree, self.coefficients,
                                {k: tuple(c * x for x in v) for k, v in self.values.items()})

    def _compatible(self, other):
        if (self.nerve != other.nerve or self.degree != other.degree
                or self.coefficients != other.coefficients):
            raise BlockMismatch("chains live on different nerves, degrees or coefficients")

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        return (isinstance(other, KolmogoroffChain) and self.degree == other.degree
                and self.nerve == other.nerve and self.values == other.values
                and self.coefficients == other.coefficients)

    def __repr__(self):
        return "KolmogoroffChain(degree=%d, values=%r)" % (self.degree, self.values)


class _EmptyChain:
    """Degree -1 boundary of a degree-0 chain; identically zero because the
    complex stops at degree 0 (homology in degree 0 is unreduced)."""

    degree = -1

    def __init__(self, nerve, coefficients):
        self.nerve = nerve
        self.coefficients = coefficients
        self.values = {}

    def is_zero(self):
        return True

    def boundary(self, support=None):
        raise ValueError("no boundary below degree 0")


def random_chain(rng, nerve, degree, coefficients, bound=9):
    """Uniform random values on every nerve simplex of the degree."""
    values = {}
    for s in nerve.simplices[degree]:
        values[s] = tuple(rng.randrange(-bound, bound + 1)
                          for _ in range(coefficients.n_gens))
    return KolmogoroffChain(nerve, degree, coefficients, values)


# -- homology, two pipelines -------------------------------------------------


def _generator_boundary_matrix(nerve, n, coefficients):
    """Columns: Delta evaluated on each one-generator chain of degree n,
    expressed in the degree n-1 coordinate layout."""
    g = coefficients.n_gens
    m_out = nerve.count(n - 1) * g
    cols = []
    tau_index = nerve.index[n - 1] if 0 <= n - 1 <= nerve.dimension else {}
    for s in nerve.simplices[n] if n <= nerve.dimension else ():
        for j in range(g):
            unit = tuple(int(i == j) for i in range(g))
            chain = KolmogoroffChain(nerve, n, coefficients, {s: unit})
            b = chain.boundary()
            col = [0] * m_out
            for tau, vec in b.values.items():
                base = tau_index[tau] * g
                for i, v in enumerate(vec):
                    col[base + i] = v
            cols.append(col)
    return IntMatrix.from_columns(cols, m_out)


def kolmogoroff_homology(model, partition, coefficients):
    """Graded homology of the set-function chain complex.

    Computed from boundary matrices assembled by evaluating Delta on
    generator chains, then recomputed from the nerve's integral cochain
    complex with coefficients; the two must agree degree by degree.
    """
    nerve = NerveComplex(model, partition)
    dim = nerve.dimension
    g = coefficients.n_gens
    deltas = {n: _generator_boundary_matrix(nerve, n, coefficients)
              for n in range(dim + 2)}
    direct = {}
    for n in range(dim + 1):
        orders_n = coefficients.orders * nerve.count(n)
        orders_out = coefficients.orders * nerve.count(n - 1)
        num = kernel_lattice(deltas[n], orders_out)
        den = hstack(deltas[n + 1], _relations_for_orders(orders_n))
        direct[n] = Subquotient(num, den).group
    dual = CoefficientComplex(nerve.cochain_complex(), coefficients)
    for n in range(dim + 1):
        other = dual.homology(n)
        if other != direct[n]:
            raise PipelineMismatch(
                "degree %d: boundary-evaluation pipeline gives %s, nerve pipeline "
                "gives %s" % (n, direct[n], other))
    return direct


# -- refinements -------------------------------------------------------------


class RefinementMap:
    """The simplicial map between nerves induced by a partition refinement:
    each fine block goes to the coarse block containing it. Chain matrices
    push simplices forward with orientation signs (degenerate images drop
    to zero); cochain matrices are their transposes. The matrices commute
    with the boundary operators, which is checked at construction."""

    __slots__ = ("fine", "coarse", "vertex_map", "_chain")

    def __init__(self, fine, coarse):
        if fine.model != coarse.model:
            raise NotARefinement("nerves live on different models")
        if not fine.partition.refines(coarse.partition):
            raise NotARefinement("partition %r does not refine %r"
                                 % (fine.partition.blocks, coarse.partition.blocks))
        self.fine = fine
        self.coarse = coarse
        self.vertex_map = tuple(coarse.partition.block_of[block[0]]
                                for block in fine.partition.blocks)
        self._chain = {}
        for n in range(fine.dimension + 1):
            self._chain[n] = self._build_chain_matrix(n)
        for n in range(1, fine.dimension + 1):
            left = self.coarse.boundary_matrix(n) * self._chain[n]
            right = self.chain_matrix(n - 1) * self.fine.boundary_matrix(n)
            if left != right:
                raise AssertionError("refinement chain map fails to commute with "
                                     "the boundary at degree %d" % n)

    def _build_chain_matrix(self, n):
        rows = self.coarse.count(n)
        cols = []
        for s in self.fine.simplices[n]:
            col = [0] * rows
            image, sign = _sort_with_sign(tuple(self.vertex_map[b] for b in s))
            if image is not None:
                col[self.coarse.index[n][image]] = sign
            cols.append(col)
        return IntMatrix.from_columns(cols, rows)

    def chain_matrix(self, n):
        if n in self._chain:
            return self._chain[n]
        return IntMatrix.zeros(self.coarse.count(n), self.fine.count(n))

    def cochain_matrix(self, n):
        """Pullback on integral cochains, from the coarse nerve to the fine."""
        return self.chain_matrix(n).transpose()

    def push_chain(self, chain):
        """Push a G-valued simplicial chain from the fine nerve forward."""
        if chain.nerve != self.fine:
            raise NotARefinement("chain does not live on the fine nerve")
        mat = tensor_identity(self.chain_matrix(chain.degree), chain.coefficients.n_gens)
        return NerveGChain(self.coarse, chain.degree, chain.coefficients,
                           mat.apply(chain.coords))

    def compose(self, other):
        """self after other: other maps finest to middle, self middle to coarse."""
        if other.coarse != self.fine:
            raise NotARefinement("refinement maps do not chain")
        return refinement_map(other.fine, self.coarse)


def refinement_map(fine, coarse):
    """RefinementMap from the nerve of a finer partition to a coarser one.
    Accepts NerveComplex instances sharing a model."""
    return RefinementMap(fine, coarse)


# -- free colimit certificates -----------------------------------------------


@dataclass(frozen=True)
class FreeBasisCertificate:
    """Outcome of the disjoint-support freeness check on a telescope of
    free groups: the colimit is free, and when it is finitely generated an
    explicit basis (columns, in the coordinates of the named stage) is
    produced."""

    group: PresentedGroup | None
    basis: IntMatrix | None
    stage: str
    notes: str

    def to_json(self):
        return {"group": None if self.group is None else self.group.to_json(),
                "basis": None if self.basis is None else self.basis.to_json(),
                "stage": self.stage, "notes": self.notes}


def _check_disjoint_support(mat, map_index):
    used = {}
    for j in range(mat.cols):
        for i in range(mat.rows):
            e = mat.data[i][j]
            if e == 0:
                continue
            if abs(e) != 1:
                raise ConditionViolated(
                    map_index, "entry %d at row %d, column %d is not a signed basis "
                               "element" % (e, i, j))
            if i in used:
                raise ConditionViolated(
                    map_index, "basis row %d is shared by columns %d and %d"
                               % (i, used[i], j))
            used[i] = j


def free_colimit_basis(telescope):
    """Certify that a telescope of free groups has a free colimit.

    Every map must send each basis element to a signed sum of distinct
    basis elements, with supports disjoint across the source basis; maps
    violating this are rejected with a witness. For a finite telescope the
    colimit is the last stage with its own basis; with a periodic tail the
    kernel chain is stabilized first and the basis lives on the stable
    quotient (still free, because the stable kernel of an integer matrix
    acting on a free group is a saturated sublattice).
    """
    for k, g in enumerate(telescope.stages):
        if g.torsion:
            raise ValueError("stage %d is not free: %s" % (k, g))
    for k, f in enumerate(telescope.maps):
        _check_disjoint_support(f.matrix, k)
    if telescope.tail is not None:
        _check_disjoint_support(telescope.tail.matrix, "tail")
    outcome = colim(telescope)
    if outcome.kind == "exact":
        group = outcome.group
        if group.torsion:
            raise AssertionError("colimit of free stages with saturated kernels "
                                 "acquired torsion: %s" % group)
        basis = IntMatrix.identity(group.free_rank)
        stage = "last prefix stage" if telescope.tail is None else \
            "stable quotient of the tail stage"
        return FreeBasisCertificate(group, basis, stage,
                                    "free of rank %d" % group.free_rank)
    return FreeBasisCertificate(
        None, None, "none",
        "colimit is a strictly increasing union of free groups along "
        "disjoint-support maps, hence free but not finitely generated (%s)"
        % outcome.description)


# -- set-function universal coefficients -------------------------------------


def kolmogoroff_uct_check(model, partitions, coefficients):
    """Universal-coefficient certificates for set-function homology.

    ``partitions`` is a refinement chain, coarsest first. Per degree, the
    integral cochain groups of the nerves form a telescope along refinement
    pullbacks whose colimit is certified free with an explicit basis (the
    finest stage); the cochain complex on that basis is then run through
    the split short exact sequence
    0 -> Ext(H^{n+1}, G) -> H_n -> Hom(H^n, G) -> 0, and each middle term
    is required to match kolmogoroff_homology of the finest partition.
    """
    nerves = [NerveComplex(model, p) for p in partitions]
    for k in range(len(nerves) - 1):
        if not nerves[k + 1].partition.refines(nerves[k].partition):
            raise NotARefinement("partition %d does not refine partition %d"
                                 % (k + 1, k))
    maps = [refinement_map(nerves[k + 1], nerves[k]) for k in range(len(nerves) - 1)]
    finest = nerves[-1]
    max_dim = max(nv.dimension for nv in nerves)
    for n in range(max_dim + 1):
        stages = tuple(PresentedGroup(nv.count(n), ()) for nv in nerves)
        tmaps = tuple(GroupMap(stages[k], stages[k + 1], maps[k].cochain_matrix(n))
                      for k in range(len(nerves) - 1))
        cert = free_colimit_basis(Telescope(stages, tmaps))
        if cert.group is None or cert.group.free_rank != finest.count(n):
            raise CertificateFailure(
                "degree %d cochain colimit is %s, expected free of rank %d"
                % (n, cert.notes, finest.count(n)))
    cofree = finest.cochain_complex()
    certs = uct_certificates(cofree, coefficients)
    khom = kolmogoroff_homology(model, finest.partition, coefficients)
    for n, cert in certs.items():
        expected = khom.get(n, PresentedGroup(0, ()))
        if cert.middle != expected:
            raise CertificateFailure(
                "degree %d: universal-coefficient middle term %s does not match "
                "set-function homology %s" % (n, cert.middle, expected))
    return certs


# -- presets ------------------------------------------------------------------


def arc_circle(n):
    """n arcs covering a circle, consecutive closures meeting: a cycle."""
    if n < 3:
        raise ValueError("a circle model needs at least 3 arcs")
    return FiniteModel(n, [(i, (i + 1) % n) for i in range(n)])


def octahedron():
    """Boundary of the octahedron: 6 vertices in opposite pairs, 8 faces."""
    faces = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return FiniteModel(6, faces)


def projective_plane():
    """Minimal 6-vertex triangulation of the projective plane (10 faces)."""
    faces = [(0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 4),
             (1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5)]
    return FiniteModel(6, faces)


def model_preset(name):
    """Resolve preset names: arc-circle:n, octahedron, rp2-6vertex."""
    if name.startswith("arc-circle:"):
        return arc_circle(int(name.split(":", 1)[1]))
    if name == "octahedron":
        return octahedron()
    if name == "rp2-6vertex":
        return projective_plane()
    raise ValueError("unknown model preset %r" % name)
