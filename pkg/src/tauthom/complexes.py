"""Bounded free (co)chain complexes over Z, their homology, coefficient
complexes Hom(C, G), and machine-checked universal-coefficient
certificates.

A certificate for degree n packages the short exact sequence

    0 -> Ext(H^{n+1}(C), G) -> H_n(Hom(C, G)) -> Hom(H^n(C), G) -> 0

as three explicit GroupMaps (injection, surjection, splitting) whose
exactness and splitting identities are verified by exact integer
computation before the certificate is returned. The Ext term is built a
second way, from the cocycle/coboundary resolution, and the two routes are
compared; a disagreement raises instead of returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (GroupMap, HomGroup, PresentedGroup, Subquotient,
                     _relations_for_orders, ext_group, hom_group, kernel,
                     cokernel, kernel_lattice, same_subgroup, tensor_identity)
from .matrices import (IntMatrix, column_basis, hstack, kernel_basis,
                       smith_normal_form, solve_columns)


class DegreeOutOfRange(ValueError):
    """Requested degree lies outside the complex's declared range."""


class NotFree(ValueError):
    """A differential does not match the declared ranks."""


class CertificateFailure(AssertionError):
    """An exactness or splitting identity failed while building a
    certificate; valid inputs can never trigger this."""


class FreeComplex:
    """A bounded complex of finitely generated free abelian groups.

    ``direction`` is "chain" (differential lowers degree; ``diffs[n]`` maps
    degree n to n-1) or "cochain" (raises degree; ``diffs[n]`` maps degree
    n to n+1). Composition of consecutive differentials is checked to be
    zero at construction time.
    """

    __slots__ = ("direction", "lo", "hi", "ranks", "diffs")

    def __init__(self, direction, lo, hi, ranks, diffs):
        if direction not in ("chain", "cochain"):
            raise ValueError("direction must be 'chain' or 'cochain'")
        if hi < lo:
            raise ValueError("empty degree range")
        ranks = tuple(int(r) for r in ranks)
        if len(ranks) != hi - lo + 1 or any(r < 0 for r in ranks):
            raise ValueError("ranks must list one nonnegative rank per degree")
        self.direction = direction
        self.lo = lo
        self.hi = hi
        self.ranks = ranks
        clean = {}
        for n, mat in diffs.items():
            n = int(n)
            if not isinstance(mat, IntMatrix):
                mat = IntMatrix.from_json(mat)
            src = self.rank(n)
            tgt = self.rank(n - 1 if direction == "chain" else n + 1)
            if mat.rows != tgt or mat.cols != src:
                raise NotFree("differential at degree %d is %dx%d, expected %dx%d"
                              % (n, mat.rows, mat.cols, tgt, src))
            if not mat.is_zero():
                clean[n] = mat
        self.diffs = clean
        step = -1 if direction == "chain" else 1
        for n in list(clean):
            nxt = n + step
            if nxt in clean and not (clean[nxt] * clean[n]).is_zero():
                raise ValueError("differentials at degrees %d and %d do not compose to zero"
                                 % (n, nxt))

    def rank(self, n):
        if self.lo <= n <= self.hi:
            return self.ranks[n - self.lo]
        return 0

    def diff(self, n):
        """The differential out of degree n (zero matrix when absent)."""
        if n in self.diffs:
            return self.diffs[n]
        tgt = self.rank(n - 1 if self.direction == "chain" else n + 1)
        return IntMatrix.zeros(tgt, self.rank(n))

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def homology(self, n):
        """Integral (co)homology at degree n in invariant-factor form."""
        return self.homology_subquotient(n).group

    def homology_subquotient(self, n):
        if not self.lo <= n <= self.hi:
            raise DegreeOutOfRange("degree %d outside [%d, %d]" % (n, self.lo, self.hi))
        out = self.diff(n)
        inn = self.diff(n + 1 if self.direction == "chain" else n - 1)
        return Subquotient(kernel_basis(out), inn)

    def homology_all(self):
        return {n: self.homology(n) for n in self.degrees()}

    def dualize(self, coefficients):
        """Hom(C, G) of a cochain complex: a chain complex of G-powers with
        transposed differentials, (df)(x) = f(dx)."""
        if self.direction != "cochain":
            raise ValueError("dualize expects a cochain complex")
        return CoefficientComplex(self, coefficients)

    def to_json(self):
        return {"direction": self.direction, "lo": self.lo, "hi": self.hi,
                "ranks": list(self.ranks),
                "diffs": {str(n): m.to_json() for n, m in sorted(self.diffs.items())}}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["direction"], int(obj["lo"]), int(obj["hi"]), obj["ranks"],
                   {int(n): IntMatrix.from_json(m) for n, m in obj.get("diffs", {}).items()})


class CoefficientComplex:
    """The chain complex Hom(C, G) of a free cochain complex C.

    Degree n carries one copy of G per rank of C^n; elements are stored
    block-major (all of G's coordinates for basis element 0, then 1, ...).
    Differentials are the transposed differentials of C acting blockwise.
    """

    __slots__ = ("base", "coefficients", "lo", "hi")

    def __init__(self, base, coefficients):
        if base.direction != "cochain":
            raise ValueError("coefficient complexes are built from cochain complexes")
        self.base = base
        self.coefficients = coefficients
        self.lo, self.hi = base.lo, base.hi

    def rank(self, n):
        return self.base.rank(n)

    def orders(self, n):
        return self.coefficients.orders * self.base.rank(n)

    def group(self, n):
        """Degree-n group in invariant-factor form."""
        return PresentedGroup.from_orders(self.orders(n))

    def diff_matrix(self, n):
        """Raw matrix of the degree-lowering differential at degree n."""
        m = self.coefficients.n_gens
        return tensor_identity(self.base.diff(n - 1).transpose(), m)

    def cycles_subquotient(self, n):
        return Subquotient(kernel_lattice(self.diff_matrix(n), self.orders(n - 1)),
                           _relations_for_orders(self.orders(n)))

    def homology_subquotient(self, n):
        num = kernel_lattice(self.diff_matrix(n), self.orders(n - 1))
        den = hstack(self.diff_matrix(n + 1), _relations_for_orders(self.orders(n)))
        return Subquotient(num, den)

    def homology(self, n):
        if not self.lo <= n <= self.hi:
            raise DegreeOutOfRange("degree %d outside [%d, %d]" % (n, self.lo, self.hi))
        return self.homology_subquotient(n).group

    def homology_all(self):
        return {n: self.homology(n) for n in range(self.lo, self.hi + 1)}


@dataclass(frozen=True)
class UctCertificate:
    """Verified split short exact sequence for one degree.

    injection:  Ext(H^{n+1}(C), G) -> H_n(Hom(C,G)), induced by lifting an
                extension-class cochain through the coboundary.
    surjection: H_n(Hom(C,G)) -> Hom(H^n(C), G), evaluation on cocycles.
    splitting:  right inverse of the surjection obtained from an integer
                left inverse of the cocycle basis (the cocycle lattice is a
                direct summand because C^n/Z^n embeds in a free group).
    """

    degree: int
    ext_term: PresentedGroup
    hom_term: PresentedGroup
    middle: PresentedGroup
    injection: GroupMap
    surjection: GroupMap
    splitting: GroupMap

    def to_json(self):
        return {"degree": self.degree,
                "ext_term": self.ext_term.describe(),
                "hom_term": self.hom_term.describe(),
                "middle": self.middle.describe(),
                "injection": self.injection.matrix.to_json(),
                "surjection": self.surjection.matrix.to_json(),
                "splitting": self.splitting.matrix.to_json(),
                "verified": True}


@dataclass(frozen=True)
class CycleBoundarySequence:
    """Verified short exact sequence
    0 -> Hom(B^{n+1}, G) -> Z_n(Hom(C,G)) -> Hom(H^n(C), G) -> 0
    relating coboundary evaluations, coefficient cycles, and cohomology
    evaluations in one degree."""

    degree: int
    hom_boundaries: PresentedGroup
    cycles: PresentedGroup
    hom_cohomology: PresentedGroup
    include: GroupMap
    evaluate: GroupMap

    def to_json(self):
        return {"degree": self.degree,
                "hom_boundaries": self.hom_boundaries.describe(),
                "cycles": self.cycles.describe(),
                "hom_cohomology": self.hom_cohomology.describe(),
                "include": self.include.matrix.to_json(),
                "evaluate": self.evaluate.matrix.to_json(),
                "verified": True}


class _Resolver:
    """Per-complex caches shared by certificates across degrees and
    coefficient groups: integral cocycle/coboundary lattices and the
    integer left inverses of the cocycle bases."""

    def __init__(self, base):
        self.base = base
        self._z = {}
        self._b = {}
        self._h = {}
        self._p = {}

    def cocycles(self, n):
        if n not in self._z:
            self._z[n] = kernel_basis(self.base.diff(n))
        return self._z[n]

    def coboundaries(self, n):
        if n not in self._b:
            self._b[n] = column_basis(self.base.diff(n - 1))
        return self._b[n]

    def cohomology_sq(self, n):
        if n not in self._h:
            self._h[n] = Subquotient(self.cocycles(n), self.base.diff(n - 1))
        return self._h[n]

    def cocycle_left_inverse(self, n):
        """P with P * Z == I for the cocycle basis Z of degree n; exists
        because C^n / Z^n is torsion-free (it embeds in C^{n+1})."""
        if n not in self._p:
            z = self.cocycles(n)
            s = smith_normal_form(z)
            if any(d != 1 for d in s.diagonal):
                raise CertificateFailure("cocycle lattice of degree %d is not a direct summand" % n)
            top = IntMatrix.from_rows([s.u.row(i) for i in range(z.cols)]) if z.cols \
                else IntMatrix.zeros(0, z.rows)
            self._p[n] = s.v * top
        return self._p[n]


def _blocks_to_map(pairvec, blocks, coefficients, source_group):
    """Reinterpret a block-major G-tuple vector (one block per generator of
    ``source_group``) as a GroupMap source_group -> coefficients."""
    m = coefficients.n_gens
    cols = [list(pairvec[k * m:(k + 1) * m]) for k in range(blocks)]
    return GroupMap(source_group, coefficients, IntMatrix.from_columns(cols, m))


def _map_to_blocks(f):
    vec = []
    for j in range(f.source.n_gens):
        vec.extend(f.matrix.column(j))
    return vec


class UctSuite:
    """Builds universal-coefficient certificates for one (complex, G) pair,
    sharing the integral lattice work across degrees."""

    def __init__(self, base, coefficients, resolver=None):
        self.base = base
        self.coefficients = coefficients
        self.dual = CoefficientComplex(base, coefficients)
        self.res = resolver if resolver is not None else _Resolver(base)

    def certificate(self, n):
        G = self.coefficients
        m = G.n_gens
        res = self.res

        mid_sq = self.dual.homology_subquotient(n)
        middle = mid_sq.group

        # Ext term from the free resolution 0 -> B^{n+1} -> Z^{n+1} -> H^{n+1} -> 0
        zb = res.cocycles(n + 1)
        bb = res.coboundaries(n + 1)
        inside = solve_columns(zb, bb)
        if inside is None:
            raise CertificateFailure("coboundaries escape the cocycle lattice at degree %d" % (n + 1))
        restr = tensor_identity(inside.transpose(), m)
        denom = hstack(restr, _relations_for_orders(G.orders * bb.cols)) \
            if bb.cols * m else IntMatrix.zeros(bb.cols * m, 0)
        ext_sq = Subquotient(IntMatrix.identity(bb.cols * m), denom)
        ext_term = ext_sq.group

        ext_reference = ext_group(res.cohomology_sq(n + 1).group, G).group
        if ext_term != ext_reference:
            raise CertificateFailure(
                "Ext term disagrees between resolution and functor routes at degree %d" % n)

        # injection: psi |-> psi(d^n written in the coboundary basis)
        in_b_basis = solve_columns(bb, self.base.diff(n))
        if in_b_basis is None:
            raise CertificateFailure("d^n does not factor through its own image basis")
        push = tensor_identity(in_b_basis.transpose(), m)
        injection = GroupMap(ext_term, middle, mid_sq.coords_matrix(push * ext_sq.lifts))

        # surjection: evaluate a coefficient cycle on lifted cohomology generators
        h_sq = res.cohomology_sq(n)
        homg = hom_group(h_sq.group, G)
        hom_term = homg.group
        evaluate = tensor_identity(h_sq.lifts.transpose(), m)
        surj_cols = []
        for k in range(middle.n_gens):
            pairvec = evaluate.apply(mid_sq.lifts.column(k))
            f = _blocks_to_map(pairvec, h_sq.group.n_gens, G, h_sq.group)
            surj_cols.append(list(homg.from_map(f)))
        surjection = GroupMap(middle, hom_term,
                              IntMatrix.from_columns(surj_cols, hom_term.n_gens))

        # splitting: extend a homomorphism on H^n by zero off the cocycle lattice
        p = res.cocycle_left_inverse(n)
        project = res.cocycles(n) * p                    # C^n -> Z^n along a complement
        h_of_basis = h_sq.coords_matrix(project)         # H^n coords of each projected basis vector
        split_cols = []
        for k in range(hom_term.n_gens):
            e = [0] * hom_term.n_gens
            e[k] = 1
            images = homg.to_map(e).matrix               # m x h
            phi = images * h_of_basis                    # m x rank(C^n)
            pairvec = []
            for c in range(self.base.rank(n)):
                pairvec.extend(phi.column(c))
            split_cols.append(list(mid_sq.coords(pairvec)))
        splitting = GroupMap(hom_term, middle,
                             IntMatrix.from_columns(split_cols, middle.n_gens))

        cert = UctCertificate(n, ext_term, hom_term, middle, injection, surjection, splitting)
        self._verify(cert)
        return cert

    def _verify(self, cert):
        n = cert.degree
        if not kernel(cert.injection)[0].is_trivial:
            raise CertificateFailure("degree %d: Ext term fails to inject" % n)
        if not cokernel(cert.surjection)[0].is_trivial:
            raise CertificateFailure("degree %d: evaluation fails to surject" % n)
        if not (cert.surjection @ cert.injection).is_zero:
            raise CertificateFailure("degree %d: composite through the middle is nonzero" % n)
        ker_incl = kernel(cert.surjection)[1]
        if not same_subgroup(ker_incl, cert.injection):
            raise CertificateFailure("degree %d: kernel of evaluation differs from the Ext image" % n)
        if not (cert.surjection @ cert.splitting).is_identity:
            raise CertificateFailure("degree %d: splitting is not a right inverse" % n)
        if cert.middle != cert.ext_term.direct_sum(cert.hom_term):
            raise CertificateFailure("degree %d: middle group is not the direct sum of the ends" % n)


def uct_certificate(base, coefficients, n):
    """Build and verify the universal-coefficient certificate at degree n.

    Raises CertificateFailure if any exactness check fails (which would
    signal an implementation bug, not a property of the input).
    """
    if not base.lo <= n <= base.hi:
        raise DegreeOutOfRange("degree %d outside [%d, %d]" % (n, base.lo, base.hi))
    return UctSuite(base, coefficients).certificate(n)


def uct_certificates(base, coefficients, resolver=None):
    """Certificates for every degree of the complex, sharing integral work."""
    suite = UctSuite(base, coefficients, resolver)
    return {n: suite.certificate(n) for n in base.degrees()}


def cycle_boundary_sequence(base, coefficients, n):
    """Verified sequence 0 -> Hom(B^{n+1},G) -> Z_n(Hom(C,G)) -> Hom(H^n,G) -> 0."""
    if not base.lo <= n <= base.hi:
        raise DegreeOutOfRange("degree %d outside [%d, %d]" % (n, base.lo, base.hi))
    G = coefficients
    m = G.n_gens
    res = _Resolver(base)
    dual = CoefficientComplex(base, G)

    bb = res.coboundaries(n + 1)
    homb_sq = Subquotient(IntMatrix.identity(bb.cols * m),
                          _relations_for_orders(G.orders * bb.cols))
    hom_boundaries = homb_sq.group

    z_sq = dual.cycles_subquotient(n)
    cycles = z_sq.group

    in_b_basis = solve_columns(bb, base.diff(n))
    if in_b_basis is None:
        raise CertificateFailure("d^n does not factor through its own image basis")
    push = tensor_identity(in_b_basis.transpose(), m)
    include = GroupMap(hom_boundaries, cycles, z_sq.coords_matrix(push * homb_sq.lifts))

    h_sq = res.cohomology_sq(n)
    homg = hom_group(h_sq.group, G)
    evaluate_mat = tensor_identity(h_sq.lifts.transpose(), m)
    cols = []
    for k in range(cycles.n_gens):
        pairvec = evaluate_mat.apply(z_sq.lifts.column(k))
        cols.append(list(homg.from_map(_blocks_to_map(pairvec, h_sq.group.n_gens, G, h_sq.group))))
    evaluate = GroupMap(cycles, homg.group, IntMatrix.from_columns(cols, homg.group.n_gens))

    if not kernel(include)[0].is_trivial:
        raise CertificateFailure("degree %d: boundary evaluations fail to inject" % n)
    if not cokernel(evaluate)[0].is_trivial:
        raise CertificateFailure("degree %d: cycle evaluation fails to surject" % n)
    if not (evaluate @ include).is_zero:
        raise CertificateFailure("degree %d: composite is nonzero" % n)
    if not same_subgroup(kernel(evaluate)[1], include):
        raise CertificateFailure("degree %d: sequence is not exact in the middle" % n)
    return CycleBoundarySequence(n, hom_boundaries, cycles, homg.group, include, evaluate)
