"""Regular quotient presentations and the forms living on their conormal module.

A presentation fixes an ordered regular sequence (x_1, ..., x_m) of even
degrees; the module V it presents is free on classes of degree |x_i| + 1.
Degree-0 bilinear forms on V are sparse m x m matrices whose (i, j) entry
is homogeneous of degree |x_i| + |x_j| + 2 in the coefficient ring.

Forms are deliberately decoupled from presentations: a `BilinearForm`
carries its own basis degrees and value ring, so relative forms (values in
a target coefficient ring) reuse the same type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    DegreeMismatch,
    InconsistentCoefficients,
    NotSymmetric,
    OddSequenceDegree,
)
from .fields import FiniteField
from .graded import (
    GradedRing,
    Infinite,
    RingElement,
    RingMap,
    homogeneous_slice,
)


@dataclass(frozen=True)
class QuotientPresentation:
    """A regular quotient: ambient ring, regular sequence, coefficient ring.

    Regularity of the sequence is trusted, not verified; the catalog
    instances are known-regular.  `ambient` may be None for presentations
    whose ambient ring is only ever used nominally.
    """

    ambient: GradedRing | None
    sequence: tuple[tuple[str, int], ...]
    coefficients: GradedRing
    sequence_has_tail: bool = False
    name: str = ""

    def __post_init__(self):
        if len(self.sequence) < 1:
            raise ValueError("the regular sequence must have at least one generator")
        names = [n for n, _ in self.sequence]
        if len(set(names)) != len(names):
            raise ValueError("duplicate names in the regular sequence")
        coeff_names = {g.name for g in self.coefficients.generators}
        for n, d in self.sequence:
            if d % 2 != 0:
                raise OddSequenceDegree(f"sequence generator {n} has odd degree {d}")
            if n in coeff_names:
                raise InconsistentCoefficients(
                    f"sequence generator {n} survives into the coefficient ring"
                )

    @property
    def m(self) -> int:
        return len(self.sequence)

    @property
    def module_degrees(self) -> tuple[int, ...]:
        """Degrees of the basis classes: |x_i| + 1, always odd."""
        return tuple(d + 1 for _, d in self.sequence)

    def entry_degree(self, i: int, j: int) -> int:
        return self.module_degrees[i] + self.module_degrees[j]

    def zero_form(self) -> "BilinearForm":
        return BilinearForm(self.coefficients, self.module_degrees, {})

    def form(self, entries: dict) -> "BilinearForm":
        return BilinearForm(self.coefficients, self.module_degrees, entries)


def make_quotient(ambient, sequence, coefficients, **kw) -> QuotientPresentation:
    return QuotientPresentation(ambient, tuple(tuple(s) for s in sequence), coefficients, **kw)


class BilinearForm:
    """A degree-0 bilinear form as a sparse matrix of homogeneous entries."""

    __slots__ = ("ring", "basis_degrees", "entries", "_hash")

    def __init__(self, ring: GradedRing, basis_degrees, entries: dict, validate=True):
        self.ring = ring
        self.basis_degrees = tuple(basis_degrees)
        cleaned = {}
        for (i, j), v in entries.items():
            if not isinstance(v, RingElement):
                raise TypeError("form entries must be ring elements")
            if v.is_zero():
                continue
            if not 0 <= i < self.m or not 0 <= j < self.m:
                raise IndexError(f"entry ({i}, {j}) outside a {self.m}x{self.m} form")
            if validate:
                want = self.basis_degrees[i] + self.basis_degrees[j]
                if v.ring != ring:
                    raise ValueError("entry in the wrong coefficient ring")
                if not v.is_homogeneous() or v.degree() != want:
                    raise DegreeMismatch(
                        f"entry ({i}, {j}) must be homogeneous of degree {want}, got {v}"
                    )
            cleaned[(i, j)] = v
        self.entries = tuple(sorted(cleaned.items()))
        self._hash = None

    @property
    def m(self) -> int:
        return len(self.basis_degrees)

    def entry(self, i: int, j: int) -> RingElement:
        for (a, b), v in self.entries:
            if (a, b) == (i, j):
                return v
        return self.ring.zero()

    def as_dict(self) -> dict:
        return dict(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.basis_degrees == other.basis_degrees
            and self.entries == other.entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.basis_degrees, self.entries))
        return self._hash

    def _like(self, entries: dict) -> "BilinearForm":
        return BilinearForm(self.ring, self.basis_degrees, entries, validate=False)

    def __add__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        if other.basis_degrees != self.basis_degrees or other.ring != self.ring:
            raise ValueError("forms on different modules")
        acc = dict(self.entries)
        for k, v in other.entries:
            s = acc.get(k)
            acc[k] = v if s is None else s + v
        return self._like(acc)

    def __neg__(self):
        return self._like({k: -v for k, v in self.entries})

    def __sub__(self, other):
        return self + (-other)

    def transpose(self) -> "BilinearForm":
        return self._like({(j, i): v for (i, j), v in self.entries})

    def scale_coefficients(self, c) -> "BilinearForm":
        return self._like({k: v.scale(c) for k, v in self.entries})

    def half(self) -> "BilinearForm":
        """Multiply by 1/2; requires 2 invertible in the base."""
        base = self.ring.base
        if not base.two_is_invertible():
            raise ValueError("2 is not invertible in the coefficient base")
        inv2 = base.invert(base.coerce(2))
        return self.scale_coefficients(inv2)

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_antisymmetric(self) -> bool:
        return self.transpose() == -self

    def is_alternating(self) -> bool:
        # zero diagonal plus antisymmetry is equivalent to beta(v, v) = 0 for all v
        if any(i == j for (i, j), _ in self.entries):
            return False
        return self.is_antisymmetric()

    def __str__(self):
        if not self.entries:
            return "0"
        return "; ".join(f"({i},{j}): {v}" for (i, j), v in self.entries)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"entries": [[i, j, str(v)] for (i, j), v in self.entries]}


@dataclass(frozen=True)
class FormClassification:
    symmetric: bool
    antisymmetric: bool
    alternating: bool


def classify_form(beta: BilinearForm) -> FormClassification:
    flags = FormClassification(
        beta.is_symmetric(), beta.is_antisymmetric(), beta.is_alternating()
    )
    if beta.ring.base.characteristic == 2 and flags.alternating:
        # in characteristic 2 an alternating form is automatically symmetric
        assert flags.symmetric
    return flags


class QuadraticForm:
    """Values on basis classes plus polar (symmetrized off-diagonal) data."""

    __slots__ = ("ring", "basis_degrees", "diag", "polar")

    def __init__(self, ring, basis_degrees, diag, polar):
        self.ring = ring
        self.basis_degrees = tuple(basis_degrees)
        self.diag = tuple(diag)
        self.polar = tuple(sorted((k, v) for k, v in polar.items() if v))
        for i, q in enumerate(self.diag):
            if q and q.degree() != 2 * self.basis_degrees[i]:
                raise DegreeMismatch(f"q(x_{i}) must have degree {2 * self.basis_degrees[i]}")
        for (i, j), v in self.polar:
            if not i < j:
                raise ValueError("polar data is indexed by i < j")
            if v and v.degree() != self.basis_degrees[i] + self.basis_degrees[j]:
                raise DegreeMismatch(f"polar entry ({i}, {j}) has the wrong degree")

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.basis_degrees == other.basis_degrees
            and self.diag == other.diag
            and self.polar == other.polar
        )

    def __hash__(self):
        return hash((self.ring, self.basis_degrees, self.diag, self.polar))

    def polar_entry(self, i, j):
        if i > j:
            i, j = j, i
        for k, v in self.polar:
            if k == (i, j):
                return v
        return self.ring.zero()

    def evaluate(self, coefficients) -> RingElement:
        """q(sum c_i x_i) expanded through squares and cross terms."""
        cs = list(coefficients)
        if len(cs) != len(self.diag):
            raise ValueError("coefficient vector length mismatch")
        total = self.ring.zero()
        for i, c in enumerate(cs):
            total = total + c * c * self.diag[i]
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                total = total + cs[i] * cs[j] * self.polar_entry(i, j)
        return total

    def __str__(self):
        parts = [f"q({i}) = {v}" for i, v in enumerate(self.diag) if v]
        parts += [f"polar({i},{j}) = {v}" for (i, j), v in self.polar]
        return "; ".join(parts) if parts else "0"


def chi(beta: BilinearForm) -> QuadraticForm:
    """The quadratic form v -> beta(v, v); kernel of chi = alternating forms."""
    m = beta.m
    diag = [beta.entry(i, i) for i in range(m)]
    polar = {
        (i, j): beta.entry(i, j) + beta.entry(j, i)
        for i in range(m)
        for j in range(i + 1, m)
    }
    return QuadraticForm(beta.ring, beta.basis_degrees, diag, polar)


def quad_lift(q: QuadraticForm) -> BilinearForm:
    """The upper-triangular section of chi: diagonal q(x_i), polar above."""
    entries = {(i, i): v for i, v in enumerate(q.diag)}
    for (i, j), v in q.polar:
        entries[(i, j)] = v
    return BilinearForm(q.ring, q.basis_degrees, entries)


def pull_back(beta: BilinearForm, matrix, source_degrees) -> BilinearForm:
    """beta(pi(x) ⊗ pi(y)) along a module map given by columns over beta.ring.

    `matrix[k][i]` is the coefficient of target basis vector k in the image
    of source basis vector i; entries must be homogeneous of degree
    (source degree i) - (target degree k).
    """
    src = tuple(source_degrees)
    tgt = beta.basis_degrees
    rows, cols = len(tgt), len(src)
    if len(matrix) != rows or any(len(r) != cols for r in matrix):
        raise ValueError("module-map matrix has the wrong shape")
    for k in range(rows):
        for i in range(cols):
            v = matrix[k][i]
            if v and (not v.is_homogeneous() or v.degree() != src[i] - tgt[k]):
                raise DegreeMismatch(
                    f"map entry ({k}, {i}) must be homogeneous of degree {src[i] - tgt[k]}"
                )
    entries = {}
    for i in range(cols):
        for j in range(cols):
            acc = beta.ring.zero()
            for k in range(rows):
                if not matrix[k][i]:
                    continue
                for l in range(rows):
                    if not matrix[l][j]:
                        continue
                    acc = acc + matrix[k][i] * beta.entry(k, l) * matrix[l][j]
            if acc:
                entries[(i, j)] = acc
    return BilinearForm(beta.ring, src, entries)


def base_change(rmap: RingMap, beta: BilinearForm) -> BilinearForm:
    """Push a form through a coefficient ring map, entry by entry."""
    return BilinearForm(
        rmap.target,
        beta.basis_degrees,
        {k: rmap(v) for k, v in beta.entries},
    )


# -- the space of degree-0 forms ----------------------------------------------


@dataclass(frozen=True)
class SpaceDescription:
    presentation: QuotientPresentation
    slices: dict
    cardinality: int | Infinite

    def entry_slice(self, i, j):
        return self.slices[(i, j)]


def bil_space(F: QuotientPresentation) -> SpaceDescription:
    """Per-entry degree slices of the form space, and its total cardinality."""
    slices = {}
    total: int | Infinite = 1
    for i in range(F.m):
        for j in range(F.m):
            s = homogeneous_slice(F.coefficients, F.entry_degree(i, j))
            slices[(i, j)] = s
            if isinstance(s, Infinite):
                if not isinstance(total, Infinite):
                    total = Infinite(f"entry ({i}, {j}) slice is {s.witness}")
            elif not isinstance(total, Infinite):
                total *= s.cardinality
    if F.sequence_has_tail and not isinstance(total, Infinite):
        if F.coefficients.has_positive_part:
            total = Infinite("the regular sequence continues beyond the window")
    return SpaceDescription(F, slices, total)


def enumerate_forms(F: QuotientPresentation):
    """Yield every degree-0 form; requires all window slices finite and no
    contributing tail."""
    space = bil_space(F)
    if isinstance(space.cardinality, Infinite):
        raise ValueError(f"form space is not finite: {space.cardinality}")
    keys = sorted(space.slices)
    pools = [list(space.slices[k]) for k in keys]
    for combo in itertools.product(*pools):
        entries = {k: v for k, v in zip(keys, combo) if v}
        yield F.form(entries)


def random_form(F: QuotientPresentation, rng) -> BilinearForm:
    """A uniformly random degree-0 form on a finite form space."""
    space = bil_space(F)
    if isinstance(space.cardinality, Infinite):
        raise ValueError("form space is not finite")
    entries = {}
    for k, s in space.slices.items():
        elems = list(s)
        entries[k] = rng.choice(elems)
    return F.form(entries)


# -- congruence diagonalization -------------------------------------------------


@dataclass(frozen=True)
class DiagonalizationResult:
    # "diagonalized" | "not_diagonalizable" | "exhausted" (every candidate
    # basis change tried, none worked) | "not_enumerable" (some entry slice
    # is infinite, so nothing was searched)
    status: str
    transform: tuple | None = None
    diagonal: tuple | None = None

    @property
    def succeeded(self):
        return self.status == "diagonalized"


def _gram(field, B, u, v):
    acc = field.zero()
    n = len(B)
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if v[j]:
                acc = acc + u[i] * B[i][j] * v[j]
    return acc


def congruence_diagonalize_matrix(field: FiniteField, B) -> DiagonalizationResult:
    """Symmetric Gaussian congruence over a finite field.

    Returns P (columns = new basis) with P^t B P diagonal.  In
    characteristic 2 a nonzero alternating form is not diagonalizable and
    is reported as such; a non-alternating one is handled by consuming a
    non-isotropic pivot for each hyperbolic plane left over.
    """
    n = len(B)
    B = [[field.element(x) for x in row] for row in B]
    for i in range(n):
        for j in range(n):
            if B[i][j] != B[j][i]:
                raise NotSymmetric(f"matrix entry ({i}, {j}) breaks symmetry")
    one = field.one()
    zero = field.zero()
    basis = [[one if i == j else zero for j in range(n)] for i in range(n)]
    done: list = []
    active = list(range(n))
    vecs = {i: basis[i] for i in active}
    char2 = field.p == 2

    def g(a, b):
        return _gram(field, B, a, b)

    while active:
        pivot = next((i for i in active if g(vecs[i], vecs[i])), None)
        if pivot is not None:
            v = vecs[pivot]
            a = g(v, v)
            for i in active:
                if i == pivot:
                    continue
                c = g(vecs[i], v) / a
                vecs[i] = [x - c * y for x, y in zip(vecs[i], v)]
            done.append(v)
            active.remove(pivot)
            continue
        # no non-isotropic vector among the active ones
        off = next(
            (
                (i, j)
                for i in active
                for j in active
                if i < j and g(vecs[i], vecs[j])
            ),
            None,
        )
        if off is None:
            done.extend(vecs[i] for i in active)
            active = []
            break
        i, j = off
        if not char2:
            # mixing in the partner creates a non-isotropic diagonal entry
            vecs[i] = [x + y for x, y in zip(vecs[i], vecs[j])]
            continue
        sac = next((k for k, u in enumerate(done) if g(u, u)), None)
        if sac is None:
            return DiagonalizationResult("not_diagonalizable")
        u = done.pop(sac)
        a = g(u, u)
        x, y = vecs[i], vecs[j]
        c = g(x, y)
        y = [t / c for t in y]
        for k in active:
            if k in (i, j):
                continue
            cy = g(vecs[k], y)
            cx = g(vecs[k], x)
            vecs[k] = [t - cy * xx - cx * yy for t, xx, yy in zip(vecs[k], x, y)]
        u1 = [p + q for p, q in zip(u, x)]
        u2 = [p + a * q for p, q in zip(u, y)]
        u3 = [p + q + a * r for p, q, r in zip(u, x, y)]
        done.extend([u1, u2, u3])
        active.remove(i)
        active.remove(j)

    cols = done
    P = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    diag = tuple(g(c, c) for c in cols)
    # post-check: P^t B P must really be diagonal
    for a in range(n):
        for b in range(n):
            if a != b and g(cols[a], cols[b]):
                raise AssertionError("internal error: congruence left an off-diagonal entry")
    return DiagonalizationResult("diagonalized", P, diag)


def scalarize(beta: BilinearForm):
    """Express a form with equal basis degrees as a scalar matrix times the
    unique entry monomial; returns (field, matrix, monomial) or None."""
    if len(set(beta.basis_degrees)) != 1:
        return None
    base = beta.ring.base
    if not isinstance(base, FiniteField):
        return None
    d = 2 * beta.basis_degrees[0]
    s = homogeneous_slice(beta.ring, d)
    if isinstance(s, Infinite) or len(s.monomials) != 1:
        return None
    mono = s.monomials[0]
    m = beta.m
    matrix = [[base.zero() for _ in range(m)] for _ in range(m)]
    for (i, j), v in beta.entries:
        [(exps, c)] = v.terms
        if exps != mono:
            return None
        matrix[i][j] = c
    return base, matrix, beta.ring.monomial(mono)


def _matrices_with_homogeneous_entries(beta: BilinearForm):
    """All candidate change-of-basis matrices with degree-compatible entries,
    or None when some entry slice is not enumerable."""
    degs = beta.basis_degrees
    m = beta.m
    pools = []
    for i in range(m):
        for j in range(m):
            s = homogeneous_slice(beta.ring, degs[j] - degs[i])
            if isinstance(s, Infinite):
                return None
            pools.append(list(s))
    return (
        [list(combo[i * m : (i + 1) * m]) for i in range(m)]
        for combo in itertools.product(*pools)
    )


def _det(ring, M):
    m = len(M)
    if m == 1:
        return M[0][0]
    acc = ring.zero()
    for perm in itertools.permutations(range(m)):
        sign = 1
        p = list(perm)
        for i in range(m):
            for j in range(i + 1, m):
                if p[i] > p[j]:
                    sign = -sign
        term = ring.one() if sign > 0 else -ring.one()
        for i in range(m):
            term = term * M[i][perm[i]]
        acc = acc + term
    return acc


def _congruence(beta: BilinearForm, P) -> BilinearForm:
    m = beta.m
    entries = {}
    for i in range(m):
        for j in range(m):
            acc = beta.ring.zero()
            for k in range(m):
                for l in range(m):
                    acc = acc + P[k][i] * beta.entry(k, l) * P[l][j]
            if acc:
                entries[(i, j)] = acc
    return BilinearForm(beta.ring, beta.basis_degrees, entries, validate=False)


def congruence_diagonalize(beta: BilinearForm, mode: str = "field") -> DiagonalizationResult:
    """Diagonalize a symmetric form by congruence.

    field mode: scalarizes (all basis degrees equal, one entry monomial)
    and runs the congruence algorithm over the base field.  graded mode:
    exhaustive search over invertible matrices with degree-homogeneous
    entries, reporting "exhausted" when no witness exists in the window.
    """
    if not beta.is_symmetric():
        raise NotSymmetric("congruence diagonalization needs a symmetric form")
    if all(i == j for (i, j), _ in beta.entries):
        ident = tuple(
            tuple(beta.ring.one() if i == j else beta.ring.zero() for j in range(beta.m))
            for i in range(beta.m)
        )
        return DiagonalizationResult(
            "diagonalized", ident, tuple(beta.entry(i, i) for i in range(beta.m))
        )
    if mode == "field":
        sc = scalarize(beta)
        if sc is None:
            raise ValueError("form does not scalarize; use graded mode")
        field, matrix, mono = sc
        res = congruence_diagonalize_matrix(field, matrix)
        if not res.succeeded:
            return res
        P = tuple(
            tuple(beta.ring.from_scalar(x) for x in row) for row in res.transform
        )
        diag = tuple(beta.ring.from_scalar(x) * mono for x in res.diagonal)
        return DiagonalizationResult("diagonalized", P, diag)
    if mode == "graded":
        candidates = _matrices_with_homogeneous_entries(beta)
        if candidates is None:
            return DiagonalizationResult("not_enumerable")
        for P in candidates:
            d = _det(beta.ring, P)
            if not beta.ring.is_unit(d):
                continue
            G = _congruence(beta, P)
            if all(i == j for (i, j), _ in G.entries):
                return DiagonalizationResult(
                    "diagonalized",
                    tuple(tuple(row) for row in P),
                    tuple(G.entry(i, i) for i in range(beta.m)),
                )
        return DiagonalizationResult("exhausted")
    raise ValueError(f"unknown mode {mode!r}")
