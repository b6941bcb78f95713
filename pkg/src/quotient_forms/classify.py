"""Decision procedures and censuses built on the product calculus."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DifferentBase, NotSmooth
from .calculus import (
    EndoElement,
    ProductTensor,
    act,
    characteristic_form,
    factorize,
    theta,
    twist_source,
    twist_target,
    verify_mult_equiv,
)
from .fields import FiniteField
from .forms import (
    BilinearForm,
    QuotientPresentation,
    base_change,
    bil_space,
    congruence_diagonalize,
    enumerate_forms,
    pull_back,
    scalarize,
)
from .graded import Infinite, RingMap, homogeneous_slice


# -- counting helpers -----------------------------------------------------------


def _slice_two_torsion(s) -> int:
    """Number of elements a in a finite slice with a + a = 0."""
    base = s.ring.base
    if base.is_finite():
        per = sum(1 for c in base.elements() if not (c + c))
    else:
        per = 1  # fraction domains are 2-torsion-free
    return per ** len(s.monomials) if s.monomials else 1


def _count_forms(space, predicate: str) -> int | Infinite:
    """Cardinalities of the full/alternating/antisymmetric/symmetric-class
    subgroups from per-entry slice sizes."""
    pres = space.presentation
    m = pres.m
    total = 1
    for i in range(m):
        for j in range(m):
            s = space.slices[(i, j)]
            if isinstance(s, Infinite):
                return Infinite(s.witness)
            if predicate == "all":
                total *= s.cardinality
            elif predicate == "upper":  # one representative per quadratic form
                if i <= j:
                    total *= s.cardinality
            elif predicate == "alternating":
                if i < j:
                    total *= s.cardinality
            elif predicate == "antisymmetric":
                if i < j:
                    total *= s.cardinality
                elif i == j:
                    total *= _slice_two_torsion(s)
            else:
                raise ValueError(predicate)
    if pres.sequence_has_tail and pres.coefficients.has_positive_part:
        return Infinite("the regular sequence continues beyond the window")
    return total


@dataclass
class CensusReport:
    instance: str
    bil_count: int | Infinite
    alt_count: int | Infinite
    asym_count: int | Infinite
    product_count: int | Infinite
    class_count: int | Infinite
    commutative_count: int | Infinite
    commutative_class_count: int | Infinite
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    formulas: dict = field(default_factory=dict)
    cross_checked: bool = False

    def to_json(self) -> dict:
        def enc(v):
            if v is None:
                return {"exact": "unknown"}
            if isinstance(v, Infinite):
                return {"exact": "infinite", "witness": v.witness}
            out = {"exact": str(v)}
            if isinstance(v, int) and abs(v) < 2**63:
                out["int"] = v
            return out

        return {
            "instance": self.instance,
            "bilinear_forms": enc(self.bil_count),
            "alternating_forms": enc(self.alt_count),
            "antisymmetric_forms": enc(self.asym_count),
            "products": enc(self.product_count),
            "equivalence_classes": enc(self.class_count),
            "commutative_products": enc(self.commutative_count),
            "commutative_classes": enc(self.commutative_class_count),
            "flags": self.flags,
            "notes": self.notes,
            "formulas": self.formulas,
            "cross_checked": self.cross_checked,
        }


@dataclass
class InfiniteFamily:
    """A parameterized family of pairwise-distinct forms witnessing infinitude."""

    description: str
    members: list


def witness_family(F: QuotientPresentation) -> InfiniteFamily | None:
    """A family of pairwise-distinct degree-0 forms when the space is infinite.

    Looks for materialized diagonal or off-diagonal entries with nonzero
    slices, or reports the structural reason (infinite base / tail)."""
    space = bil_space(F)
    if not isinstance(space.cardinality, Infinite):
        return None
    members = []
    if F.sequence_has_tail and F.coefficients.has_positive_part:
        desc = (
            "the regular sequence continues beyond the window; entries at "
            "tail classes admit ever more forms"
        )
    else:
        desc = space.cardinality.witness
    for (i, j), s in sorted(space.slices.items()):
        if isinstance(s, Infinite):
            continue
        for elem in s:
            if elem and len(members) < 3:
                members.append(F.form({(i, j): elem}))
    if not members:
        # dig for a nonzero monomial directly (infinite base case)
        for (i, j) in sorted(space.slices):
            s = space.slices[(i, j)]
            if isinstance(s, Infinite):
                d = F.entry_degree(i, j)
                from .graded import _slice_monomials

                monos = _slice_monomials(F.coefficients, d)
                if monos:
                    for k in (1, 2, 3):
                        members.append(
                            F.form({(i, j): F.coefficients.monomial(monos[0], k)})
                        )
                    desc = (
                        f"entry ({i}, {j}) admits the pairwise-distinct values "
                        f"k * {F.coefficients.monomial(monos[0])} for k = 1, 2, ..."
                    )
                    break
    return InfiniteFamily(desc, members)


def enumerate_products(F: QuotientPresentation, base: ProductTensor):
    """The full orbit of the base product, or an infinite witness family."""
    space = bil_space(F)
    if isinstance(space.cardinality, Infinite):
        return witness_family(F)
    return [act(beta, base) for beta in enumerate_forms(F)]


def commutative_analysis(F: QuotientPresentation, base: ProductTensor):
    """Existence and counting of commutative products relative to the base."""
    b = base.base.form
    ring = F.coefficients
    base2 = ring.base
    notes = []
    if base2.two_is_invertible():
        witness = b.half()
        exists = True
        notes.append("witness: half the base characteristic form")
    elif base2.characteristic == 2:
        exists = b.is_alternating()
        witness = None
        if exists:
            # strictly-lower-triangular splitting of the alternating form
            entries = {(i, j): v for (i, j), v in b.entries if i > j}
            witness = F.form(entries)
            notes.append("witness: strictly-lower-triangular split of the base form")
        else:
            notes.append("no commutative product: base form is not alternating")
    else:
        # 2 neither invertible nor zero (2-torsion-free p-local case):
        # existence must be decided instance by instance
        if b.is_zero():
            exists, witness = True, F.zero_form()
        else:
            space = bil_space(F)
            if isinstance(space.cardinality, Infinite):
                exists, witness = None, None
                notes.append("existence undecided: infinite form space")
            else:
                witness = next(
                    (
                        beta
                        for beta in enumerate_forms(F)
                        if (b - beta - beta.transpose()).is_zero()
                    ),
                    None,
                )
                exists = witness is not None
    space = bil_space(F)
    count: int | Infinite | None
    class_count: int | Infinite | None
    if exists:
        count = _count_forms(space, "antisymmetric")
        class_count = _count_class_quotient(space, "antisymmetric")
    elif exists is False:
        count, class_count = 0, 0
    else:
        count = class_count = None
    if witness is not None:
        check = b - witness - witness.transpose()
        assert check.is_zero(), "commutativity witness failed its defining equation"
    return CommutativeReport(exists, witness, count, class_count, notes)


def _count_class_quotient(space, predicate: str) -> int | Infinite:
    """|subgroup| / |alternating|, carried entirely by diagonal two-torsion."""
    num = _count_forms(space, predicate)
    den = _count_forms(space, "alternating")
    if not (isinstance(num, Infinite) or isinstance(den, Infinite)):
        assert num % den == 0
        return num // den
    pres = space.presentation
    base = pres.coefficients.base
    if base.two_is_invertible() or base.characteristic == 0:
        return 1  # 2-torsion-free coefficients, tail entries included
    total = 1
    for i in range(pres.m):
        s = space.slices[(i, i)]
        if isinstance(s, Infinite):
            return Infinite(s.witness)
        total *= _slice_two_torsion(s)
    if pres.sequence_has_tail and pres.coefficients.has_positive_part:
        return Infinite("tail diagonal entries contribute unknown two-torsion")
    return total


@dataclass
class CommutativeReport:
    exists: bool | None
    witness: BilinearForm | None
    count: int | Infinite | None
    class_count: int | Infinite | None
    notes: list


def census(
    F: QuotientPresentation,
    base: ProductTensor,
    enumeration_bound: int = 10**4,
    instance: str = "",
) -> CensusReport:
    space = bil_space(F)
    bil = _count_forms(space, "all")
    alt = _count_forms(space, "alternating")
    asym = _count_forms(space, "antisymmetric")
    classes = _count_forms(space, "upper")
    comm = commutative_analysis(F, base)
    ring = F.coefficients
    flags = {
        "two_invertible": ring.base.two_is_invertible(),
        "two_torsion_free": ring.base.two_is_invertible()
        or ring.base.characteristic == 0,
        "char_two": ring.base.characteristic == 2,
        "has_commutative_product": comm.exists,
        "window_only": F.sequence_has_tail,
    }
    report = CensusReport(
        instance=instance or F.name,
        bil_count=bil,
        alt_count=alt,
        asym_count=asym,
        product_count=bil,
        class_count=classes,
        commutative_count=comm.count if comm.exists is not None else None,
        commutative_class_count=comm.class_count if comm.exists is not None else None,
        flags=flags,
        notes=list(comm.notes),
    )
    if isinstance(bil, Infinite):
        fam = witness_family(F)
        if fam is not None:
            note = f"witness family: {fam.description}"
            if fam.members:
                note += "; window members: " + ", ".join(str(m) for m in fam.members)
            report.notes.append(note)
    if F.sequence_has_tail and not F.coefficients.has_positive_part:
        report.notes.append(
            "tail entries vanish: the coefficient ring is concentrated in degree 0"
        )
        report.flags["window_only"] = False
    if not isinstance(bil, Infinite):
        if not isinstance(alt, Infinite):
            assert isinstance(classes, int) and classes * alt == bil
        if enumeration_bound and bil <= enumeration_bound:
            _cross_check_census(F, base, report)
            report.cross_checked = True
    return report


def _cross_check_census(F, base, report):
    from .forms import chi

    forms = list(enumerate_forms(F))
    assert len(forms) == report.bil_count
    tensors = [act(beta, base) for beta in forms]
    assert len(set(tensors)) == len(tensors), "the action failed to be free"
    alt = [b for b in forms if b.is_alternating()]
    assert len(alt) == report.alt_count
    asym = [b for b in forms if b.is_antisymmetric()]
    assert len(asym) == report.asym_count
    # classes: two products are equivalent iff their forms share a quadratic form
    assert len({chi(b) for b in forms}) == report.class_count
    if len(forms) <= 100:
        # independent pairwise partition by alternating differences
        classes = []
        for b in forms:
            for cls in classes:
                if (b - cls[0]).is_alternating():
                    cls.append(b)
                    break
            else:
                classes.append([b])
        assert len(classes) == report.class_count
    commutative = [T for T in tensors if characteristic_form(T).is_zero()]
    if report.commutative_count is not None:
        assert len(commutative) == report.commutative_count


# -- equivalence -------------------------------------------------------------------


@dataclass
class EquivalenceReport:
    equivalent: bool
    difference: BilinearForm
    witness: EndoElement | None
    verified: bool


def equivalence(T1: ProductTensor, T2: ProductTensor) -> EquivalenceReport:
    """Decide equivalence of two products over the same base.

    The connecting form is the difference of factorizations; the products
    are equivalent exactly when it is alternating, in which case the
    canonical witness is produced and validated on the model."""
    if T1.owner != T2.owner or T1.base != T2.base:
        raise DifferentBase("tensors must share presentation and base product")
    delta = factorize(T2) - factorize(T1)
    if not delta.is_alternating():
        return EquivalenceReport(False, delta, None, False)
    f = theta(delta)
    ok = verify_mult_equiv(f, T1, T2)
    return EquivalenceReport(True, delta, f, ok)


def equivalence_witness_search(T1: ProductTensor, T2: ProductTensor):
    """Exhaustive search for any invertible operator intertwining the two
    products. Independent of the alternating-form criterion; only usable
    when every coefficient slice involved is finite."""
    ring = T1.ring
    m = T1.owner.m
    degs = T1.owner.module_degrees
    words = []
    for size in range(0, m + 1):
        words.extend(itertools.combinations(range(m), size))
    pools = []
    for w in words:
        d = sum(degs[i] for i in w)
        s = homogeneous_slice(ring, d)
        if isinstance(s, Infinite):
            raise ValueError(f"cannot search: slice of degree {d} is infinite")
        pools.append(list(s))
    for combo in itertools.product(*pools):
        terms = {(w,): c for w, c in zip(words, combo) if c}
        if ((),) not in terms or not ring.is_unit(terms[((),)]):
            continue
        f = EndoElement(ring, 1, terms)
        if verify_mult_equiv(f, T1, T2):
            return f
    return None


# -- diagonalizability ---------------------------------------------------------------


@dataclass
class DiagReport:
    verdict: str  # "diagonalizable" | "not_diagonalizable" | "unknown"
    transform: tuple | None = None
    method: str = ""
    detail: str = ""
    search_exhausted: bool = False


def _degree_obstruction_fires(b: BilinearForm) -> str | None:
    """The two-generator characteristic-2 degree argument.

    For b = [[0, s], [s, t]] (or its mirror) any congruence P^t b P = D with
    det(P) a unit forces s = unit * (something) * t; if the coefficient ring
    is non-negatively graded with units in degree 0 and |s| < |t| (or t = 0
    with s nonzero), no coefficients can balance the off-diagonal entry."""
    if b.m != 2 or b.ring.base.characteristic != 2:
        return None
    if not b.is_symmetric():
        return None
    ring = b.ring
    if any(g.invertible or g.degree < 0 for g in ring.generators):
        return None
    s = b.entry(0, 1)
    for zero_corner, t_corner in (((0, 0), (1, 1)), ((1, 1), (0, 0))):
        if b.entry(*zero_corner).is_zero() and s:
            t = b.entry(*t_corner)
            if t.is_zero():
                return (
                    "off-diagonal equation reduces to unit * s = 0 with s nonzero"
                )
            if s.is_homogeneous() and t.is_homogeneous() and s.degree() < t.degree():
                return (
                    f"no coefficient can balance the off-diagonal degree: "
                    f"|s| = {s.degree()} < |t| = {t.degree()}"
                )
    return None


def diagonalizability(F: QuotientPresentation, T: ProductTensor) -> DiagReport:
    """Decide whether the product is equivalent to a diagonal one.

    A product is diagonal(izable) exactly when its characteristic form is
    diagonal(izable) by congruence; field-coefficient instances follow the
    characteristic trichotomy, graded ones use the degree fast path or an
    exhaustive homogeneous-entry search."""
    b = characteristic_form(T)
    if all(i == j for (i, j), _ in b.entries):
        return DiagReport("diagonalizable", None, "already-diagonal")
    if scalarize(b) is not None:
        char = b.ring.base.characteristic
        if char == 2 and b.is_alternating() and not b.is_zero():
            return DiagReport(
                "not_diagonalizable",
                None,
                "field-trichotomy",
                "characteristic 2 with a nonzero alternating form",
            )
        res = congruence_diagonalize(b, mode="field")
        if res.succeeded:
            return DiagReport("diagonalizable", res.transform, "field-congruence")
        return DiagReport(
            "not_diagonalizable", None, "field-congruence", "no orthogonal basis"
        )
    fast = _degree_obstruction_fires(b)
    search = congruence_diagonalize(b, mode="graded")
    if search.succeeded:
        return DiagReport("diagonalizable", search.transform, "graded-search")
    exhausted = search.status == "exhausted"
    if fast is not None:
        return DiagReport("not_diagonalizable", None, "degree-argument", fast, exhausted)
    detail = (
        "homogeneous-entry search exhausted without a nonexistence proof"
        if exhausted
        else "search space not enumerable within the window"
    )
    return DiagReport("unknown", None, "graded-search", detail, exhausted)


# -- maps between presentations -------------------------------------------------------


@dataclass(frozen=True)
class MapData:
    """A unital map of presentations with its relative form data.

    `pibar[k][i]` expresses the image of source basis class i in target
    basis class k, with entries in the target coefficient ring."""

    source: QuotientPresentation
    target: QuotientPresentation
    pibar: tuple
    coefficient_map: RingMap
    b_source: BilinearForm
    b_target: BilinearForm
    b_relative: BilinearForm


def _residue_rank(pres: QuotientPresentation, matrix) -> int:
    """Column rank of the module map after reduction to the residue field."""
    ring = pres.coefficients
    base = ring.base
    if isinstance(base, FiniteField):
        f = base
        def reduce_entry(v):
            # kill every generator: keep the constant term
            for exps, c in v.terms:
                if all(e == 0 for e in exps):
                    return c
            return f.zero()
    else:
        raise NotSmooth("smoothness check needs field coefficients on the target")
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    M = [[reduce_entry(matrix[k][i]) for i in range(cols)] for k in range(rows)]
    rank = 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, rows) if M[r][col]), None)
        if pivot is None:
            continue
        M[row], M[pivot] = M[pivot], M[row]
        inv = M[row][col].inverse()
        M[row] = [x * inv for x in M[row]]
        for r in range(rows):
            if r != row and M[r][col]:
                c = M[r][col]
                M[r] = [x - c * y for x, y in zip(M[r], M[row])]
        row += 1
        rank += 1
    return rank


@dataclass
class MapReport:
    smooth: bool
    multiplicative: bool
    detail: dict


def map_multiplicativity(
    data: MapData,
    beta: BilinearForm | None = None,
    gamma: BilinearForm | None = None,
) -> MapReport:
    """The multiplicativity criterion for a smooth pair, with optional twists
    beta on the source product and gamma on the target product."""
    src_degs = data.source.module_degrees
    rank = _residue_rank(data.target, data.pibar)
    smooth = rank == data.source.m
    if not smooth:
        raise NotSmooth(
            f"induced module map has residue rank {rank} < {data.source.m}; "
            "the criterion does not apply"
        )
    b_src = data.b_source
    b_tgt = data.b_target
    b_rel = data.b_relative
    if beta is not None:
        b_src = b_src - beta - beta.transpose()
        b_rel = twist_source(b_rel, beta, data.coefficient_map)
    if gamma is not None:
        b_tgt = b_tgt - gamma - gamma.transpose()
        b_rel = twist_target(b_rel, gamma, data.pibar, src_degs)
    lhs = base_change(data.coefficient_map, b_src)
    rhs = pull_back(b_tgt, data.pibar, src_degs)
    multiplicative = lhs == b_rel == rhs
    return MapReport(
        smooth,
        multiplicative,
        {
            "extended_source_form": str(lhs),
            "relative_form": str(b_rel),
            "pulled_back_target_form": str(rhs),
            "note": "smoothness verified after reduction to the residue field",
        },
    )


def multiplicative_twist_family(data: MapData, limit: int = 3):
    """Target-product twists gamma with vanishing pull-back, i.e. exactly the
    twists that keep the map multiplicative; pairwise distinct quadratic forms.

    Returns (members, infinite: bool, description)."""
    tgt = data.target
    src_m = data.source.m
    # entries whose pull-back vanishes: pairs (i, j) where row i or row j of
    # pibar is zero in every column
    hit_rows = set()
    for k in range(tgt.m):
        if any(data.pibar[k][i] for i in range(src_m)):
            hit_rows.add(k)
    members = []
    for i in range(tgt.m):
        for j in range(tgt.m):
            if i in hit_rows and j in hit_rows:
                continue
            s = homogeneous_slice(tgt.coefficients, tgt.entry_degree(i, j))
            if isinstance(s, Infinite):
                continue
            for elem in s:
                if elem and len(members) < limit:
                    members.append(tgt.form({(i, j): elem}))
    infinite = tgt.sequence_has_tail and tgt.coefficients.has_positive_part
    description = (
        "twists supported away from the image rows pull back to zero; "
        "the family grows without bound with the window"
        if infinite
        else "twists supported away from the image rows pull back to zero"
    )
    return members, infinite, description
