"""Products encoded as operator tensors, and the machinery that classifies them.

A product on a quotient presentation is stored relative to a named base
product as the finite collection of coefficients w_IJ in

    1 + sum w_IJ Q_I ∧ Q_J,

where I, J are strictly increasing multi-indexes of derivation symbols.
The derivations are square-zero and pairwise anticommuting, so the whole
operator algebra is a completed exterior algebra; composition and
application only ever produce finitely many terms at desk scale.

Sign conventions (everything else is derived from these two rules):
  * application: (d ⊗ d')(a ⊗ b) = (-1)^{|d'||a|} d(a) ⊗ d'(b),
    with every derivation symbol and every module generator odd;
  * contraction: the i-th derivation acts on a wedge monomial as the
    left partial derivative, with sign (-1)^(position of i).
The composition sign for slot tensors is forced by the first rule and is
implemented in `_compose_sign`.  The conventions are pinned down by the
calibration tests (unit law, characteristic-form consistency, symmetry)
rather than asserted a priori.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DegreeMismatch, NotAlternating, NotAProduct
from .forms import BilinearForm, QuotientPresentation, pull_back, base_change
from .graded import GradedRing, RingElement


# -- multi-index helpers --------------------------------------------------------


def merge_indexes(left: tuple, right: tuple):
    """Sort the concatenation of two strictly increasing index tuples.

    Returns (sign, merged) where the sign counts transpositions of odd
    symbols, or None when the tuples collide (square-zero)."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    if len(left) == 1 and len(right) == 1:
        a, b = left[0], right[0]
        if a == b:
            return None
        return (1, (a, b)) if a < b else (-1, (b, a))
    if set(left) & set(right):
        return None
    merged = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] < right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            if (len(left) - i) % 2:
                sign = -sign
    merged.extend(left[i:])
    merged.extend(right[j:])
    return sign, tuple(merged)


def contract(index: tuple, monomial: tuple):
    """Apply the derivation word Q_I to a wedge monomial.

    The word acts rightmost-symbol-first; each single derivation removes
    its generator with sign (-1)^position.  Returns (sign, rest) or None."""
    sign = 1
    current = list(monomial)
    for i in reversed(index):
        try:
            pos = current.index(i)
        except ValueError:
            return None
        if pos % 2:
            sign = -sign
        current.pop(pos)
    return sign, tuple(current)


def _compose_sign(left_key: tuple, right_key: tuple) -> int:
    # crossing sign for slotwise composition of odd-symbol words:
    # sum over slot pairs i < j of |left_j| * |right_i|
    if len(left_key) == 2:
        total = len(left_key[1]) * len(right_key[0])
    else:
        total = 0
        for i in range(len(right_key)):
            for j in range(i + 1, len(left_key)):
                total += len(left_key[j]) * len(right_key[i])
    return -1 if total % 2 else 1


def _apply_sign(op_key: tuple, arg_key: tuple) -> int:
    # moving the later operator slots past the earlier argument slots
    total = 0
    for i in range(len(arg_key)):
        for j in range(i + 1, len(op_key)):
            total += len(op_key[j]) * len(arg_key[i])
    return -1 if total % 2 else 1


class EndoElement:
    """An element of the derivation-operator algebra acting on a smash power.

    Keys are tuples of `slots` multi-indexes; values are coefficients in
    the presentation's coefficient ring.  Composition is associative,
    single derivations square to zero and anticommute.
    """

    __slots__ = ("ring", "slots", "terms")

    def __init__(self, ring: GradedRing, slots: int, terms: dict):
        self.ring = ring
        self.slots = slots
        self.terms = tuple(
            sorted((k, v) for k, v in terms.items() if v)
        )

    @classmethod
    def identity(cls, ring, slots=2):
        return cls(ring, slots, {((),) * slots: ring.one()})

    @classmethod
    def single(cls, ring, key, coefficient):
        return cls(ring, len(key), {tuple(tuple(i) for i in key): coefficient})

    def __eq__(self, other):
        if not isinstance(other, EndoElement):
            return NotImplemented
        return self.ring == other.ring and self.slots == other.slots and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.slots, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, EndoElement) or other.slots != self.slots:
            return NotImplemented
        acc = dict(self.terms)
        for k, v in other.terms:
            s = acc.get(k)
            acc[k] = v if s is None else s + v
        return EndoElement(self.ring, self.slots, acc)

    def __neg__(self):
        return EndoElement(self.ring, self.slots, {k: -v for k, v in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return EndoElement(self.ring, self.slots, {k: v * c for k, v in self.terms})

    def compose(self, other: "EndoElement") -> "EndoElement":
        """self ∘ other (other acts first)."""
        if other.slots != self.slots or other.ring != self.ring:
            raise ValueError("cannot compose mismatched operator elements")
        acc: dict = {}
        for lk, lv in self.terms:
            for rk, rv in other.terms:
                sign = _compose_sign(lk, rk)
                key = []
                dead = False
                for a, b in zip(lk, rk):
                    m = merge_indexes(a, b)
                    if m is None:
                        dead = True
                        break
                    s, merged = m
                    sign *= s
                    key.append(merged)
                if dead:
                    continue
                key = tuple(key)
                c = lv * rv
                if sign < 0:
                    c = -c
                s = acc.get(key)
                s = c if s is None else s + c
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return EndoElement(self.ring, self.slots, acc)

    def apply(self, tensor: "LambdaTensor") -> "LambdaTensor":
        if tensor.slots != self.slots or tensor.ring != self.ring:
            raise ValueError("operator and argument shapes differ")
        acc: dict = {}
        for ok, ov in self.terms:
            for ak, av in tensor.terms:
                sign = _apply_sign(ok, ak)
                key = []
                dead = False
                for word, mono in zip(ok, ak):
                    hit = contract(word, mono)
                    if hit is None:
                        dead = True
                        break
                    s, rest = hit
                    sign *= s
                    key.append(rest)
                if dead:
                    continue
                key = tuple(key)
                c = ov * av
                if sign < 0:
                    c = -c
                s = acc.get(key)
                s = c if s is None else s + c
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return LambdaTensor(self.ring, self.slots, acc)

    def tensor(self, other: "EndoElement") -> "EndoElement":
        """Juxtapose slot groups: (f ∧ g) acting on the concatenated slots."""
        acc = {}
        for lk, lv in self.terms:
            for rk, rv in other.terms:
                acc[lk + rk] = lv * rv
        return EndoElement(self.ring, self.slots + other.slots, acc)

    def __str__(self):
        if not self.terms:
            return "0"
        def word(w):
            return "".join(f"Q{i}" for i in w) if w else "1"
        return " + ".join(
            f"{v}·(" + "∧".join(word(w) for w in k) + ")" for k, v in self.terms
        )

    __repr__ = __str__


class LambdaTensor:
    """An element of a tensor power of the exterior model Λ(a_0, ..., a_{m-1})."""

    __slots__ = ("ring", "slots", "terms")

    def __init__(self, ring: GradedRing, slots: int, terms: dict):
        self.ring = ring
        self.slots = slots
        self.terms = tuple(sorted((k, v) for k, v in terms.items() if v))

    @classmethod
    def monomial(cls, ring, *indexes, coefficient=None):
        key = tuple(tuple(i) for i in indexes)
        return cls(ring, len(key), {key: ring.one() if coefficient is None else coefficient})

    @classmethod
    def unit(cls, ring, slots=1):
        return cls.monomial(ring, *(() for _ in range(slots)))

    def __eq__(self, other):
        if not isinstance(other, LambdaTensor):
            return NotImplemented
        return self.ring == other.ring and self.slots == other.slots and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.slots, self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        acc = dict(self.terms)
        for k, v in other.terms:
            s = acc.get(k)
            acc[k] = v if s is None else s + v
        return LambdaTensor(self.ring, self.slots, acc)

    def __neg__(self):
        return LambdaTensor(self.ring, self.slots, {k: -v for k, v in self.terms})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LambdaTensor(self.ring, self.slots, {k: v * c for k, v in self.terms})

    def outer(self, other: "LambdaTensor") -> "LambdaTensor":
        """Slot concatenation a ⊗ b (no signs: coefficients live in even degrees)."""
        acc = {}
        for lk, lv in self.terms:
            for rk, rv in other.terms:
                acc[lk + rk] = lv * rv
        return LambdaTensor(self.ring, self.slots + other.slots, acc)

    def coefficient(self, *indexes) -> RingElement:
        key = tuple(tuple(i) for i in indexes)
        for k, v in self.terms:
            if k == key:
                return v
        return self.ring.zero()

    def __str__(self):
        if not self.terms:
            return "0"
        def mono(w):
            return "a[" + ",".join(map(str, w)) + "]" if w else "1"
        return " + ".join(
            f"{v}·" + "⊗".join(mono(w) for w in k) for k, v in self.terms
        )

    __repr__ = __str__


LambdaElement = LambdaTensor  # one-slot values are the common case


# -- base products and product tensors ------------------------------------------


@dataclass(frozen=True)
class BaseProduct:
    """A named base product together with its characteristic form."""

    name: str
    form: BilinearForm
    note: str = ""


class ProductTensor:
    """A product relative to a base: the terms of 1 + sum w_IJ Q_I ∧ Q_J.

    The unit term is implicit.  Terms with an empty index on either side
    are forbidden (unit law); with `validate` the degree-0 constraint
    |w_IJ| = sum of odd generator degrees over I and J is enforced.
    """

    __slots__ = ("owner", "base", "terms")

    def __init__(self, owner: QuotientPresentation, base: BaseProduct, terms: dict, validate=True):
        self.owner = owner
        self.base = base
        cleaned = {}
        degs = owner.module_degrees
        for (I, J), w in terms.items():
            I, J = tuple(I), tuple(J)
            if not w:
                continue
            if not I or not J:
                raise ValueError("unit law: tensor terms need nonempty indexes on both sides")
            if list(I) != sorted(set(I)) or list(J) != sorted(set(J)):
                raise ValueError("multi-indexes must be strictly increasing")
            if validate:
                want = sum(degs[i] for i in I) + sum(degs[j] for j in J)
                if not w.is_homogeneous() or w.degree() != want:
                    raise DegreeMismatch(
                        f"tensor coefficient at ({I}, {J}) must be homogeneous of degree {want}"
                    )
            cleaned[(I, J)] = w
        self.terms = tuple(sorted(cleaned.items()))

    @property
    def ring(self) -> GradedRing:
        return self.owner.coefficients

    def is_identity(self) -> bool:
        return not self.terms

    def coefficient(self, I, J) -> RingElement:
        key = (tuple(I), tuple(J))
        for k, v in self.terms:
            if k == key:
                return v
        return self.ring.zero()

    def endo(self) -> EndoElement:
        """The full operator 1 + sum w_IJ Q_I ∧ Q_J."""
        terms = {((), ()): self.ring.one()}
        for (I, J), w in self.terms:
            terms[(I, J)] = w
        return EndoElement(self.ring, 2, terms)

    def _replace(self, endo: EndoElement) -> "ProductTensor":
        terms = {}
        for k, v in endo.terms:
            if k == ((), ()):
                if v != self.ring.one():
                    raise ValueError("operator is not unital")
                continue
            if not k[0] or not k[1]:
                raise ValueError("operator violates the unit law")
            terms[k] = v
        return ProductTensor(self.owner, self.base, terms, validate=False)

    def __eq__(self, other):
        if not isinstance(other, ProductTensor):
            return NotImplemented
        return (
            self.owner == other.owner
            and self.base == other.base
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.owner, self.base.name, self.terms))

    def __str__(self):
        if not self.terms:
            return f"{self.base.name}"
        inner = " + ".join(
            f"{w}·Q{list(I)}∧Q{list(J)}" for (I, J), w in self.terms
        )
        return f"{self.base.name} ∘ (1 + {inner})"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "base": self.base.name,
            "terms": [
                {"I": list(I), "J": list(J), "w": str(w)} for (I, J), w in self.terms
            ],
        }


def identity_tensor(owner: QuotientPresentation, base: BaseProduct) -> ProductTensor:
    return ProductTensor(owner, base, {})


# -- the action of bilinear forms ------------------------------------------------


def _single_factor(ring, i, j, v) -> EndoElement:
    return EndoElement(ring, 2, {((), ()): ring.one(), ((i,), (j,)): v})


def expand_action(
    beta: BilinearForm, owner: QuotientPresentation, base: BaseProduct
) -> ProductTensor:
    """Multiply out prod_(i,j) (1 + v_ij Q_i ∧ Q_j), factors in lexicographic
    order (the factors commute, so the order is a determinism choice)."""
    if beta.basis_degrees != owner.module_degrees or beta.ring != owner.coefficients:
        raise DegreeMismatch("form does not live on this presentation's module")
    op = EndoElement.identity(owner.coefficients, 2)
    for (i, j), v in beta.entries:
        op = op.compose(_single_factor(owner.coefficients, i, j, v))
    return identity_tensor(owner, base)._replace(op)


def act(beta: BilinearForm, T: ProductTensor) -> ProductTensor:
    """The action: the new product is T composed with the expanded factors."""
    shift = expand_action(beta, T.owner, T.base)
    return T._replace(T.endo().compose(shift.endo()))


def factorize(T: ProductTensor) -> BilinearForm:
    """Recover the unique form with expand_action(beta) == T, or raise
    NotAProduct with the minimal-size residual obstruction."""
    beta_entries = {}
    for (I, J), w in T.terms:
        if len(I) == 1 and len(J) == 1:
            beta_entries[(I[0], J[0])] = w
    beta = BilinearForm(
        T.ring, T.owner.module_degrees, beta_entries, validate=False
    )
    residual = T.endo().compose(expand_action(-beta, T.owner, T.base).endo())
    leftovers = [
        (k, v) for k, v in residual.terms if k != ((), ())
    ]
    if leftovers:
        (I, J), v = min(leftovers, key=lambda kv: (len(kv[0][0]) + len(kv[0][1]), kv[0]))
        raise NotAProduct(I, J, v)
    return beta


def characteristic_form(T: ProductTensor) -> BilinearForm:
    """b(T) = b_base - (beta + beta^t) for the unique beta moving base to T."""
    beta = factorize(T)
    return T.base.form - (beta + beta.transpose())


def opposite(T: ProductTensor) -> ProductTensor:
    """Act by the characteristic form; flips the form's sign and involutes."""
    return act(characteristic_form(T), T)


# -- the exterior evaluation model -----------------------------------------------


def _clifford_generator(b_entries, i, tensor_terms):
    """Left Clifford multiplication by a_i on a one-slot tensor:
    wedge plus contraction against row i of the base form."""
    acc: dict = {}
    for (mono,), c in tensor_terms:
        hit = merge_indexes((i,), mono)
        if hit is not None:
            s, merged = hit
            cc = c if s > 0 else -c
            key = (merged,)
            v = acc.get(key)
            v = cc if v is None else v + cc
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        for pos, j in enumerate(mono):
            bij = b_entries.get((i, j))
            if bij is None:
                continue
            rest = mono[:pos] + mono[pos + 1 :]
            cc = c * bij
            if pos % 2:
                cc = -cc
            key = (rest,)
            v = acc.get(key)
            v = cc if v is None else v + cc
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return acc


def clifford_multiply(base_form: BilinearForm, a: LambdaTensor, b: LambdaTensor) -> LambdaTensor:
    """The base multiplication on the exterior model: wedge product corrected
    by contraction against the base characteristic form."""
    ring = a.ring
    b_entries = dict(base_form.entries)
    acc: dict = {}
    for (amono,), ac in a.terms:
        # multiply generator by generator, rightmost first
        current = {(bm,): bc for (bm,), bc in b.terms}
        for i in reversed(amono):
            current = dict(_clifford_generator(b_entries, i, tuple(current.items())))
        for key, c in current.items():
            v = acc.get(key)
            cv = ac * c
            v = cv if v is None else v + cv
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return LambdaTensor(ring, 1, acc)


def lambda_multiply(T: ProductTensor, a: LambdaTensor, b: LambdaTensor) -> LambdaTensor:
    """The multiplication the tensor induces on the exterior model."""
    pair = a.outer(b)
    twisted = T.endo().apply(pair)
    out = LambdaTensor(T.ring, 1, {})
    for (A, B), c in twisted.terms:
        part = clifford_multiply(
            T.base.form,
            LambdaTensor.monomial(T.ring, A, coefficient=c),
            LambdaTensor.monomial(T.ring, B),
        )
        out = out + part
    return out


def default_associativity_bound(T: ProductTensor) -> int:
    # an orbit obstruction at (I, J) shows up on a triple of total size
    # |I| + |J|, which is at most 2m; the tensor's own longest term plus one
    # is the floor the factorization argument needs
    longest = max((len(I) + len(J) for (I, J), _ in T.terms), default=1)
    return min(max(longest + 1, 2 * T.owner.m), 3 * T.owner.m)


def associativity_witness(T: ProductTensor, bound: int | None = None):
    """The first basis triple where the induced multiplication fails to be
    associative, or None."""
    m = T.owner.m
    longest = max((len(I) + len(J) for (I, J), _ in T.terms), default=1)
    if bound is None:
        bound = default_associativity_bound(T)
    elif bound < longest + 1:
        raise ValueError(
            f"bound {bound} is below the tensor's own term size {longest} + 1"
        )
    singles = []
    for size in range(0, m + 1):
        singles.extend(itertools.combinations(range(m), size))
    for A in singles:
        for B in singles:
            for C in singles:
                if len(A) + len(B) + len(C) > bound:
                    continue
                ta = LambdaTensor.monomial(T.ring, A)
                tb = LambdaTensor.monomial(T.ring, B)
                tc = LambdaTensor.monomial(T.ring, C)
                left = lambda_multiply(T, lambda_multiply(T, ta, tb), tc)
                right = lambda_multiply(T, ta, lambda_multiply(T, tb, tc))
                if left != right:
                    return (A, B, C)
    return None


def is_associative(T: ProductTensor, bound: int | None = None) -> bool:
    return associativity_witness(T, bound) is None


def characteristic_form_from_model(T: ProductTensor) -> BilinearForm:
    """Independent extraction of the characteristic form from the model.

    The scalar part of m(a_i ⊗ a_j) recovers the form relative to the base
    structure; symmetrizing and subtracting the base form yields the
    absolute characteristic form.  Must agree with `characteristic_form`.
    """
    m = T.owner.m
    rel = {}
    for i in range(m):
        for j in range(m):
            prod = lambda_multiply(
                T,
                LambdaTensor.monomial(T.ring, (i,)),
                LambdaTensor.monomial(T.ring, (j,)),
            )
            c = prod.coefficient(())
            if c:
                rel[(i, j)] = c
    ext = BilinearForm(T.ring, T.owner.module_degrees, rel, validate=False)
    return ext + ext.transpose() - T.base.form


# -- equivalences -----------------------------------------------------------------


def theta(beta: BilinearForm) -> EndoElement:
    """The canonical equivalence attached to an alternating form:
    prod_{i<j} (1 + v_ij Q_i Q_j), an invertible one-slot operator."""
    if not beta.is_alternating():
        raise NotAlternating("theta is defined for alternating forms only")
    ring = beta.ring
    f = EndoElement.identity(ring, 1)
    for (i, j), v in beta.entries:
        if i < j:
            factor = EndoElement(ring, 1, {((),): ring.one(), ((i, j),): v})
            f = f.compose(factor)
    return f


def theta_inverse(beta: BilinearForm) -> EndoElement:
    return theta(-beta)


def verify_mult_equiv(f: EndoElement, T: ProductTensor, T2: ProductTensor) -> bool:
    """Check f ∘ m_T = m_T2 ∘ (f ∧ f) on all basis pairs of the model."""
    if f.slots != 1:
        raise ValueError("an equivalence candidate acts on one slot")
    m = T.owner.m
    ff = f.tensor(f)
    subsets = []
    for size in range(0, m + 1):
        subsets.extend(itertools.combinations(range(m), size))
    for A in subsets:
        for B in subsets:
            ta = LambdaTensor.monomial(T.ring, A)
            tb = LambdaTensor.monomial(T.ring, B)
            lhs = f.apply(lambda_multiply(T, ta, tb))
            moved = ff.apply(ta.outer(tb))
            rhs = LambdaTensor(T.ring, 1, {})
            for (X, Y), c in moved.terms:
                rhs = rhs + lambda_multiply(
                    T2,
                    LambdaTensor.monomial(T.ring, X, coefficient=c),
                    LambdaTensor.monomial(T.ring, Y),
                )
            if lhs != rhs:
                return False
    return True


# -- relative transformation rules -------------------------------------------------


def twist_source(b_in: BilinearForm, beta: BilinearForm, rmap=None) -> BilinearForm:
    """Twisting the source product by beta shifts the relative form by -beta
    (pushed into the target coefficients when a ring map is given)."""
    shifted = base_change(rmap, beta) if rmap is not None else beta
    return b_in - shifted


def twist_target(b_in: BilinearForm, gamma: BilinearForm, pibar=None, source_degrees=None) -> BilinearForm:
    """Twisting the target product by gamma shifts the relative form by
    -gamma^t pulled back along the induced module map."""
    g = gamma.transpose()
    if pibar is not None:
        g = pull_back(g, pibar, source_degrees if source_degrees is not None else b_in.basis_degrees)
    return b_in - g


def relative_transform(rule: str, b_in: BilinearForm, **aux) -> BilinearForm:
    """Dispatcher over the relative characteristic-form rules."""
    if rule == "twist-left":
        return twist_source(b_in, aux["beta"], aux.get("rmap"))
    if rule == "twist-right":
        return twist_target(
            b_in, aux["gamma"], aux.get("pibar"), aux.get("source_degrees")
        )
    if rule == "op-pair":
        # replacing the source by its opposite twists by its own form
        return twist_source(b_in, aux["b_source"], aux.get("rmap"))
    raise ValueError(f"unknown rule {rule!r}")


# -- the commuting square-zero symbol identity -------------------------------------


def _subset_multiply(x: dict, y: dict) -> dict:
    out: dict = {}
    for sx, cx in x.items():
        for sy, cy in y.items():
            if sx & sy:
                continue  # square-zero symbols
            key = sx | sy
            out[key] = out.get(key, 0) + cx * cy
            if not out[key]:
                del out[key]
    return out


def subset_product_expansion(n: int, coefficient) -> dict:
    """Expand prod over nonempty subsets S of (1 + coefficient(|S|) alpha_S)
    in the algebra of commuting square-zero symbols, exactly over Z."""
    if n < 1:
        raise ValueError("need at least one symbol")
    total = {frozenset(): 1}
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            factor = {frozenset(): 1, frozenset(subset): coefficient(size)}
            total = _subset_multiply(total, factor)
    return total


def _unit_plus_singles(n: int) -> dict:
    out = {frozenset(): 1}
    for k in range(n):
        out[frozenset([k])] = 1
    return out


def product_identity_42(n: int, displayed_signs: bool = False) -> bool:
    """The telescoping identity behind the orbit factorization: a product of
    one factor per nonempty subset collapses to 1 + sum alpha_k.

    The identity holds with factor coefficients (-1)^(k-1) * (k-1)! on the
    size-k subsets.  `displayed_signs` drops the factorial; that variant is
    provided because it circulates in this form, but it already fails for
    three symbols (the expansion picks up an extra triple term), which this
    function then reports honestly."""
    if displayed_signs:
        coeff = lambda k: 1 if (k - 1) % 2 == 0 else -1
    else:
        coeff = lambda k: _factorial(k - 1) * (1 if (k - 1) % 2 == 0 else -1)
    return subset_product_expansion(n, coeff) == _unit_plus_singles(n)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# -- operator-level associativity of single twists ----------------------------------


def single_twist_brackets(ring: GradedRing, v: RingElement, i: int, j: int):
    """Both three-slot operator brackets produced by composing a single
    twisted product with itself, rewritten over the base product.

    Returns (left, right): the operators X with mu(mu ∧ 1) ∘ X_left and
    mu(1 ∧ mu) ∘ X_right expressing the two associativity composites."""
    one = ring.one()

    def e3(terms):
        return EndoElement(ring, 3, terms)

    A = lambda a, b, c: ((tuple(a), tuple(b), tuple(c)))
    # left composite: factors of (1 + v d∧d') pushed through (mu ∧ 1)
    left = e3({A((), (), ()): one})
    left = left.compose(
        e3({A((), (), ()): one, A((i,), (), (j,)): v, A((), (i,), (j,)): v})
    )
    left = left.compose(e3({A((), (), ()): one, A((i,), (j,), ()): v}))
    # right composite: factors pushed through (1 ∧ mu)
    right = e3({A((), (), ()): one})
    right = right.compose(
        e3({A((), (), ()): one, A((i,), (j,), ()): v, A((i,), (), (j,)): v})
    )
    right = right.compose(e3({A((), (), ()): one, A((), (i,), (j,)): v}))
    return left, right
