import random

import pytest

from quotient_forms import (
    EmptyTruncationForInfinitePresentation,
    FiniteSlice,
    Generator,
    GradedRing,
    Infinite,
    MultipleInvertibleGenerators,
    OddDegreeGenerator,
    RingMap,
    homogeneous_slice,
    make_field,
    make_graded_ring,
    parse_element,
)
from quotient_forms.fields import PLocalIntegers


def laurent_ring(p=2, name="v", degree=6):
    return make_graded_ring(make_field(p, 1), [(name, degree, True)])


def poly_ring_f2():
    # F_2[x_2, x_3, x_4, x_5] with a declared tail from degree 12 on
    return make_graded_ring(
        make_field(2, 1),
        [(f"x_{i}", 2 * i) for i in range(2, 6)],
        truncation=12,
        infinite_tail=True,
        tail_min_degree=12,
    )


def test_construction_errors():
    f2 = make_field(2, 1)
    with pytest.raises(OddDegreeGenerator):
        make_graded_ring(f2, [("a", 3)])
    with pytest.raises(MultipleInvertibleGenerators):
        make_graded_ring(f2, [("a", 2, True), ("b", 4, True)])
    with pytest.raises(EmptyTruncationForInfinitePresentation):
        GradedRing(f2, (Generator("a", 2),), None, infinite_tail=True, tail_min_degree=4)


def test_ring_axioms_randomized():
    ring = poly_ring_f2()
    rng = random.Random(1)
    gens = [ring.gen(g.name) for g in ring.generators]
    pool = gens + [ring.one(), ring.zero(), gens[0] * gens[1] + gens[2]]

    def rand_elem():
        e = ring.zero()
        for _ in range(rng.randint(1, 3)):
            e = e + rng.choice(pool)
        return e

    for _ in range(60):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a * ring.one() == a
        assert a + ring.zero() == a


def test_degrees_add_under_multiplication():
    ring = poly_ring_f2()
    x2, x3 = ring.gen("x_2"), ring.gen("x_3")
    assert x2.degree() == 4 and x3.degree() == 6
    assert (x2 * x3).degree() == 10
    assert (x2 + x3).homogeneous_components()[4] == x2
    with pytest.raises(ValueError):
        (x2 + x3).degree()


def test_laurent_exponents():
    ring = laurent_ring()
    v = ring.gen("v")
    inv = ring.invert_unit(v)
    assert v * inv == ring.one()
    assert inv.degree() == -6
    assert ring.is_unit(v * v)
    assert not ring.is_unit(v + ring.one())


def test_slice_laurent_single_generator():
    ring = laurent_ring(p=2, degree=6)  # one invertible degree-6 generator
    s = homogeneous_slice(ring, 6)
    assert isinstance(s, FiniteSlice)
    assert set(s) == {ring.zero(), ring.gen("v")}
    assert homogeneous_slice(ring, 4).cardinality == 1  # just zero
    assert homogeneous_slice(ring, -12).cardinality == 2


def test_slice_periodic_field():
    f9 = make_field(3, 2)
    ring = make_graded_ring(f9, [("u", 2, True)])
    s = homogeneous_slice(ring, 2)
    assert s.cardinality == 9
    u = ring.gen("u")
    assert all((not e) or e.degree() == 2 for e in s)
    assert u in s


def test_slice_infinite_markers():
    # p-local base: any nonempty slice is infinite
    z3 = PLocalIntegers(3)
    bp_like = make_graded_ring(
        z3,
        [("v_1", 4), ("v_2", 16)],
        truncation=32,
        infinite_tail=True,
        tail_min_degree=52,
    )
    s = homogeneous_slice(bp_like, 4)
    assert isinstance(s, Infinite)
    assert "v_1" in s.witness
    # beyond the truncation bound
    assert isinstance(homogeneous_slice(bp_like, 40), Infinite)
    # degree-0 generators force infinite slices
    f2 = make_field(2, 1)
    with_zero_deg = make_graded_ring(f2, [("a", 0), ("u", 2, True)])
    assert isinstance(homogeneous_slice(with_zero_deg, 2), Infinite)
    # invertible generator mixed with a polynomial one
    mixed = make_graded_ring(f2, [("x", 2), ("v", 6, True)])
    assert isinstance(homogeneous_slice(mixed, 4), Infinite)


def test_slice_group_closure():
    ring = poly_ring_f2()
    s = homogeneous_slice(ring, 10)  # monomials: x_2*x_3, x_5
    assert isinstance(s, FiniteSlice)
    elems = list(s)
    assert len(elems) == s.cardinality == 4
    for a in elems:
        for b in elems:
            assert a + b in s


def test_tail_slices_report_infinite():
    ring = poly_ring_f2()
    assert isinstance(homogeneous_slice(ring, 12), Infinite)
    s = homogeneous_slice(ring, 6)
    assert set(s) == {ring.zero(), ring.gen("x_3")}


def test_parse_format_round_trip():
    ring = poly_ring_f2()
    rng = random.Random(2)
    gens = [ring.gen(g.name) for g in ring.generators]
    for _ in range(40):
        e = ring.zero()
        for _ in range(rng.randint(0, 4)):
            term = ring.one()
            for _ in range(rng.randint(0, 3)):
                term = term * rng.choice(gens)
            e = e + term
        assert parse_element(ring, str(e)) == e


def test_parse_format_extension_and_fractions():
    f9 = make_field(3, 2)
    ring = make_graded_ring(f9, [("u", 2, True)])
    t = f9.generator()
    e = ring.monomial((2,), t + f9.one()) + ring.monomial((-1,), t)
    assert parse_element(ring, str(e)) == e
    z3 = PLocalIntegers(3)
    zr = make_graded_ring(z3, [("v_1", 4)])
    e2 = zr.monomial((2,), z3.element("3/2")) - zr.one()
    assert parse_element(zr, str(e2)) == e2


def test_ring_map_reduction():
    z2 = PLocalIntegers(2)
    f2 = make_field(2, 1)
    src = make_graded_ring(z2, [("v_1", 2), ("v_2", 6)])
    tgt = make_graded_ring(f2, [("v_2", 6)])
    rmap = RingMap(src, tgt, (tgt.zero(), tgt.gen("v_2")))
    e = src.gen("v_1") * src.gen("v_1") + src.gen("v_2").scale(3)
    assert rmap(e) == tgt.gen("v_2")  # 3 reduces to 1 mod 2, v_1 dies
