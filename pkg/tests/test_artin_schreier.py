import itertools
import random

import pytest

from ftk.artin_schreier import (
    ASCanonical,
    _canonicalize_with_witness,
    as_break,
    as_canonicalize,
    as_iso_witness,
    as_moduli_point,
    elemab_canonicalize,
    elemab_enumerate,
    elemab_iso_witness,
    enumerate_as_classes,
    prime_to_p_support,
)
from ftk.errors import DomainError
from ftk.fields import field
from ftk.oracles import as_bruteforce_class_count, as_window_witness_exists
from ftk.series import LaurentSeries as L


F2, F3 = field(2), field(3)


def rand_series(rng, spec, lo, hi, prec, density=0.6):
    d = {}
    for e in range(lo, hi):
        if rng.random() < density:
            d[e] = spec.from_index(rng.randrange(1, spec.q))
    return L.from_dict(spec, d, prec)


class TestCanonicalize:
    def test_f2_example(self):
        b = L.from_dict(F2, {-4: F2.one(), -3: F2.one()}, 12)
        c = as_canonicalize(b)
        assert c.support_dict() == {3: F2.one(), 1: F2.one()}
        assert c.constant_class.is_zero()

    def test_witness_realises_moves(self):
        b = L.from_dict(F2, {-4: F2.one(), -3: F2.one()}, 12)
        c, u = _canonicalize_with_witness(b)
        assert u.support() == {-2: F2.one(), -1: F2.one()}
        assert (u.wp() + b - c.to_series(b.prec)).is_zero()

    def test_coboundary_collapses(self):
        rng = random.Random(5)
        for _ in range(40):
            u = rand_series(rng, F2, -6, 7, 24)
            c = as_canonicalize(u.wp())
            assert c.support == () and c.constant_class.is_zero()

    def test_f3_pth_root_chain(self):
        b = L.from_dict(F3, {-9: F3.from_int(2)}, 14)
        c = as_canonicalize(b)
        assert c.support_dict() == {1: F3.from_int(2)}

    def test_canonical_idempotent(self):
        rng = random.Random(7)
        for _ in range(40):
            b = rand_series(rng, F3, -6, 4, 30)
            c = as_canonicalize(b)
            assert as_canonicalize(c.to_series(30)) == c

    def test_witness_identity_random(self):
        rng = random.Random(11)
        for _ in range(60):
            spec = [F2, F3, field(2, 2)][rng.randrange(3)]
            b = rand_series(rng, spec, -6, 5, 28)
            c, u = _canonicalize_with_witness(b)
            assert (u.wp() + b - c.to_series(b.prec)).is_zero()

    def test_requires_field_ring(self):
        from ftk.fields import test_ring as local_test_ring

        R = local_test_ring(2, 1, 2)
        with pytest.raises(DomainError):
            as_canonicalize(L.constant(R.one(), 5))


class TestIsoWitness:
    def test_example_pair(self):
        c = L.from_dict(F2, {-4: F2.one(), -3: F2.one()}, 12)
        d = L.from_dict(F2, {-3: F2.one(), -1: F2.one()}, 12)
        w = as_iso_witness(c, d)
        assert w.u.support() == {-2: F2.one(), -1: F2.one()}
        assert (w.u.wp() + c - d).is_zero()

    def test_self_witnesses_are_prime_field(self):
        c = L.from_dict(F2, {-3: F2.one()}, 10)
        w = as_iso_witness(c, c)
        all_w = w.all_witnesses()
        assert len(all_w) == 2
        for u in all_w:
            assert (u.wp()).is_zero()

    def test_non_isomorphic(self):
        assert as_iso_witness(L.from_dict(F2, {-1: F2.one()}, 10), L.zero(F2, 10)) is None

    def test_completeness_against_window_search(self):
        # exhaustive window search finds a witness iff as_iso_witness does
        prec = 16
        window = []
        for values in itertools.product(range(2), repeat=4):
            d = {e: F2.from_index(v) for e, v in zip(range(-3, 1), values) if v}
            window.append(L.from_dict(F2, d, prec))
        for c in window:
            for d in window:
                structured = as_iso_witness(c, d) is not None
                brute = as_window_witness_exists(c, d, -3, 0)
                assert structured == brute, (str(c), str(d))

    def test_witnesses_verify(self):
        rng = random.Random(13)
        for _ in range(50):
            spec = [F2, F3][rng.randrange(2)]
            b = rand_series(rng, spec, -5, 3, 24)
            u = rand_series(rng, spec, -3, 3, 24)
            d = b + u.wp()
            w = as_iso_witness(b, d)
            assert w is not None
            assert (w.u.wp() + b - d).is_zero()


class TestBreakAndModuli:
    def test_break_examples(self):
        c = as_canonicalize(L.from_dict(F2, {-3: F2.one(), -1: F2.one()}, 10))
        assert as_break(c) == 3
        empty = as_canonicalize(L.zero(F2, 10))
        assert as_break(empty) is None

    def test_moduli_point_example(self):
        c = as_canonicalize(L.from_dict(F2, {-3: F2.one(), -1: F2.one()}, 10))
        pt = as_moduli_point(c)
        assert pt.level == 3
        assert [v.index for v in pt.value] == [1, 1]

    def test_moduli_point_unramified(self):
        pt = as_moduli_point(as_canonicalize(L.zero(F2, 8)))
        assert pt.level == 1
        assert all(v.is_zero() for v in pt.value)

    def test_s_excludes_multiples_of_p(self):
        assert prime_to_p_support(3, 5) == [1, 2, 4, 5]
        c = ASCanonical(F3, ((5, F3.from_int(2)),), F3.zero())
        pt = as_moduli_point(c)
        assert pt.level == 5
        assert [v.index for v in pt.value] == [0, 0, 0, 2]

    def test_injective_on_fixed_constant(self):
        pts = {}
        for c in enumerate_as_classes(F2, 3):
            if not c.constant_class.is_zero():
                continue
            pt = as_moduli_point(c)
            key = (pt.level, tuple(v.index for v in pt.value))
            assert key not in pts
            pts[key] = c

    def test_frobenius_stability_of_points(self):
        rng = random.Random(17)
        for _ in range(30):
            b = rand_series(rng, F2, -5, 2, 24)
            p1 = as_moduli_point(as_canonicalize(b)).canonical()
            p2 = as_moduli_point(as_canonicalize(b.series_pth_power())).canonical()
            assert p1.eq(p2)


class TestEnumeration:
    @pytest.mark.parametrize(
        "p,e,m,expected",
        [(2, 1, 1, 4), (2, 1, 3, 8), (3, 1, 2, 27), (2, 1, 0, 2), (2, 2, 1, 8)],
    )
    def test_count_law(self, p, e, m, expected):
        spec = field(p, e)
        classes = enumerate_as_classes(spec, m)
        assert len(classes) == expected
        assert len(set(classes)) == expected
        assert len(classes) == p * spec.q ** len(prime_to_p_support(p, m))

    @pytest.mark.parametrize("p,e,m", [(2, 1, 1), (2, 1, 3), (3, 1, 2)])
    def test_counts_match_bruteforce(self, p, e, m):
        spec = field(p, e)
        assert len(enumerate_as_classes(spec, m)) == as_bruteforce_class_count(spec, m)

    def test_deterministic_order(self):
        a = enumerate_as_classes(F3, 2)
        b = enumerate_as_classes(F3, 2)
        assert a == b
        assert a == sorted(a, key=ASCanonical.sort_key)


class TestElemAb:
    def test_rank_one_reduces_to_scalar(self):
        rng = random.Random(19)
        b = rand_series(rng, F3, -4, 3, 20)
        assert elemab_canonicalize((b,)) == (as_canonicalize(b),)

    def test_componentwise_witness(self):
        rng = random.Random(23)
        b1 = rand_series(rng, F2, -4, 2, 20)
        b2 = rand_series(rng, F2, -3, 2, 20)
        u1 = rand_series(rng, F2, -2, 2, 20)
        u2 = rand_series(rng, F2, -2, 2, 20)
        target = (b1 + u1.wp(), b2 + u2.wp())
        ws = elemab_iso_witness((b1, b2), target)
        assert ws is not None
        for u, b, d in zip(ws, (b1, b2), target):
            assert (u.wp() + b - d).is_zero()

    def test_rank_mismatch(self):
        with pytest.raises(DomainError):
            elemab_iso_witness((L.zero(F2, 5),), (L.zero(F2, 5), L.zero(F2, 5)))

    def test_count_rank2(self):
        assert len(elemab_enumerate(F2, 2, 1)) == 16

    def test_zero_vector_canonical(self):
        out = elemab_canonicalize((L.zero(F2, 6), L.zero(F2, 6)))
        assert all(c.support == () and c.constant_class.is_zero() for c in out)

    def test_rank2_bruteforce_window(self):
        # orbit count of pairs over window [-1, 0] equals 16 = (p q^{|S_1|})^2
        prec = 12
        singles = []
        for values in itertools.product(range(2), repeat=2):
            d = {e: F2.from_index(v) for e, v in zip((-1, 0), values) if v}
            singles.append(L.from_dict(F2, d, prec))
        pairs = list(itertools.product(singles, repeat=2))
        classes = set()
        for pair in pairs:
            classes.add(elemab_canonicalize(pair))
        assert len(classes) == 16
        # brute-force confirmation: orbits under componentwise coboundaries
        reps = set()
        for pair in pairs:
            orbit = set()
            for u1 in singles:
                for u2 in singles:
                    img = (pair[0] + u1.wp(), pair[1] + u2.wp())
                    orbit.add(
                        tuple(
                            tuple(sorted((e, c.index) for e, c in x.support().items()))
                            for x in img
                        )
                    )
            reps.add(min(orbit))
        assert len(reps) == 16
