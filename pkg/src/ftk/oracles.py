"""Independent brute-force oracles for the classification paths.

Each oracle recomputes a count or a witness-existence fact by exhaustion
over explicit finite windows, sharing only the elementary series
arithmetic with the main path, never the canonicalisation logic:

* Artin-Schreier class counts: enumerate raw series over a window and
  quotient by exhaustively searched coboundary witnesses.
* Kummer class counts: enumerate monomial covers and quotient by
  exhaustively searched monomial witnesses (valuation additivity makes
  the monomial search complete for monomial covers); windowed all-
  coefficient searches back the targeted non-existence checks.
* Semidirect torsors: enumerate raw (cover, twist) pairs, realise twists
  as semilinear affine maps X -> M X + c composed symbolically, keep the
  pairs whose n-th power is the identity, and quotient by exhaustive
  conjugation.  The gcd-reduction check builds the non-coprime frame out
  of its two field components and enumerates honestly there.

Oracles refuse windows beyond desk scale instead of approximating.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DomainError
from .fields import FieldSpec
from .series import LaurentSeries

_MAX_WINDOW_SLOTS = 12


def _series_key(s: LaurentSeries):
    return (s.val, tuple(c.index for c in s.coeffs))


def _window_series(spec, exponents, prec):
    """Every series supported on the given exponents, exact to prec."""
    out = []
    for values in itertools.product(range(spec.q), repeat=len(exponents)):
        d = {e: spec.from_index(v) for e, v in zip(exponents, values) if v}
        out.append(LaurentSeries.from_dict(spec, d, prec))
    return out


class _UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def class_count(self):
        return len({self.find(k) for k in self.parent})

    def classes(self):
        out: dict = {}
        for k in self.parent:
            out.setdefault(self.find(k), []).append(k)
        return list(out.values())


# -- Artin-Schreier ---------------------------------------------------------


def as_bruteforce_class_count(spec: FieldSpec, m: int) -> int:
    """Orbit count of series with support in [-m, 0] under coboundaries,
    by exhaustive witness search over the same window."""
    if m + 1 > _MAX_WINDOW_SLOTS:
        raise DomainError("oracle scale exceeded")
    prec = 4 * max(m, 1) + 8
    exps = list(range(-m, 1))
    objects = _window_series(spec, exps, prec)
    candidates = _window_series(spec, exps, prec)
    uf = _UnionFind([_series_key(b) for b in objects])
    keys = {id(b): _series_key(b) for b in objects}
    by_key = {_series_key(b): b for b in objects}
    for b in objects:
        for u in candidates:
            image = u.wp() + b
            k = _series_key(image)
            if k in by_key:
                uf.union(_series_key(b), k)
    return uf.class_count()


def as_window_witness_exists(c: LaurentSeries, d: LaurentSeries, lo: int, hi: int) -> bool:
    """Is there u supported on [lo, hi] with u^p - u + c = d?  Exhaustive."""
    if hi - lo + 1 > _MAX_WINDOW_SLOTS:
        raise DomainError("oracle scale exceeded")
    spec = c.ring
    prec = min(c.prec, d.prec)
    for u in _window_series(spec, list(range(lo, hi + 1)), prec):
        if (u.wp() + c - d).is_zero():
            return True
    return False


# -- Kummer -----------------------------------------------------------------


def _support_key(s: LaurentSeries):
    """Support-only key: valid for comparing exact polynomial windows."""
    return tuple(sorted((e, c.index) for e, c in s.support().items()))


def kummer_bruteforce_class_count(spec: FieldSpec, n: int) -> int:
    """Orbit count of the monomial covers c t^i (i in 0..2n-1) under
    u^n-multiplication, searching monomial witnesses exhaustively.

    Monomial witnesses suffice for monomial covers because valuations add
    under multiplication over a field (checked separately in the tests).
    """
    if math.gcd(n, spec.p) != 1:
        raise DomainError("p divides n")
    prec = 4 * n + 8
    objects = [
        LaurentSeries.monomial(spec.from_index(c), i, prec)
        for i in range(2 * n)
        for c in range(1, spec.q)
    ]
    uf = _UnionFind([_support_key(b) for b in objects])
    by_key = {_support_key(b) for b in objects}
    units = [spec.from_index(c) for c in range(1, spec.q)]
    for b in objects:
        for k in range(-2 * n, 2 * n + 1):
            for v in units:
                u = LaurentSeries.monomial(v, k, prec)
                image = (u**n) * b
                key = _support_key(image)
                if key in by_key:
                    uf.union(_support_key(b), key)
    return uf.class_count()


def kummer_window_witness_exists(
    b: LaurentSeries, b2: LaurentSeries, n: int, lo: int = -2, hi: int = 2
) -> bool:
    """Full-window search: any u with support in [lo, hi] (all coefficient
    combinations, u invertible) and u^n b = b2 to the available precision?"""
    if hi - lo + 1 > _MAX_WINDOW_SLOTS:
        raise DomainError("oracle scale exceeded")
    spec = b.ring
    prec = min(b.prec, b2.prec)
    for u in _window_series(spec, list(range(lo, hi + 1)), prec):
        if u.is_zero():
            continue
        if ((u**n) * b - b2).is_zero():
            return True
    return False


# -- semilinear affine maps --------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """A semilinear algebra map between elementary-abelian cover
    presentations over (components of) a tame frame.

    f sends the coordinate vector X of the source presentation to
    M X + c in the target, and a scalar series a(s) to a(lam * s);
    src/dst label the frame components being crossed (both 0 when the
    frame is connected).
    """

    src: int
    dst: int
    matrix: tuple  # r x r over F_p
    trans: tuple  # r series over the target component's field
    lam: object  # FqElem substitution factor

    def then(self, g: "AffineMap", p: int) -> "AffineMap":
        """g o self: apply self first, then g."""
        if self.dst != g.src:
            raise DomainError("component mismatch in composition")
        from .semidirect import mat_mul, mat_vec_series

        # (g o f)(X) = M_f (M_g X + c_g) + sigma_{lam_g}(c_f)
        m = mat_mul(self.matrix, g.matrix, p)
        mixed = mat_vec_series(self.matrix, g.trans, p)
        subbed = tuple(c.scale_substitute(g.lam) for c in self.trans)
        trans = tuple(a + b for a, b in zip(mixed, subbed))
        return AffineMap(self.src, g.dst, m, trans, self.lam * g.lam)

    def power(self, n: int, p: int) -> "AffineMap":
        out = self
        for _ in range(n - 1):
            out = out.then(self, p)
        return out

    def is_identity(self) -> bool:
        from .semidirect import mat_identity

        r = len(self.matrix)
        p = self.trans[0].ring.char if self.trans else None
        if self.src != self.dst:
            return False
        if p is not None and self.matrix != mat_identity(r, p):
            return False
        if not all(t.is_zero() for t in self.trans):
            return False
        return self.lam == self.lam.spec.one()

    def key(self):
        return (
            self.src,
            self.dst,
            self.matrix,
            tuple(_series_key(t) for t in self.trans),
            self.lam.index,
        )


# -- semidirect: raw pair enumeration ----------------------------------------


def semidirect_bruteforce(group, frame, break_bound: int):
    """(class count, sorted aut multiset) for G-torsors marked with the
    frame, by raw enumeration.

    A torsor is a pair (b, gamma) with b a cover vector over a window and
    gamma: X -> psi^{-1} X + c over s -> xi s a compatible twist
    (p-th-power condition checked directly); it counts when gamma^n is the
    identity map.  Pairs are identified through exhaustively searched
    conjugations by cover morphisms X -> X - h, and automorphisms counted
    the same way.
    """
    r, p, n = group.r, group.p, frame.n
    if (break_bound + 1) * r > _MAX_WINDOW_SLOTS:
        raise DomainError("oracle scale exceeded")
    from .semidirect import mat_identity, mat_pow

    spec = frame.spec
    prec = 3 * break_bound + 12
    exps = list(range(-break_bound, 1))
    window = _window_series(spec, exps, prec)
    psi_inv = mat_pow(group.psi, n - 1, p) if r else ()
    xi = frame.xi
    one = spec.one()

    def vec_key(vec):
        return tuple(_series_key(v) for v in vec)

    # precomputed tables over the window
    wp_of = {_series_key(w): w.wp() for w in window}
    c_by_wp = {}
    for w in window:
        c_by_wp.setdefault(_series_key(wp_of[_series_key(w)]), []).append(w)

    # collect valid pairs: c must satisfy c^p - c = sigma(b) - psi^{-1} b
    pairs = []
    for b_vec in itertools.product(window, repeat=r):
        sigma_b = [s.scale_substitute(xi) for s in b_vec]
        per_component = []
        for i in range(r):
            rhs = sigma_b[i]
            for j in range(r):
                if psi_inv[i][j]:
                    rhs = rhs - b_vec[j].scale_int(psi_inv[i][j])
            per_component.append(c_by_wp.get(_series_key(rhs), []))
        for c_vec in itertools.product(*per_component):
            gamma = AffineMap(0, 0, psi_inv, tuple(c_vec), xi)
            if gamma.power(n, p).is_identity():
                pairs.append((tuple(b_vec), gamma))
    # quotient by conjugation with cover morphisms h over the same window
    keys = [(vec_key(b), g.key()) for b, g in pairs]
    uf = _UnionFind(keys)
    index = set(keys)
    id_mat = mat_identity(r, p)
    aut_of = {k: 0 for k in keys}
    for (b_vec, gamma), key in zip(pairs, keys):
        for h_vec in itertools.product(window, repeat=r):
            m_h = AffineMap(0, 0, id_mat, tuple(x.scale_int(-1) for x in h_vec), one)
            m_h_inv = AffineMap(0, 0, id_mat, tuple(h_vec), one)
            conj = m_h_inv.then(gamma, p).then(m_h, p)
            b2 = tuple(
                x + wp_of[_series_key(h)] for x, h in zip(b_vec, h_vec)
            )
            k2 = (vec_key(b2), conj.key())
            if k2 in index:
                uf.union(key, k2)
                if k2 == key:
                    aut_of[key] += 1
    classes = uf.classes()
    auts = sorted(aut_of[cls[0]] for cls in classes)
    return len(classes), auts


# -- the non-coprime frame (n, q_exp) = (2d, d): split components -------------


class SplitMap:
    """A G-algebra map of a cover over the two-component frame
    B((t))[X]/(X^(2d) - t^d): one AffineMap per source component."""

    def __init__(self, parts):
        self.parts = dict(parts)  # src component -> AffineMap

    def then(self, g: "SplitMap", p: int) -> "SplitMap":
        return SplitMap(
            {a: f.then(g.parts[f.dst], p) for a, f in self.parts.items()}
        )

    def power(self, n: int, p: int) -> "SplitMap":
        out = self
        for _ in range(n - 1):
            out = out.then(self, p)
        return out

    def is_identity(self) -> bool:
        return all(f.is_identity() for f in self.parts.values())

    def key(self):
        return tuple(sorted((a, f.key()) for a, f in self.parts.items()))


def double_frame_bruteforce(group, spec, break_bound: int, prec: int = None):
    """(class count, sorted aut multiset) for G = H x| C_4 torsors marked
    with the split frame X^4 = t^2 over F_q((t)), enumerated from the
    frame's own two-component structure (no gcd reduction).

    The frame algebra splits as F_q((s1)) x F_q((s2)) with s1^2 = t,
    s2^2 = -t, and the C_4 generator crosses the components with the
    substitution s -> zeta4 * s.  Objects are component cover vectors
    (b1, b2) with crossing twists gamma12, gamma21 such that the full
    symbolic composite gamma^4 is the identity; isomorphism and
    automorphism search is exhaustive over componentwise cover morphisms.
    """
    from .artin_schreier import as_canonicalize, enumerate_as_classes
    from .semidirect import mat_identity, mat_pow, mat_vec_series

    if group.n != 4:
        raise DomainError("split-frame oracle models n = 4, q_exp = 2 only")
    r, p = group.r, group.p
    if (spec.q - 1) % 4:
        raise DomainError("need the 4th roots of unity in the base field")
    if prec is None:
        prec = 3 * break_bound + 14
    zeta4 = spec.generator ** ((spec.q - 1) // 4)
    psi_inv = mat_pow(group.psi, group.n - 1, p)
    id_mat = mat_identity(r, p)
    one = spec.one()

    def subst(vec, lam):
        return tuple(v.scale_substitute(lam) for v in vec)

    def minus_mat_vec(m, vec):
        return tuple(v.scale_int(-1) for v in mat_vec_series(m, vec, p))

    def crossing_rhs(b_src, b_dst):
        """The series vector that p-Frobenius-minus-identity of the crossing
        translation must equal: tau(b_src) - psi^{-1} b_dst."""
        tau = subst(b_src, zeta4)
        mixed = minus_mat_vec(psi_inv, b_dst)
        return tuple(a + b for a, b in zip(tau, mixed))

    singles = enumerate_as_classes(spec, break_bound)
    vectors = [vec for vec in itertools.product(singles, repeat=r)]
    reps = {vec: tuple(c.to_series(prec) for c in vec) for vec in vectors}

    found = []
    for v1 in vectors:
        b1 = reps[v1]
        # the class of b2 is forced by solvability of the 1 -> 2 crossing
        target_cls = tuple(
            as_canonicalize(x)
            for x in mat_vec_series(group.psi, subst(b1, zeta4), p)
        )
        if target_cls not in reps:
            continue
        b2 = reps[target_cls]
        rhs12 = crossing_rhs(b1, b2)
        rhs21 = crossing_rhs(b2, b1)
        w12 = _solve_wp(rhs12)
        w21 = _solve_wp(rhs21)
        if w12 is None or w21 is None:
            continue
        consts = [
            LaurentSeries.constant(spec.from_int(k), prec) for k in range(p)
        ]
        for shift12 in itertools.product(range(p), repeat=r):
            c12 = tuple(w + consts[k] for w, k in zip(w12, shift12))
            for shift21 in itertools.product(range(p), repeat=r):
                c21 = tuple(w + consts[k] for w, k in zip(w21, shift21))
                gamma = SplitMap(
                    {
                        0: AffineMap(0, 1, psi_inv, c12, zeta4),
                        1: AffineMap(1, 0, psi_inv, c21, zeta4),
                    }
                )
                if gamma.power(4, p).is_identity():
                    found.append(((v1, target_cls), (b1, b2), gamma))
    # quotient by componentwise morphisms with constant witnesses
    keys = [(cls, g.key()) for cls, _, g in found]
    uf = _UnionFind(keys)
    index = set(keys)
    aut_of = {k: 0 for k in keys}
    const_vectors = list(
        itertools.product(
            [LaurentSeries.constant(spec.from_int(k), prec) for k in range(p)],
            repeat=r,
        )
    )
    for (cls, _, gamma), key in zip(found, keys):
        for h1 in const_vectors:
            for h2 in const_vectors:
                m_h = SplitMap(
                    {
                        0: AffineMap(0, 0, id_mat, tuple(x.scale_int(-1) for x in h1), one),
                        1: AffineMap(1, 1, id_mat, tuple(x.scale_int(-1) for x in h2), one),
                    }
                )
                m_h_inv = SplitMap(
                    {
                        0: AffineMap(0, 0, id_mat, h1, one),
                        1: AffineMap(1, 1, id_mat, h2, one),
                    }
                )
                conj = m_h_inv.then(gamma, p).then(m_h, p)
                k2 = (cls, conj.key())
                if k2 in index:
                    uf.union(key, k2)
                    if k2 == key:
                        aut_of[key] += 1
    classes = uf.classes()
    return len(classes), sorted(aut_of[cls[0]] for cls in classes)


def _solve_wp(rhs_vec):
    """Componentwise u with u^p - u = rhs, via the canonicalisation
    witnesses; None when some component is not a coboundary."""
    from .artin_schreier import as_iso_witness

    out = []
    for rhs in rhs_vec:
        zero = LaurentSeries.zero(rhs.ring, rhs.prec)
        w = as_iso_witness(zero, rhs)
        if w is None:
            return None
        out.append(w.u)
    return tuple(out)
