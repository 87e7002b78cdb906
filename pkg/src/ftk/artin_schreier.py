"""Classification of Z/pZ-covers and elementary-abelian p-covers of
Spec F_q((t)).

A degree-p cyclic cover is B((t))[X]/(X^p - X - b); two series present
isomorphic covers exactly when they differ by a coboundary u^p - u, and a
morphism b -> d is a series u with u^p - u + b = d, composing additively.
Canonical forms live on the prime-to-p support: the positive part of b is
always a coboundary, a pole of order p^a * s (s prime to p) moves to the
slot s after a coefficient p-th roots, and the constant lands on a fixed
transversal of F_q modulo u^p - u.  Each move is realised by an explicit
witness, so canonicalisation doubles as an isomorphism-witness factory.

Rank-r elementary-abelian covers are vectors of the rank-1 data, handled
componentwise throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError, PrecisionExhausted
from .fields import FieldSpec, FqElem, canonical_wp_shift
from .series import LaurentSeries


def prime_to_p_support(p: int, m: int):
    """S_m = {1 <= n <= m : p does not divide n}."""
    return [n for n in range(1, m + 1) if n % p]


@dataclass(frozen=True)
class ASCanonical:
    """Canonical datum of a Z/pZ-cover: finitely supported map on the
    prime-to-p integers plus a transversal representative of the
    unramified constant class."""

    spec: FieldSpec
    support: tuple  # sorted ((s, FqElem nonzero), ...), s prime to p
    constant_class: FqElem

    def __post_init__(self):
        for s, c in self.support:
            if s < 1 or s % self.spec.p == 0:
                raise DomainError(f"support key {s} is not prime to p")
            if c.is_zero():
                raise DomainError("canonical support stores nonzero values only")

    @property
    def break_(self):
        """Largest pole slot; None when unramified."""
        return max((s for s, _ in self.support), default=None)

    def support_dict(self) -> dict:
        return dict(self.support)

    def to_series(self, prec: int) -> LaurentSeries:
        d = {-s: c for s, c in self.support}
        if not self.constant_class.is_zero():
            d[0] = self.constant_class
        return LaurentSeries.from_dict(self.spec, d, prec)

    def sort_key(self):
        return (
            tuple((s, c.index) for s, c in self.support),
            self.constant_class.index,
        )

    def to_json(self) -> dict:
        return {
            "support": {str(s): str(c) for s, c in self.support},
            "constant_class": str(self.constant_class),
            "p": self.spec.p,
            "q": self.spec.q,
        }

    def __str__(self):
        return str(self.to_series(1))


@dataclass(frozen=True)
class ASWitness:
    """u with u^p - u + c = d, certifying an isomorphism of covers."""

    u: LaurentSeries

    def all_witnesses(self):
        """The full solution set u + F_p."""
        ring = self.u.ring
        out = []
        for k in range(ring.char):
            shift = LaurentSeries.constant(ring.from_int(k), self.u.prec)
            out.append(self.u + shift)
        return out


def _canonicalize_with_witness(b: LaurentSeries):
    """(canonical form, u) with u^p - u + b = canonical (mod t^prec)."""
    if not isinstance(b.ring, FieldSpec):
        raise DomainError("canonical forms are defined over fields only")
    spec = b.ring
    p = spec.p
    if b.prec < 1:
        raise PrecisionExhausted("cannot certify the positive-part discard")
    parts = b.split_parts()
    # positive part: u_+^p - u_+ = positive, so adding -(that) kills it
    u_total = -parts.positive.solve_positive()
    # negative terms: pole order j = p^a s walks down to slot s by p-th roots
    slots: dict = {}
    witness_terms: dict = {}
    for j, c in sorted(parts.negative.support().items()):  # most negative first
        j = -j
        a = 0
        while j % p == 0:
            j //= p
            a += 1
        root = c
        for _ in range(a):
            root = root.pth_root()
        # chain witness: moving c t^{-p^a s} to root t^{-s} costs
        # -(root^{p^k} t^{-p^k s}) at every intermediate level k < a
        for k in range(a):
            ck = root
            for _ in range(k):
                ck = ck.frobenius()
            e = -(p**k) * j
            witness_terms[e] = witness_terms.get(e, spec.zero()) - ck
        slots[j] = slots.get(j, spec.zero()) + root
    if witness_terms:
        u_total = u_total + LaurentSeries.from_dict(spec, witness_terms, b.prec)
    # constant to its transversal representative
    rep, w = canonical_wp_shift(parts.constant)
    if not w.is_zero():
        u_total = u_total + LaurentSeries.constant(w, b.prec)
    canon = ASCanonical(
        spec,
        tuple(sorted((s, c) for s, c in slots.items() if not c.is_zero())),
        rep,
    )
    return canon, u_total


def as_canonicalize(b: LaurentSeries) -> ASCanonical:
    return _canonicalize_with_witness(b)[0]


def as_iso_witness(c: LaurentSeries, d: LaurentSeries):
    """An ASWitness u with u^p - u + c = d when the covers are isomorphic,
    else None.  The composite of the two canonicalisation coboundaries."""
    if c.ring != d.ring:
        raise DomainError("covers over different rings")
    canon_c, u_c = _canonicalize_with_witness(c)
    canon_d, u_d = _canonicalize_with_witness(d)
    if canon_c != canon_d:
        return None
    return ASWitness(u_c - u_d)


def as_break(f: ASCanonical):
    return f.break_


def as_moduli_point(f: ASCanonical):
    """The point of the Frobenius-twisted colimit at the minimal level that
    shows the whole support.  The constant class is not part of the point."""
    from .groupoids import IndPoint

    level = f.break_ or 1
    sup = f.support_dict()
    value = tuple(
        sup.get(s, f.spec.zero()) for s in prime_to_p_support(f.spec.p, level)
    )
    return IndPoint(f.spec, 1, level, value)


def enumerate_as_classes(spec: FieldSpec, m: int):
    """Every canonical form with support in S_m, in deterministic order.

    There are p * q^|S_m| of them: q choices per slot times the p
    transversal classes.
    """
    if m < 0:
        raise DomainError("break bound must be >= 0")
    slots = prime_to_p_support(spec.p, m)
    transversal = sorted(
        {spec.wp_transversal_rep(c).coords for c in spec.elements()}
    )
    out = []
    for values in itertools.product(range(spec.q), repeat=len(slots)):
        support = tuple(
            (s, spec.from_index(v)) for s, v in zip(slots, values) if v
        )
        for rep in transversal:
            out.append(ASCanonical(spec, support, FqElem(spec, rep)))
    out.sort(key=ASCanonical.sort_key)
    return out


# -- elementary abelian (Z/pZ)^r, componentwise ------------------------


def _check_vector(b_vec):
    if not b_vec:
        raise DomainError("rank-0 vector")
    ring = b_vec[0].ring
    for b in b_vec:
        if b.ring != ring:
            raise DomainError("mixed rings in cover vector")
    return ring


def elemab_canonicalize(b_vec):
    _check_vector(b_vec)
    return tuple(as_canonicalize(b) for b in b_vec)


def elemab_canonicalize_with_witness(b_vec):
    _check_vector(b_vec)
    pairs = [_canonicalize_with_witness(b) for b in b_vec]
    return tuple(c for c, _ in pairs), tuple(u for _, u in pairs)


def elemab_iso_witness(c_vec, d_vec):
    if len(c_vec) != len(d_vec):
        raise DomainError("rank mismatch")
    ws = [as_iso_witness(c, d) for c, d in zip(c_vec, d_vec)]
    if any(w is None for w in ws):
        return None
    return tuple(w.u for w in ws)


def elemab_enumerate(spec: FieldSpec, r: int, m: int):
    """All rank-r canonical vectors with break bound m: (p q^|S_m|)^r."""
    if r < 1:
        raise DomainError("rank must be >= 1")
    singles = enumerate_as_classes(spec, m)
    return [vec for vec in itertools.product(singles, repeat=r)]
