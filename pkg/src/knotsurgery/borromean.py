"""Exterior-algebra models for surgeries on connected sums of Borromean knots.

Nonzero integral surgeries on the g-fold connected sum give circle bundles
over a genus-g surface; adding lens-space core-knot summands gives Seifert
fibered spaces with nonzero orbifold degree.  All differentials vanish, so
the truncated surgery cone is assembled from monomial submodules of the
exterior algebra on 2g generators: the image at each retained slot is the
span of monomials of degree at least

    min(g - s0(t),  g + s0(t - u))

where s0 collapses a refined lattice index to the base level and u is the
total slope numerator.  The two halves are the low- and high-side
projection images; both are monomial submodules of the same flag, so their
sum is again one.  For Seifert inputs this index law is an extrapolation of
the circle-bundle block computation and is gated by the regression tests
against the unfibered/circle-bundle values; treat it as experimental.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Optional

from .cone import PreconditionError


@dataclass(frozen=True)
class MonomialModule:
    """Span of a set of exterior monomials in 2g generators."""
    g: int
    monomials: frozenset  # of frozensets of indices in 1..2g

    def __post_init__(self):
        for m in self.monomials:
            if not all(1 <= i <= 2 * self.g for i in m):
                raise PreconditionError("monomial index out of range")

    @classmethod
    def degree_at_least(cls, g: int, k: int) -> "MonomialModule":
        """The submodule spanned by all monomials of degree >= k."""
        if k <= 0:
            k = 0
        gens = range(1, 2 * g + 1)
        monos = [frozenset(c) for d in range(k, 2 * g + 1) for c in combinations(gens, d)]
        return cls(g, frozenset(monos))

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def is_submodule(self) -> bool:
        """Closed under multiplication by every degree-one generator."""
        for m in self.monomials:
            for i in range(1, 2 * self.g + 1):
                if i not in m and frozenset(m | {i}) not in self.monomials:
                    return False
        return True


@dataclass(frozen=True)
class GammaSlice:
    """A labeled graded piece of the sutured space at integer slope n."""
    n: int
    i2: int  # doubled grading
    value: MonomialModule

    @property
    def dim(self) -> int:
        return self.value.dim


def gamma_slice_table(g: int, n: int) -> tuple:
    """All nonzero graded slices at slope n >= 2g, labeled by doubled grading."""
    out = []
    bound = n - 1 + 2 * g
    for i2 in range(-bound, bound + 1):
        if (i2 - (n - 1)) % 2 != 0:
            continue
        mod = gamma_slice(g, n, i2)
        if mod.dim:
            out.append(GammaSlice(n, i2, mod))
    return tuple(out)


def monomial_dim(g: int, k: int) -> int:
    """Dimension of the degree->=k submodule: sum of binomials C(2g, j), j >= k."""
    if k <= 0:
        k = 0
    if k > 2 * g:
        return 0
    return sum(comb(2 * g, j) for j in range(k, 2 * g + 1))


def khi_borromean(g: int, i: int) -> int:
    """Knot-homology dimension of the g-fold connected sum at grading i."""
    if abs(i) > g:
        raise PreconditionError(f"grading {i} exceeds genus {g}")
    return comb(2 * g, g + i)


def gamma_slice(g: int, n: int, i2: int) -> MonomialModule:
    """Graded slice of the sutured space at integer suture slope n >= 2g.

    ``i2`` is the doubled grading.  Within the middle band the slice is the
    whole exterior algebra; on the boundary band of width 2g it is the
    monomial module of degree at least |i| + g - (n-1)/2; beyond that it
    vanishes (empty module).
    """
    if g < 1:
        raise PreconditionError("genus must be at least 1")
    if n < 2 * g:
        raise PreconditionError(f"suture slope {n} below the supported range (need n >= {2 * g})")
    if (i2 - (n - 1)) % 2 != 0:
        raise PreconditionError(f"doubled grading {i2} has the wrong parity for slope {n}")
    band2 = n - 1 - 2 * g  # doubled inner-band radius
    if abs(i2) <= band2:
        return MonomialModule.degree_at_least(g, 0)
    k = (abs(i2) + 2 * g - (n - 1)) // 2
    if k > 2 * g:
        return MonomialModule(g, frozenset())
    return MonomialModule.degree_at_least(g, k)


# --- truncated cone over the exterior-algebra model -------------------------

def _lattice(offset_map: dict, p: int):
    """offset residue map: (2 sigma mod 2p) -> raw doubled offset."""
    return offset_map


def _collapse_factory(offset_map: dict, p: int):
    def s0(sigma: int) -> int:
        off = offset_map[sigma % (2 * p)]
        return (sigma - off) // (2 * p)
    return s0


def _large_applicable(g: int, p: int, u: int, offset_map: dict) -> bool:
    """Whether the direct-sum shortcut is valid for total slope u.

    True when no lattice slot lands strictly between the projection bands,
    i.e. every slot has its low collapse at the genus or beyond, or its
    shifted collapse at minus the genus or below.  For a plain circle bundle
    this reduces to u >= 2g - 1.
    """
    s0 = _collapse_factory(offset_map, p)
    # violations need s0(sigma) <= g - 1 and s0(sigma - 2u) >= 1 - g
    lo = 2 * u + 2 * (1 - g) * p - (p - 1)
    hi = 2 * (g - 1) * p + (p - 1)
    parity = next(iter(offset_map.values())) % 2
    for sigma in range(lo, hi + 1):
        if sigma % 2 != parity or (sigma % (2 * p)) not in offset_map:
            continue
        if s0(sigma) <= g - 1 and s0(sigma - 2 * u) >= 1 - g:
            return False
    return True


def _cone_dim_exterior(g: int, p: int, u: int, offset_map: dict) -> int:
    """ker + coker of the truncated cone with all-vanishing differentials.

    Source slots carry the full exterior algebra (dimension 4^g); target
    slots do too; the image inside each retained target is the monomial
    block given by the collapse index law.
    """
    if u <= 0:
        raise PreconditionError("internal: cone expects a positive total slope")
    s0 = _collapse_factory(offset_map, p)
    W = max(g, u // (2 * p) + 1)
    full = 4 ** g

    sources = [2 * s_prime * p + off
               for s_prime in range(-W, W + 1) for off in offset_map.values()]
    src_total = len(sources) * full

    parity = sources[0] % 2
    lo = 2 * u + 2 * (-W) * p - (p - 1)
    hi = 2 * W * p + (p - 1)
    tgt_count = 0
    image_total = 0
    for sigma in range(lo, hi + 1):
        if sigma % 2 != parity or (sigma % (2 * p)) not in offset_map:
            continue
        if s0(sigma) > W or s0(sigma - 2 * u) < -W:
            continue
        tgt_count += 1
        k_low = min(max(g - s0(sigma), 0), 2 * g + 1)
        k_high = min(max(g + s0(sigma - 2 * u), 0), 2 * g + 1)
        image_total += monomial_dim(g, min(k_low, k_high))
    return src_total + tgt_count * full - 2 * image_total


def circle_bundle_dim_module(g: int, m: int) -> int:
    """Circle-bundle dimension over a genus-g surface, module pathway.

    Evaluates the truncated cone with monomial-block images; for
    |m| >= 2g - 1 the cone has no retained targets and collapses to the
    direct sum 4^g * |m|.
    """
    if g < 2:
        raise PreconditionError("module pathway requires genus at least 2")
    if m == 0:
        raise PreconditionError("Euler number 0 unsupported (zero orbifold degree)")
    mm = abs(m)  # the bundle and its orientation reverse have equal dimensions
    if mm >= 2 * g - 1:
        return (4 ** g) * mm
    return _cone_dim_exterior(g, 1, mm, {0: 0})


def circle_bundle_dim_formula(g: int, m: int) -> int:
    """Closed-form circle-bundle dimension (three cases by parity and size)."""
    if g < 2:
        raise PreconditionError("closed form requires genus at least 2")
    if m == 0:
        raise PreconditionError("Euler number 0 unsupported (zero orbifold degree)")
    mm = abs(m)
    if mm >= 2 * g - 1:
        return (4 ** g) * mm
    if mm % 2 == 0:
        l = mm // 2
        return ((4 ** g) * mm
                + 4 * sum(comb(2 * g, i) for j in range(1, g - l) for i in range(j))
                + 2 * sum(comb(2 * g, i) for i in range(g - l)))
    l = (mm + 1) // 2
    return ((4 ** g) * mm
            + 4 * sum(comb(2 * g, i) for j in range(1, g - l + 1) for i in range(j)))


def _seifert_offsets(multiplicities: list) -> dict:
    """Residue map for the refined lattice of a multi-core connected sum.

    Each doubled offset is sum(tau_i * p/v_i) with tau_i running over the
    doubled lens gradings |tau_i| <= v_i - 1 of the right parity; pairwise
    coprime multiplicities make the residues mod 2p distinct.
    """
    p = math.prod(multiplicities)
    offsets: dict = {}
    choices = [range(-(v - 1), v, 2) for v in multiplicities]
    for taus in product(*choices):
        off = sum(t * (p // v) for t, v in zip(taus, multiplicities))
        key = off % (2 * p)
        if key in offsets:
            raise PreconditionError("multiplicities are not pairwise coprime")
        offsets[key] = off
    if not offsets:
        offsets[0] = 0
    return offsets


def seifert_dim(g: int, m: int, pairs: Iterable[tuple]) -> int:
    """Seifert fibered space over a genus-g base with invariants (m, r_i/v_i).

    Requires nonzero orbifold degree m + sum(r_i/v_i), multiplicities
    v_i >= 1 pairwise coprime and each r_i/v_i reduced.  Experimental for
    v_i > 1: the monomial-block index law is extrapolated from the
    circle-bundle computation and gated by regression tests.
    """
    pairs = [(int(r), int(v)) for r, v in pairs]
    if g < 1:
        raise PreconditionError("base genus must be at least 1")
    for r, v in pairs:
        if v < 1:
            raise PreconditionError(f"multiplicity {v} must be a positive integer")
        if v > 1 and math.gcd(abs(r), v) != 1:
            raise PreconditionError(f"pair {r}/{v} is not reduced")
    for (r1, v1), (r2, v2) in combinations(pairs, 2):
        if math.gcd(v1, v2) != 1:
            raise PreconditionError(
                f"gcd({v1}, {v2}) > 1: multiplicities must satisfy gcd(v_i, v_j) = 1 for i != j")
    deg = Fraction(m) + sum(Fraction(r, v) for r, v in pairs)
    if deg == 0:
        raise PreconditionError("orbifold degree 0 unsupported (no zero-slope formula here)")
    if deg < 0:
        # orientation reversal: flip every invariant, dimensions agree
        m = -m
        pairs = [(-r, v) for r, v in pairs]
        deg = -deg
    multiplicities = [v for _, v in pairs]
    p = math.prod(multiplicities) if multiplicities else 1
    u = m * p + sum((p // v) * r for r, v in pairs)
    assert u == deg * p and u > 0
    offset_map = _seifert_offsets(multiplicities) if multiplicities else {0: 0}
    if _large_applicable(g, p, u, offset_map):
        # large-slope regime: direct sum of u full slots
        return u * (4 ** g)
    return _cone_dim_exterior(g, p, u, offset_map)


def seifert_dim_large(g: int, m: int, pairs: Iterable[tuple]) -> Optional[int]:
    """Large-slope shortcut value, or None when outside that regime."""
    pairs = [(int(r), int(v)) for r, v in pairs]
    deg = Fraction(m) + sum(Fraction(r, v) for r, v in pairs)
    if deg == 0:
        raise PreconditionError("orbifold degree 0 unsupported")
    if deg < 0:
        m, pairs = -m, [(-r, v) for r, v in pairs]
    multiplicities = [v for _, v in pairs]
    p = math.prod(multiplicities) if multiplicities else 1
    u = m * p + sum((p // v) * r for r, v in pairs)
    offset_map = _seifert_offsets(multiplicities) if multiplicities else {0: 0}
    if _large_applicable(g, p, u, offset_map):
        return u * (4 ** g)
    return None


def seifert_dim_windowed(g: int, m: int, pairs: Iterable[tuple]) -> int:
    """Force the truncated-cone evaluation even in the large regime."""
    pairs = [(int(r), int(v)) for r, v in pairs]
    deg = Fraction(m) + sum(Fraction(r, v) for r, v in pairs)
    if deg == 0:
        raise PreconditionError("orbifold degree 0 unsupported")
    if deg < 0:
        m, pairs = -m, [(-r, v) for r, v in pairs]
    multiplicities = [v for _, v in pairs]
    p = math.prod(multiplicities) if multiplicities else 1
    u = m * p + sum((p // v) * r for r, v in pairs)
    offset_map = _seifert_offsets(multiplicities) if multiplicities else {0: 0}
    return _cone_dim_exterior(g, p, u, offset_map)
