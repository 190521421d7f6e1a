"""Finite models of instanton knot homology.

A model is a graded space with two anticommuting differentials, one raising
the Alexander grading and one lowering it.  Thin models (one staircase plus
squares) are synthesized from a symmetric Alexander polynomial and a tau
invariant; arbitrary models can be supplied explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .linalg import (
    GradedSpace,
    Generator,
    Homology,
    LinearAlgebraError,
    SparseExactMap,
    homology,
    sparse_map,
    space,
)


class ModelError(Exception):
    """A knot model violates its structural contract or cannot be built."""


# Laurent polynomials are dicts power -> integer coefficient (true units).
Poly = dict


def poly_from_pairs(pairs: Iterable[tuple]) -> Poly:
    out: Poly = {}
    for coef, power in pairs:
        if coef:
            out[int(power)] = out.get(int(power), 0) + int(coef)
    return {p: c for p, c in out.items() if c}


def poly_to_pairs(poly: Poly) -> tuple:
    return tuple(sorted(((c, p) for p, c in poly.items()), key=lambda t: -t[1]))


def poly_str(poly: Poly) -> str:
    if not poly:
        return "0"
    parts = []
    for p in sorted(poly, reverse=True):
        c = poly[p]
        if p == 0:
            parts.append(str(c))
            continue
        term = "t" if p == 1 else f"t^{p}"
        if abs(c) == 1:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(f"{c}*{term}")
    return "+".join(parts).replace("+-", "-")


def poly_norm(poly: Poly) -> int:
    """Sum of absolute values of the coefficients."""
    return sum(abs(c) for c in poly.values())


def staircase_polynomial(tau: int) -> Poly:
    """Alternating-sign polynomial of span 2|tau| contributed by a staircase."""
    return {i: (-1) ** (abs(tau) - i) for i in range(-abs(tau), abs(tau) + 1)}


@dataclass(frozen=True)
class StaircaseSpec:
    l: int


@dataclass(frozen=True)
class SquareSpec:
    s: int      # center grading (true units)
    sign: int   # contribution sign in the Alexander polynomial decomposition


@dataclass(frozen=True)
class KnotComplex:
    space: GradedSpace
    d_plus: SparseExactMap
    d_minus: SparseExactMap
    genus: int
    tau: int
    order_p: int = 1
    meta: tuple = ()  # sorted (key, value) pairs: name, delta, ...

    def meta_dict(self) -> dict:
        return dict(self.meta)

    @property
    def name(self) -> str:
        return self.meta_dict().get("name", "<unnamed>")

    @property
    def dim(self) -> int:
        return self.space.dim

    def delta(self) -> Optional[Poly]:
        pairs = self.meta_dict().get("delta")
        return poly_from_pairs(pairs) if pairs is not None else None


def _meta(name: Optional[str], delta: Optional[Poly]) -> tuple:
    items = []
    if name is not None:
        items.append(("name", name))
    if delta is not None:
        items.append(("delta", poly_to_pairs(delta)))
    return tuple(sorted(items))


def chi_graded(K: KnotComplex) -> Poly:
    """Graded Euler characteristic: signed generator count per true grading."""
    out: Poly = {}
    for g in K.space.generators:
        p = Fraction(g.alex, 2)
        if p.denominator != 1:
            raise ModelError(f"generator {g.gid!r} sits at a half-integer grading")
        key = int(p)
        out[key] = out.get(key, 0) + (-1) ** g.z2
    return {p: c for p, c in out.items() if c}


def build_staircase(l: int, name: Optional[str] = None) -> KnotComplex:
    """Staircase model with 2|l|+1 generators; first generator at grading -l.

    For l > 0 the even-index generators map up (d+) and down (d-) along the
    chain; for l <= 0 the odd-index generators do.  Either way the lowering
    differential has one surviving class at grading l and the raising one at
    grading -l.
    """
    frag = staircase_fragment(l, prefix="a")
    sp = space(frag["generators"])
    dp = sparse_map(sp, sp, frag["d_plus"])
    dm = sparse_map(sp, sp, frag["d_minus"])
    delta = staircase_polynomial(l)
    return KnotComplex(sp, dp, dm, genus=abs(l), tau=l,
                       meta=_meta(name or f"staircase({l})", delta))


def staircase_fragment(l: int, prefix: str = "a") -> dict:
    n = 2 * abs(l) + 1
    gens = []
    dplus = []
    dminus = []
    for k in range(1, n + 1):
        grading = -l + (k - 1) if l > 0 else -l - (k - 1)
        gens.append((f"{prefix}{k}", 2 * grading, (k - 1) % 2))
    if l > 0:
        for i in range(1, l + 1):
            dplus.append((f"{prefix}{2 * i + 1}", f"{prefix}{2 * i}", 1))
            dminus.append((f"{prefix}{2 * i - 1}", f"{prefix}{2 * i}", 1))
    elif l < 0:
        for i in range(1, -l + 1):
            dminus.append((f"{prefix}{2 * i}", f"{prefix}{2 * i - 1}", 1))
            dplus.append((f"{prefix}{2 * i}", f"{prefix}{2 * i + 1}", 1))
    return {"generators": gens, "d_plus": dplus, "d_minus": dminus}


def build_square(s: int, sign: int, prefix: str = "q") -> dict:
    """Four-generator fragment centered at grading s.

    Arrows: d+(a)=c, d-(a)=b, d+(b)=d, d-(c)=-d; the -1 makes the two
    differentials anticommute.  ``sign`` records the fragment's contribution
    sign in the Alexander polynomial decomposition and fixes the Z/2 grading
    placement.
    """
    if sign not in (-1, 1):
        raise ModelError("square sign must be +1 or -1")
    z = 0 if sign == -1 else 1
    gens = [
        (f"{prefix}a", 2 * s, z),
        (f"{prefix}b", 2 * (s - 1), 1 - z),
        (f"{prefix}c", 2 * (s + 1), 1 - z),
        (f"{prefix}d", 2 * s, z),
    ]
    dplus = [(f"{prefix}c", f"{prefix}a", 1), (f"{prefix}d", f"{prefix}b", 1)]
    dminus = [(f"{prefix}b", f"{prefix}a", 1), (f"{prefix}d", f"{prefix}c", -1)]
    return {"generators": gens, "d_plus": dplus, "d_minus": dminus}


def assemble(staircase: StaircaseSpec, squares: Iterable[SquareSpec],
             name: Optional[str] = None, delta: Optional[Poly] = None,
             genus: Optional[int] = None) -> KnotComplex:
    """Direct sum of one staircase and any number of squares."""
    squares = list(squares)
    frag = staircase_fragment(staircase.l)
    gens = list(frag["generators"])
    dplus = list(frag["d_plus"])
    dminus = list(frag["d_minus"])
    for i, sq in enumerate(squares):
        f = build_square(sq.s, sq.sign, prefix=f"q{i}")
        gens.extend(f["generators"])
        dplus.extend(f["d_plus"])
        dminus.extend(f["d_minus"])
    sp = space(gens)
    g = max([abs(staircase.l)] + [abs(sq.s) + 1 for sq in squares])
    if genus is not None and genus != g:
        raise ModelError(f"assembled genus {g} conflicts with requested genus {genus}")
    if delta is None:
        delta = staircase_polynomial(staircase.l)
        for sq in squares:
            for p, c in {sq.s + 1: sq.sign, sq.s: -2 * sq.sign, sq.s - 1: sq.sign}.items():
                delta[p] = delta.get(p, 0) + c
        delta = {p: c for p, c in delta.items() if c}
    return KnotComplex(sp, sparse_map(sp, sp, dplus), sparse_map(sp, sp, dminus),
                       genus=g, tau=staircase.l, meta=_meta(name, delta))


def thin_decomposition(delta: Poly, tau: int) -> tuple:
    """Split a symmetric Alexander polynomial into a staircase and squares.

    Normalizes the polynomial so it evaluates to +1 at t=1, removes the
    staircase part for the given tau, then greedily peels square
    contributions sign * (t^(s+1) - 2 t^s + t^(s-1)) from the top degree
    down.  Rejects input that cannot decompose without coefficient
    cancellation (total dimension must equal the coefficient norm).
    """
    delta = {p: c for p, c in delta.items() if c}
    for p, c in delta.items():
        if delta.get(-p, 0) != c:
            raise ModelError(f"Alexander polynomial is not symmetric: coefficient {c} at t^{p} "
                             f"but {delta.get(-p, 0)} at t^{-p}")
    at_one = sum(delta.values())
    if at_one == -1:
        delta = {p: -c for p, c in delta.items()}
    elif at_one != 1:
        raise ModelError(f"Alexander polynomial evaluates to {at_one} at t=1, expected +1 or -1")
    degree = max((abs(p) for p in delta), default=0)
    if abs(tau) > degree:
        raise ModelError(f"tau = {tau} exceeds the polynomial degree span {degree}")
    norm = poly_norm(delta)
    quads, rem = divmod(norm - 2 * abs(tau) - 1, 4)
    if rem != 0 or quads < 0:
        raise ModelError(
            f"not a thin complex: coefficient norm {norm} is incompatible with tau = {tau}")
    residual = dict(delta)
    for p, c in staircase_polynomial(tau).items():
        residual[p] = residual.get(p, 0) - c
    residual = {p: c for p, c in residual.items() if c}
    squares = []
    while residual:
        top = max(residual)
        if len(squares) >= quads or top - 1 < 1 - degree:
            raise ModelError("not a thin complex: residual cannot be decomposed into squares")
        sign = 1 if residual[top] > 0 else -1
        center = top - 1
        for p, c in {top: sign, center: -2 * sign, center - 1: sign}.items():
            acc = residual.get(p, 0) - c
            if acc:
                residual[p] = acc
            else:
                residual.pop(p, None)
        squares.append(SquareSpec(center, sign))
    if len(squares) != quads:
        raise ModelError("not a thin complex: residual cannot be decomposed into squares")
    return StaircaseSpec(tau), tuple(sorted(squares, key=lambda q: (q.s, q.sign)))


def thin_from_alexander(delta, tau: int, name: Optional[str] = None) -> KnotComplex:
    """Model determined by a symmetric Alexander polynomial and tau."""
    if not isinstance(delta, dict):
        delta = poly_from_pairs(delta)
    stair, squares = thin_decomposition(delta, tau)
    at_one = sum(delta.values())
    normalized = delta if at_one == 1 else {p: -c for p, c in delta.items()}
    K = assemble(stair, squares, name=name, delta=normalized)
    if K.dim != poly_norm(normalized):
        raise ModelError("not a thin complex: dimension does not match the coefficient norm")
    return K


def mirror(K: KnotComplex) -> KnotComplex:
    """Mirror model: gradings negated, both differentials transposed.

    The transpose of the lowering differential raises the negated grading
    and vice versa, so the two surviving classes trade places and tau
    changes sign.
    """
    sp = GradedSpace(tuple(Generator(g.gid, -g.alex, g.z2) for g in K.space.generators))
    def flip(m: SparseExactMap) -> SparseExactMap:
        return sparse_map(sp, sp, [(src, tgt, v) for tgt, src, v in m.entries])
    delta = K.delta()
    meta = _meta(None, delta)
    nm = K.meta_dict().get("name")
    if nm is not None:
        meta = _meta(f"mirror({nm})" if not nm.startswith("mirror(") else nm[7:-1], delta)
    return KnotComplex(sp, flip(K.d_plus), flip(K.d_minus),
                       genus=K.genus, tau=-K.tau, order_p=K.order_p, meta=meta)


def homology_plus(K: KnotComplex) -> Homology:
    return homology(K.space, K.d_plus, prefix="p")


def homology_minus(K: KnotComplex) -> Homology:
    return homology(K.space, K.d_minus, prefix="m")


def compute_tau(K: KnotComplex) -> int:
    """Alexander grading of the lowering-differential survivor.

    Requires both one-differential homologies to be one-dimensional, which
    is what makes the model a knot-in-the-three-sphere model.
    """
    hm = homology_minus(K)
    hp = homology_plus(K)
    if hm.dim != 1 or hp.dim != 1:
        raise ModelError(
            f"not an S^3-knot model: homology dims are d-:{hm.dim}, d+:{hp.dim}, expected 1 and 1")
    alex_m = hm.classes[0].alex
    alex_p = hp.classes[0].alex
    if alex_m is None or alex_p is None or alex_m != -alex_p or alex_m % 2:
        raise ModelError("survivor classes are not at opposite integer gradings")
    return alex_m // 2


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    torsion_order_one: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(K: KnotComplex) -> ValidationReport:
    """Check every structural invariant; collects violations, never raises."""
    report = ValidationReport()
    sp = K.space
    shift = 2 * K.order_p

    def check_square(d: SparseExactMap, label: str):
        for gid in sp.ids:
            if d.apply(d.column(gid)):
                report.violations.append(f"{label}^2 != 0 (witness {gid})")
                return

    check_square(K.d_plus, "d+")
    check_square(K.d_minus, "d-")

    for d, label, sgn in ((K.d_plus, "d+", 1), (K.d_minus, "d-", -1)):
        for tgt, src, _ in d.entries:
            gs, gt = sp.generator(src), sp.generator(tgt)
            if gt.alex - gs.alex != sgn * shift:
                report.violations.append(
                    f"{label} shifts grading of {src} by {(gt.alex - gs.alex) / 2}, expected {sgn * K.order_p}")
                break
            if gt.z2 == gs.z2:
                report.violations.append(f"{label} does not flip the Z/2 grading on {src}")
                break

    for gid in sp.ids:
        v = K.d_plus.apply(K.d_minus.column(gid))
        w = K.d_minus.apply(K.d_plus.column(gid))
        total = dict(v)
        for r, c in w.items():
            acc = total.get(r, Fraction(0)) + c
            if acc == 0:
                total.pop(r, None)
            else:
                total[r] = acc
        if total:
            report.violations.append(f"d+d- + d-d+ != 0 (witness {gid})")
            break

    dims = sp.dims_by_grading()
    for a, n in dims.items():
        if dims.get(-a, 0) != n:
            report.violations.append(f"grading dims asymmetric: {n} at {a / 2} vs {dims.get(-a, 0)} at {-a / 2}")
            break
    top = max((abs(a) for a in dims), default=0)
    if top > 2 * K.genus:
        report.violations.append(f"generator beyond genus: |grading| {top / 2} > genus {K.genus}")
    if K.genus > 0 and dims.get(2 * K.genus, 0) < 1:
        report.violations.append(f"no generator at the top grading {K.genus}")

    delta = K.delta()
    if delta is not None:
        chi = chi_graded(K)
        neg = {p: -c for p, c in chi.items()}
        if chi != delta and neg != delta:
            report.violations.append("graded Euler characteristic does not match the attached polynomial")

    if K.order_p == 1:
        try:
            hp_dim = homology_plus(K).dim
            hm_dim = homology_minus(K).dim
        except LinearAlgebraError:
            hp_dim = hm_dim = None
        if hp_dim is not None:
            report.torsion_order_one = (hp_dim == 1)
            if hp_dim != 1 or hm_dim != 1:
                report.violations.append(
                    f"one-differential homology dims ({hp_dim}, {hm_dim}) differ from the ambient value 1")
            else:
                try:
                    t = compute_tau(K)
                    if t != K.tau:
                        report.violations.append(f"recorded tau {K.tau} differs from survivor grading {t}")
                except ModelError as exc:
                    report.violations.append(str(exc))
    return report


def graded_signature(K: KnotComplex):
    """Isomorphism signature for thin models: per-grading dims, |chi|, tau."""
    chi = chi_graded(K)
    if sum(chi.values()) < 0:
        chi = {p: -c for p, c in chi.items()}
    return (tuple(sorted(K.space.dims_by_grading().items())), tuple(sorted(chi.items())), K.tau)


# --- knot-spec text format -------------------------------------------------

def parse_knot_spec(data: dict) -> KnotComplex:
    """Build a model from the JSON-compatible knot-spec format.

    Thin form: {"name", "alexander": [[coef, power], ...], "tau"}.
    Explicit form: {"generators": [{"id", "alex", "z2"}, ...],
                    "d_plus": [[src, tgt, num, den], ...], "d_minus": [...],
                    "genus", "tau"}; "alex" is the true integer grading.
    """
    if "alexander" in data:
        delta = poly_from_pairs(data["alexander"])
        if not delta:
            raise ModelError("empty Alexander polynomial")
        return thin_from_alexander(delta, int(data["tau"]), name=data.get("name"))
    if "generators" not in data:
        raise ModelError("knot spec needs either 'alexander' or 'generators'")
    gens = [(g["id"], 2 * int(g["alex"]), int(g["z2"])) for g in data["generators"]]
    sp = space(gens)

    def load(entries) -> SparseExactMap:
        out = []
        for e in entries:
            src, tgt, num = e[0], e[1], e[2]
            den = e[3] if len(e) > 3 else 1
            out.append((tgt, src, Fraction(int(num), int(den))))
        return sparse_map(sp, sp, out)

    K = KnotComplex(sp, load(data.get("d_plus", [])), load(data.get("d_minus", [])),
                    genus=int(data["genus"]), tau=int(data["tau"]),
                    meta=_meta(data.get("name"), None))
    report = validate(K)
    if not report.ok:
        raise ModelError("invalid explicit knot model: " + "; ".join(report.violations))
    return K


def knot_spec_dict(K: KnotComplex) -> dict:
    """Serialize a model into the explicit knot-spec format."""
    return {
        "name": K.name,
        "generators": [{"id": g.gid, "alex": g.alex // 2, "z2": g.z2}
                       for g in K.space.generators],
        "d_plus": [[src, tgt, v.numerator, v.denominator] for tgt, src, v in K.d_plus.entries],
        "d_minus": [[src, tgt, v.numerator, v.denominator] for tgt, src, v in K.d_minus.entries],
        "genus": K.genus,
        "tau": K.tau,
    }
