"""Acceptance gate: one test per criterion, exact integer equalities only.

Each test prints a single PASS line on success; a failure raises with the
offending cases, so the suite output shows one line per criterion.
"""
import random
from fractions import Fraction

from knotsurgery import borromean, catalog, cone, crosscheck, formulas
from knotsurgery.knotcx import chi_graded, compute_tau, mirror, poly_norm, validate
from test_properties import random_thin_models


def _report(num: int, text: str, mismatches):
    assert not mismatches, f"ACCEPTANCE {num}: FAIL - {text}: {mismatches[:8]}"
    print(f"ACCEPTANCE {num}: PASS - {text}")


def test_acceptance_1_almost_lspace_anchors():
    bad = []
    anchors = {"trefoil-left": 3, "figure-eight": 3, "5_2-bar": 3, "trefoil-right": 1}
    for name, want in anchors.items():
        got = cone.surgery_dim(catalog.get_knot(name), 1, 1).dimension
        if got != want:
            bad.append(f"{name} at +1: {got} != {want}")
    verdicts = {"trefoil-left": "almost", "figure-eight": "almost", "5_2-bar": "almost",
                "trefoil-right": "lspace", "t2_5": "lspace", "t2_7": "lspace"}
    for name, want in verdicts.items():
        got = cone.almost_lspace_scan(catalog.get_knot(name)).verdict
        if got != want:
            bad.append(f"scan {name}: {got} != {want}")
    _report(1, "slope +1 anchors and scan verdicts", bad)


def test_acceptance_2_circle_bundles():
    bad = []
    for g in range(2, 5):
        for m in range(1, 2 * g + 3):
            for mm in (m, -m):
                a = borromean.circle_bundle_dim_module(g, mm)
                b = borromean.circle_bundle_dim_formula(g, mm)
                if a != b:
                    bad.append(f"(g={g}, m={mm}): module {a} != formula {b}")
                if abs(mm) >= 2 * g - 1 and a != (4 ** g) * abs(mm):
                    bad.append(f"(g={g}, m={mm}): {a} != 4^g |m|")
    for g, m, want in ((2, 3, 48), (2, 2, 34), (2, 1, 20)):
        got = borromean.circle_bundle_dim_module(g, m)
        if got != want:
            bad.append(f"spot (g={g}, m={m}): {got} != {want}")
    _report(2, "circle-bundle module pathway equals closed form", bad)


def test_acceptance_3_thin_oracle_equivalence():
    bad = []
    for K in catalog.thin_catalog():
        norm = poly_norm(K.delta())
        for p, q in crosscheck.SLOPE_GRID:
            by_cone = cone.surgery_dim(K, p, q).dimension
            by_formula = formulas.thin_surgery_formula(norm, K.tau, p, q)
            if by_cone != by_formula:
                bad.append(f"{K.name} {p}/{q}: cone {by_cone} != formula {by_formula}")
            if K.genus == 1 and q == 1 and p >= 1:
                by_ladder = cone.genus_one_positive_ladder(K, p)
                if by_ladder != by_cone:
                    bad.append(f"{K.name} {p}/1: ladder {by_ladder} != cone {by_cone}")
    _report(3, "cone, closed formula and ladder agree on the slope grid", bad)


def test_acceptance_4_large_surgery_consistency():
    bad = []
    for K in catalog.thin_catalog():
        start = max(2 * K.genus - 1, 1)
        prev = None
        for n in range(start, start + 6):
            shortcut = cone.surgery_dim(K, n, 1, pathway="large-surgery").dimension
            full = cone.build_cone_problem(K, n, 1).dimension()
            if shortcut != full:
                bad.append(f"{K.name} at {n}: shortcut {shortcut} != cone {full}")
            if prev is not None and shortcut - prev != 1:
                bad.append(f"{K.name}: dim({n}) - dim({n-1}) = {shortcut - prev} != 1")
            prev = shortcut
    _report(4, "direct-sum shortcut equals the cone, increments of one", bad)


def test_acceptance_5_zero_surgery():
    bad = []
    for K in catalog.thin_catalog():
        table = cone.zero_surgery_dims(K, span=K.genus + 2)
        for s, d in table.items():
            if abs(s) >= K.genus and d not in (0, None):
                bad.append(f"{K.name} grading {s}: dim {d} != 0")
    got = cone.zero_surgery_dims(mirror(catalog.get_knot("t2_5")))
    if got != {-1: 2, 0: 2, 1: 2}:
        bad.append(f"mirror t2_5 table {got} != {{-1: 2, 0: 2, 1: 2}}")
    _report(5, "zero-surgery support bound and the frozen mirror-(2,5) table", bad)


def test_acceptance_6_whitehead_loop():
    bad = []
    targets = {-1: "trefoil-right", 0: "unknot", 1: "figure-eight"}
    for t, name in targets.items():
        res = formulas.whitehead_double_pm1(formulas.WhDoubleSpec(t, formulas.UNKNOT_PROFILE))
        K = catalog.get_knot(name)
        want = (cone.surgery_dim(K, 1, 1).dimension, cone.surgery_dim(K, -1, 1).dimension)
        if (res.dim_plus_one, res.dim_minus_one) != want:
            bad.append(f"t={t}: ({res.dim_plus_one}, {res.dim_minus_one}) != {want}")
    for t in range(-4, 5):
        tau = formulas.whitehead_double_pm1(formulas.WhDoubleSpec(t, formulas.UNKNOT_PROFILE)).tau
        if tau != (1 if t < 0 else 0):
            bad.append(f"tau step broken at t={t}: {tau}")
    _report(6, "unknot doubles reproduce cone values; tau steps at t=0", bad)


def test_acceptance_7_property_suites():
    bad = []
    models = catalog.thin_catalog() + random_thin_models(50)
    rng = random.Random(5)
    for K in models:
        report = validate(K)
        if not report.ok:
            bad.append(f"{K.name}: {report.violations}")
            continue
        dims = K.space.dims_by_grading()
        if any(dims.get(-a, 0) != n for a, n in dims.items()):
            bad.append(f"{K.name}: asymmetric gradings")
        chi = chi_graded(K)
        if chi != K.delta() and {p: -c for p, c in chi.items()} != K.delta():
            bad.append(f"{K.name}: Euler characteristic mismatch")
        if compute_tau(K) != K.tau:
            bad.append(f"{K.name}: tau mismatch")
    for K in models:
        for p, q in ((1, 1), (-2, 1), (1, 2)):
            dim = cone.surgery_dim(K, p, q).dimension
            if dim < abs(p) or (dim - p) % 2:
                bad.append(f"{K.name} {p}/{q}: parity/bound broken ({dim})")
            if cone.surgery_dim(mirror(K), -p, q).dimension != dim:
                bad.append(f"{K.name} {p}/{q}: mirror symmetry broken")
            prob = cone.build_cone_problem(K, p, q)
            base_cone = prob.dimension()
            if base_cone != cone.build_cone_problem(K, p, q, window_margin=4).dimension():
                bad.append(f"{K.name} {p}/{q}: window instability")
            for src in list(prob.h_components)[:2]:
                c = Fraction(rng.randrange(1, 7), rng.randrange(1, 4))
                if prob.dimension(h_scale={src: c}) != base_cone:
                    bad.append(f"{K.name} {p}/{q}: scalar dependence")
    _report(7, "differential/grading/parity/stability/scalar property suites", bad)


def test_acceptance_8_seifert_gate():
    bad = []
    for g in (2, 3):
        for euler in range(-(2 * g + 1), 2 * g + 2):
            if euler == 0:
                continue
            sign = 1 if euler > 0 else -1
            pairs = [(sign, 1)] * (abs(euler) - 1)
            a = borromean.seifert_dim(g, sign, pairs)
            b = borromean.circle_bundle_dim_module(g, euler)
            if a != b:
                bad.append(f"(g={g}, euler={euler}): seifert {a} != circle {b}")
    for g, m, pairs in ((2, 3, [(1, 2)]), (3, 4, [(2, 5)]), (2, 5, [(1, 3)])):
        short = borromean.seifert_dim_large(g, m, pairs)
        full = borromean.seifert_dim_windowed(g, m, pairs)
        if short is not None and short != full:
            bad.append(f"(g={g}, m={m}, {pairs}): shortcut {short} != cone {full}")
    _report(8, "integral-multiplicity reduction and large-slope agreement", bad)
