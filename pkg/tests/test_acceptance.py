"""Acceptance criteria. Each test records one PASS/FAIL line, printed in the pytest summary."""

import math
import time

import numpy as np
import pytest

from ttosym.conjugation import lemma1_check
from ttosym.inner import AtomicMeasure, BlaschkeProduct
from ttosym.modelspace import QuadratureGrid, build_model_space
from ttosym.moebius import crofoot_report
from ttosym.sampling import (complex_gaussian, random_blaschke, random_disc_points, random_operator,
                             random_rational_samples)
from ttosym.singular_limits import (build_sequence, pointwise_limit_check, ratio_limit_check,
                                    uniform_bound_check, weak_convergence_check)
from ttosym.tto import (ModelOperator, build_tto_space, divisor_symmetry_residuals, membership_distance,
                        sarason_residual, theorem_check, zero_submultisets)

RESULTS = []

SINGLE = AtomicMeasure(((0.0, 1.0),))
THREE = AtomicMeasure(((0.0, 1.0), (2 * math.pi / 3, 0.5), (4 * math.pi / 3, 0.25)))


def record(name, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    print(RESULTS[-1])
    return ok


# suites, parameterized by grid size so that criterion 7 can rerun them ---------

def theorem_suite(M, per_degree=25, seed=1):
    rng = np.random.default_rng(seed)
    rows = []
    for n in range(2, 7):
        for trial in range(per_degree):
            u = random_blaschke(rng, n, 0.9, repeat=trial % 3 == 0)
            space = build_model_space(u, M)
            for a in dict.fromkeys(u.zeros):
                r = theorem_check(space, a)
                rows.append((n, r.dim_S, r.dim_T, r.projector_distance))
    return rows


def sarason_suite(M, seed=2):
    rng = np.random.default_rng(seed)
    rows = []
    for n in range(2, 7):
        space = build_model_space(random_blaschke(rng, n, 0.9), M)
        T = build_tto_space(space)
        for _ in range(20):
            member = T.element(complex_gaussian(rng, T.dim))
            other = ModelOperator(random_operator(rng, n), space)
            for A in (member, other):
                rows.append((n, sarason_residual(A), membership_distance(A, T)))
    return rows


def product_identity_suite(M, seed=3):
    rng = np.random.default_rng(seed)
    nodes = QuadratureGrid(M).nodes
    out = []
    for _ in range(50):
        u = random_blaschke(rng, int(rng.integers(1, 7)), 0.9, repeat=bool(rng.integers(2)))
        keep = rng.integers(2, size=u.degree).astype(bool)
        v = BlaschkeProduct(tuple(np.array(u.zeros)[keep]))
        out.append(lemma1_check(u, v, random_rational_samples(rng, nodes)))
    return out


def moebius_suite(M, trials=10, seed=4):
    rng = np.random.default_rng(seed)
    rows = []
    for n in range(1, 6):
        for trial in range(trials):
            space = build_model_space(random_blaschke(rng, n, 0.9, repeat=trial % 4 == 0), M)
            a = complex(random_disc_points(rng, 1, 0.7)[0])
            rows.append(crofoot_report(space, a))
    return rows


def divisor_suite(M, per_degree=5, seed=5):
    rng = np.random.default_rng(seed)
    out = []
    for n in range(1, 6):
        for trial in range(per_degree):
            u = random_blaschke(rng, n, 0.9, repeat=trial % 2 == 1)
            space = build_model_space(u, M)
            T = build_tto_space(space)
            A = T.element(complex_gaussian(rng, T.dim))
            out.extend(r for _, r in divisor_symmetry_residuals(A, zero_submultisets(u)))
    return out


def arc_suite(M, nu):
    seq = build_sequence(nu, 0.0, 400)
    return (pointwise_limit_check(seq), ratio_limit_check(seq), uniform_bound_check(seq, nu),
            weak_convergence_check(seq, np.ones_like, nu, M=M))


# criteria -----------------------------------------------------------------------

def test_c1_main_theorem():
    t0 = time.perf_counter()
    rows = theorem_suite(2048)
    elapsed = time.perf_counter() - t0
    dims_ok = all(dS == dT == 2 * n - 1 for n, dS, dT, _ in rows)
    worst = max(d for *_, d in rows)
    ok = dims_ok and worst < 1e-7 and elapsed < 60
    assert record("C1 two-symmetry characterization", ok,
                  f"{len(rows)} (u, a) pairs, dims 2n-1: {dims_ok}, max projector distance {worst:.2e} "
                  f"(< 1e-7), {elapsed:.1f}s (< 60s)")


def test_c2_sarason_oracle_equivalence():
    rows = sarason_suite(2048)
    members = [s for _, s, d in rows if d < 1e-7]
    others = [s for _, s, d in rows if d >= 1e-7]
    agree = all((s < 1e-9) == (d < 1e-7) for _, s, d in rows)
    gap = min(others) / max(members)
    ok = agree and len(members) == len(others) == 100 and gap >= 1e3
    assert record("C2 Sarason criterion vs membership oracle", ok,
                  f"{len(members)} members max {max(members):.2e}, {len(others)} non-members min "
                  f"{min(others):.2e}, gap {gap:.1e} (>= 1e3), agreement {agree}")


def test_c3_conjugation_product_identity():
    res = product_identity_suite(2048)
    ok = max(res) < 1e-10
    assert record("C3 C_u C_{u/v} f = v f", ok, f"50 triples, max residual {max(res):.2e} (< 1e-10)")


def test_c4_moebius_unitary():
    rows = moebius_suite(2048)
    worst = max(max(r.unitarity, r.intertwining, r.transport) for r in rows)
    dims = all(r.dim_source == r.dim_target for r in rows)
    ok = worst < 1e-7 and dims
    assert record("C4 omega_a unitarity/intertwining/transport", ok,
                  f"{len(rows)} trials, max residual {worst:.2e} (< 1e-7), dims preserved {dims}")


def test_c5_divisor_compressions():
    t0 = time.perf_counter()
    res = divisor_suite(2048)
    elapsed = time.perf_counter() - t0
    ok = max(res) < 1e-9 and elapsed < 30
    assert record("C5 divisor compressions of TTOs are C_v-symmetric", ok,
                  f"{len(res)} compressions, max residual {max(res):.2e} (< 1e-9), {elapsed:.1f}s (< 30s)")


@pytest.mark.parametrize("label, nu", [("single", SINGLE), ("three", THREE)])
def test_c6_arc_sequence_decay_and_bound(label, nu):
    pw, ra, ub, _ = arc_suite(4096, nu)
    slopes_ok = abs(pw.decay_slope + 0.5) <= 0.1 and abs(ra.decay_slope + 0.5) <= 0.1
    bound = 6 * math.exp(3 * nu.total_mass) + 1
    ok = slopes_ok and ub.statistic <= bound
    assert record(f"C6 arc-sequence decay + uniform bound ({label} atom)", ok,
                  f"slopes pointwise {pw.decay_slope:.3f}, ratio {ra.decay_slope:.3f} (-0.5 +- 0.1); "
                  f"uniform stat {ub.statistic:.3f} <= {bound:.1f}")


@pytest.mark.parametrize("label, nu", [("single", SINGLE), ("three", THREE)])
def test_c6_arc_sequence_weak_pointwise_targets(label, nu):
    *_, wk = arc_suite(4096, nu)
    mass_N = 1 / math.sqrt(400)
    ok = wk.final_pointwise_max <= 5 * mass_N
    assert record(f"C6 weak-limit pointwise targets ({label} atom)", ok,
                  f"max |h_N(z) - (z+eta)g(z)| = {wk.final_pointwise_max:.3f} vs 5*mass_N = {5 * mass_N:.3f} "
                  f"on the fixed disc grid; sup_n ||h_n|| = {wk.sup_norm:.3f}")


def test_c7_grid_doubling():
    diffs, decisions = {}, True

    a, b = theorem_suite(2048, per_degree=5), theorem_suite(4096, per_degree=5)
    decisions &= [r[:3] for r in a] == [r[:3] for r in b]
    diffs["theorem"] = max(abs(x[3] - y[3]) for x, y in zip(a, b))

    a, b = sarason_suite(2048), sarason_suite(4096)
    decisions &= [(s < 1e-9, d < 1e-7) for _, s, d in a] == [(s < 1e-9, d < 1e-7) for _, s, d in b]
    diffs["sarason"] = max(max(abs(x[1] - y[1]), abs(x[2] - y[2])) for x, y in zip(a, b))

    diffs["identity"] = max(abs(x - y) for x, y in zip(product_identity_suite(2048), product_identity_suite(4096)))

    a, b = moebius_suite(2048, trials=3), moebius_suite(4096, trials=3)
    decisions &= [(r.dim_source, r.dim_target) for r in a] == [(r.dim_source, r.dim_target) for r in b]
    diffs["moebius"] = max(max(abs(x.unitarity - y.unitarity), abs(x.intertwining - y.intertwining),
                               abs(x.transport - y.transport)) for x, y in zip(a, b))

    diffs["divisors"] = max(abs(x - y) for x, y in zip(divisor_suite(2048, 2), divisor_suite(4096, 2)))

    for nu in (SINGLE, THREE):
        x, y = arc_suite(2048, nu), arc_suite(4096, nu)
        diffs["arcs"] = max(diffs.get("arcs", 0.0),
                              abs(x[0].final_max - y[0].final_max), abs(x[1].final_max - y[1].final_max),
                              abs(x[2].statistic - y[2].statistic),
                              abs(x[3].final_pointwise_max - y[3].final_pointwise_max),
                              abs(x[3].norm_gap - y[3].norm_gap))

    worst = max(diffs.values())
    ok = worst < 1e-9 and decisions
    detail = ", ".join(f"{k} {v:.1e}" for k, v in diffs.items())
    assert record("C7 grid doubling 2048 -> 4096", ok, f"max residual change {worst:.1e} (< 1e-9) [{detail}]; "
                  f"identical dimension decisions {decisions}")
