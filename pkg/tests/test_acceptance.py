"""Exit criteria of the package, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import simpson

from gldepth import io as gio
from gldepth.cli import main
from gldepth.depths import (GLOBAL_METHODS, LOCAL_METHODS, METHODS, DepthParams,
                            Method, all_depths, depth, fmd, fsd, hmd, kfsd, mbd)
from gldepth.evaluate import corr_matrix
from gldepth.sample import FunctionalSample, make_grid
from gldepth.simulate import ModelSpec, benchmark_density, generate

import naive

STUDY_SEED = 1
NAMES = [m.value.lower() for m in METHODS]


def random_sample(rng, n_range, N_range):
    n = int(rng.integers(*n_range))
    N = int(rng.integers(*N_range))
    t = np.cumsum(rng.uniform(0.05, 1.0, N))
    Y = rng.normal(scale=rng.uniform(0.2, 5.0), size=(n, N))
    Y += rng.normal(size=(1, N)) * rng.uniform(0, 3)
    return FunctionalSample(Y, make_grid(t))


# 1 -------------------------------------------------------------------------

def test_c01_oracle_equivalence(criterion):
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(200):
        s = random_sample(rng, (2, 7), (2, 9))
        Y, t = s.values.tolist(), list(s.grid.points)
        got = all_depths(s)
        expected = naive.all_leave_in(Y, t)
        for m in METHODS:
            worst = max(worst, np.max(np.abs(got[m].values - expected[m.value])))
        # an outside query, bandwidth from the sample alone
        x = rng.normal(size=len(t)) * 2
        h = naive.bandwidth(Y, naive.trapezoid_weights(t))
        outside = {
            Method.FSD: naive.fsd(list(x), Y, t), Method.FMD: naive.fmd(list(x), Y, t),
            Method.MBD: naive.mbd(list(x), Y, t), Method.KFSD: naive.kfsd(list(x), Y, t, h),
            Method.HMD: naive.hmd(list(x), Y, t, h)}
        for m, v in outside.items():
            worst = max(worst, abs(depth(s, x, DepthParams(m)).values[0] - v))
    criterion("1 oracle equivalence (200 samples, n<=6, N<=8, tol 1e-12)",
              worst <= 1e-12, f"max abs deviation {worst:.2e}")


# 2 -------------------------------------------------------------------------

def test_c02_hand_values(criterion):
    g = make_grid([0.0, 0.5, 1.0])

    def consts(*c):
        return FunctionalSample(np.outer(c, np.ones(3)), g)

    def cx(c):
        return np.full(3, float(c))

    h = 0.7
    e = math.exp
    kfsd_pair = 1 - math.sqrt(2 + 2 * (1 + e(-2) - 2 * e(-0.5)) / (2 * (1 - e(-0.5)))) / 2
    cases = {
        "FSD {0,3,4} at 1": (fsd(consts(0, 3, 4), cx(1)), 2 / 3),
        "MBD {0,2,3} at 1": (mbd(consts(0, 2, 3), cx(1)), 2 / 3),
        "FMD {0,2,3} at 2": (fmd(consts(0, 2, 3), cx(2)), 5 / 6),
        "KFSD n=1": (kfsd(consts(3), cx(1), DepthParams("KFSD", bandwidth_override=h)), 0.0),
        "KFSD symmetric pair": (kfsd(consts(-h, h), cx(0),
                                     DepthParams("KFSD", bandwidth_override=h)), kfsd_pair),
        "HMD distances h,2h": (hmd(consts(h, 2 * h), cx(0),
                                   DepthParams("HMD", bandwidth_override=h)),
                               (e(-0.5) + e(-2)) / 2),
    }
    errs = {k: abs(a - b) for k, (a, b) in cases.items()}
    worst = max(errs, key=errs.get)
    criterion("2 hand-computed values (tol 1e-9)", errs[worst] <= 1e-9,
              f"worst {worst}: {errs[worst]:.1e}; KFSD pair={kfsd_pair:.7f}, "
              f"HMD={(e(-0.5) + e(-2)) / 2:.7f}")


# 3 -------------------------------------------------------------------------

def test_c03_invariance_suite(criterion):
    rng = np.random.default_rng(303)
    problems = []
    for trial in range(1000):
        s = random_sample(rng, (3, 13), (3, 11))
        Y = s.values
        base = all_depths(s)
        for m, r in base.items():
            v = r.values
            lo_ok = np.all(v > 0) if m is Method.HMD else np.all(v >= 0)
            if not (lo_ok and np.all(v <= 1)):
                problems.append((trial, "range", m))
        shift = rng.normal(size=Y.shape[1]) * rng.uniform(0.1, 5)
        moved = all_depths(FunctionalSample(Y + shift, s.grid))
        for m in METHODS:
            d = np.max(np.abs(moved[m].values - base[m].values))
            if (m in (Method.FMD, Method.MBD) and d != 0) or d > 1e-10:
                problems.append((trial, "translation", m, d))
        perm = rng.permutation(Y.shape[0])
        permuted = all_depths(s.take(perm))
        for m in METHODS:
            if not np.array_equal(permuted[m].values, base[m].values[perm]):
                problems.append((trial, "permutation", m))
        warped = all_depths(FunctionalSample(np.exp(Y / np.abs(Y).max()) * 3, s.grid))
        for m in (Method.FMD, Method.MBD):
            if not np.array_equal(warped[m].values, base[m].values):
                problems.append((trial, "monotone", m))
    criterion("3 invariance suite (range, translation, permutation, monotone; 1000 trials)",
              not problems, f"{len(problems)} violations {problems[:3]}")


# 4-7, 9: full-scale study through the command line -----------------------

STUDY_ARGS = ["study", "--models", "1,2,3,4", "--reps", "100", "--n", "100",
              "--seed", str(STUDY_SEED)]


@pytest.fixture(scope="module")
def study(tmp_path_factory):
    d = tmp_path_factory.mktemp("study")
    start = time.perf_counter()
    assert main([*STUDY_ARGS, "--output", str(d / "a.csv"), "--svg", str(d / "svg")]) == 0
    elapsed = time.perf_counter() - start
    header, rows = gio.read_table(d / "a.csv")
    table = np.array(rows, dtype=float)
    coefs = {int(m): table[table[:, 0] == m][:, 2:] for m in (1, 2, 3, 4)}
    medians = {m: dict(zip(METHODS, np.median(c, axis=0))) for m, c in coefs.items()}
    return {"dir": d, "elapsed": elapsed, "coefs": coefs, "medians": medians,
            "header": header}


def fmt_medians(med):
    return ", ".join(f"{m}={v:.3f}" for m, v in med.items())


def test_c04_model1(study, criterion):
    med = study["medians"][1]
    ok = all(v > 0.75 for v in med.values())
    ok &= all(med[g] >= med[loc] - 0.05 for g in GLOBAL_METHODS for loc in LOCAL_METHODS)
    ok &= study["coefs"][1].shape == (100, 5)
    ok &= study["elapsed"] < 600
    criterion("4 model 1: medians > 0.75, global >= local - 0.05, < 10 min", ok,
              f"{fmt_medians(med)}; all four models took {study['elapsed']:.1f}s")


def test_c05_model2(study, criterion):
    med = study["medians"][2]
    spread = max(med.values()) - min(med.values())
    criterion("5 model 2: all pairwise median gaps <= 0.10", spread <= 0.10,
              f"{fmt_medians(med)}; largest gap {spread:.3f}")


def test_c06_model3(study, criterion):
    med = study["medians"][3]
    local = min(med[m] for m in LOCAL_METHODS)
    glob = max(med[m] for m in GLOBAL_METHODS)
    criterion("6 model 3: min local median > max global median", local > glob,
              f"{fmt_medians(med)}")


def test_c07a_model4_medians(study, criterion):
    med = study["medians"][4]
    ok = med[Method.KFSD] > 0 and med[Method.HMD] > 0
    ok &= all(-0.25 <= med[m] <= 0.25 for m in GLOBAL_METHODS)
    criterion("7a model 4: local medians > 0, global medians in [-0.25, 0.25]", ok,
              fmt_medians(med))


def test_c07b_model4_global_spread(study, criterion):
    c = study["coefs"][4]
    detail, ok = [], True
    for m in GLOBAL_METHODS:
        col = c[:, METHODS.index(m)]
        has_both = col.min() < -0.3 and col.max() > 0.3
        ok &= has_both
        detail.append(f"{m} range [{col.min():.3f}, {col.max():.3f}]")
    criterion("7b model 4: each global depth has coefficients < -0.3 and > 0.3", ok,
              "; ".join(detail))


# 8 -------------------------------------------------------------------------

def test_c08_two_cluster_corr_pattern(criterion):
    sim = generate(ModelSpec(4, n=100), 8)
    c = corr_matrix(sim.sample)
    k, h = METHODS.index(Method.KFSD), METHODS.index(Method.HMD)
    gl = [METHODS.index(m) for m in GLOBAL_METHODS]
    ok = all(c[k, h] > c[k, j] for j in gl)
    within = min(c[i, j] for i in gl for j in gl if i < j)
    across = max(c[i, j] for i in gl for j in (k, h))
    ok &= within > across
    criterion("8 two-cluster Spearman pattern (local-local and global-global > across)",
              ok, f"KFSD-HMD={c[k, h]:.3f}, min global-global={within:.3f}, "
              f"max global-local={across:.3f}")


# 9 -------------------------------------------------------------------------

def test_c09_study_determinism(study, criterion):
    d = study["dir"]
    assert main([*STUDY_ARGS, "--output", str(d / "b.csv")]) == 0
    same = ((d / "a.csv").read_bytes() == (d / "b.csv").read_bytes()
            and (d / "a_summary.csv").read_bytes() == (d / "b_summary.csv").read_bytes())
    criterion("9 study CSVs byte-identical across runs", same)


# 10 ------------------------------------------------------------------------

def test_c10_densities_and_moments(criterion):
    x = np.linspace(-20, 20, 100_001)
    integrals = {m: simpson(benchmark_density(m, x), x=x) for m in (1, 2, 3, 4)}
    ok = all(abs(v - 1) <= 1e-4 for v in integrals.values())
    n = 100_000
    means = {1: 0.0, 2: 0.0, 3: 5 * math.sqrt(1.98 / 10), 4: 0.0}
    moments = {}
    for m in (1, 2, 3, 4):
        xi = generate(ModelSpec(m, n=n), 10 + m).xi1
        moments[m] = (xi.mean(), xi.var())
        ok &= abs(xi.mean() - means[m]) <= 3 * math.sqrt(1.98 / n)
        ok &= abs(xi.var() / 1.98 - 1) <= 0.03
    criterion("10 densities integrate to 1 (1e-4); score mean/variance on target", ok,
              "integrals " + ", ".join(f"{m}:{v:.6f}" for m, v in integrals.items())
              + "; var " + ", ".join(f"{m}:{v[1]:.3f}" for m, v in moments.items()))
