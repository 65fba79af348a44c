"""Acceptance suite: one test per release criterion, at the stated tolerances.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion.
"""

import time
from pathlib import Path

import numpy as np

from pathsig import (
    LinearVectorField,
    bracket_expansion,
    cumsum_leadlag_level2,
    euler_cde_oracle,
    lead_lag,
    linear_cde_solve_signature,
    log_sig_dimension,
    log_signature_coords,
    lyndon_words,
    mean_var_from_sig,
    quadratic_variation,
    reparametrize_uniform,
    run_arma_experiment,
    shuffle,
    signature,
    signature_bruteforce,
    signature_of_sampled_function,
    standard_factorization,
    tensor_log,
    tensor_mul,
    time_reverse,
)
from pathsig.cli import main as cli_main
from pathsig.tensor import TruncatedTensorSeries

DATA = Path(__file__).parent / "data"
EXAMPLE_PATH = np.array([[1.0, 1.0], [3.0, 4.0], [5.0, 2.0], [8.0, 6.0]])


def report(name: str, detail: str = ""):
    print(f"PASS  {name}" + (f"  [{detail}]" if detail else ""))


def test_c01_worked_example_exactness():
    sig = signature(EXAMPLE_PATH, 2)
    sig_err = float(np.max(np.abs(sig.coeffs - [1, 7, 5, 24.5, 19, 16, 12.5])))
    log_err = float(np.max(np.abs(log_signature_coords(sig).coords - [7, 5, 1.5])))
    assert sig_err < 1e-12 and log_err < 1e-12
    best = min(
        _timed(lambda: log_signature_coords(signature(EXAMPLE_PATH, 2))) for _ in range(10)
    )
    assert best < 1e-3, f"runtime {best * 1e3:.3f} ms exceeds 1 ms"
    report(
        "worked-example exactness",
        f"sig err {sig_err:.1e}, logsig err {log_err:.1e}, {best * 1e6:.0f} us",
    )


def _timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_c02_parabolic_path_convergence():
    start = time.perf_counter()
    sig = signature_of_sampled_function(
        lambda t: (3.0 + t, (3.0 + t) ** 2), 0.0, 5.0, num_samples=2000, depth=3
    )
    elapsed = time.perf_counter() - start
    assert sig[(1,)] == 5.0 and sig[(2,)] == 55.0
    targets = {(1, 2): 475 / 3, (2, 1): 350 / 3, (2, 2): 3025 / 2, (1, 1, 1): 125 / 6}
    worst = max(abs(sig[w] - v) / abs(v) for w, v in targets.items())
    assert worst < 1e-4
    assert elapsed < 0.1, f"runtime {elapsed:.3f}s exceeds 0.1 s"
    report("parabolic-path convergence", f"worst rel err {worst:.1e}, {elapsed * 1e3:.0f} ms")


def test_c03_lead_lag_identity():
    rng = np.random.default_rng(100)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 31))
        values = rng.integers(-9, 10, size=n).astype(float)
        coords = log_signature_coords(signature(lead_lag(values), 2)).coords
        delta = values[-1] - values[0]
        expected = np.array([delta, delta, -0.5 * quadratic_variation(values)])
        worst = max(worst, float(np.max(np.abs(coords - expected))))
    assert worst < 1e-12
    fixture = log_signature_coords(signature(lead_lag([1, 4, 2, 6]), 2)).coords
    assert np.array_equal(fixture, [5.0, 5.0, -14.5])
    report("lead-lag identity", f"200 streams, worst err {worst:.1e}, fixture exact")


def test_c04_algebraic_property_suite():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = {"shuffle": 0.0, "chen": 0.0, "reverse": 0.0, "subdiv": 0.0, "translate": 0.0,
             "onedim": 0.0}
    for _ in range(500):
        dim = int(rng.integers(1, 4))
        depth = int(rng.integers(1, 5))
        pts = rng.standard_normal((int(rng.integers(2, 8)), dim))
        sig = signature(pts, depth)

        # shuffle identity on the computed signature
        if depth >= 2:
            klen = int(rng.integers(1, depth))
            mlen = int(rng.integers(1, depth - klen + 1))
            i_word = tuple(int(v) for v in rng.integers(1, dim + 1, size=klen))
            j_word = tuple(int(v) for v in rng.integers(1, dim + 1, size=mlen))
            expanded = sum(m * sig[w] for w, m in shuffle(i_word, j_word).items())
            worst["shuffle"] = max(worst["shuffle"], abs(sig[i_word] * sig[j_word] - expanded))

        # Chen identity for a random second path
        other = rng.standard_normal((int(rng.integers(2, 8)), dim))
        from pathsig import concat

        glued = signature(concat(pts, other), depth)
        prod = tensor_mul(sig, signature(other, depth))
        worst["chen"] = max(worst["chen"], _series_diff(glued, prod))

        # time-reversal inverse
        unit = TruncatedTensorSeries.unit(dim, depth)
        inv = tensor_mul(sig, signature(time_reverse(pts), depth))
        worst["reverse"] = max(worst["reverse"], _series_diff(inv, unit))

        # collinear subdivision and translation invariance
        resampled = reparametrize_uniform(pts, int(rng.integers(2, 30)))
        worst["subdiv"] = max(worst["subdiv"], _series_diff(signature(resampled, depth), sig))
        shifted = signature(pts + rng.standard_normal(dim), depth)
        worst["translate"] = max(worst["translate"], _series_diff(shifted, sig))

        # one-dimensional closed form
        line = rng.standard_normal((4, 1))
        inc = line[-1, 0] - line[0, 0]
        sig1 = signature(line, 4)
        closed = np.array([1.0, inc, inc**2 / 2, inc**3 / 6, inc**4 / 24])
        scale = np.maximum(np.abs(closed), 1.0)
        worst["onedim"] = max(
            worst["onedim"], float(np.max(np.abs(sig1.coeffs - closed) / scale))
        )
    elapsed = time.perf_counter() - start
    assert worst["shuffle"] < 1e-9
    assert worst["chen"] < 1e-12
    assert worst["reverse"] < 1e-12
    assert worst["subdiv"] < 1e-12
    assert worst["translate"] < 1e-12
    assert worst["onedim"] < 1e-12
    assert elapsed < 30.0, f"property suite took {elapsed:.1f}s"
    report(
        "algebraic property suite",
        "500 instances each: " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
        + f", {elapsed:.1f}s",
    )


def _series_diff(a, b):
    return max(float(np.max(np.abs(x - y))) for x, y in zip(a.levels, b.levels))


def test_c05_oracle_equivalence():
    rng = np.random.default_rng(102)
    words_to_check = [(1,), (2,), (1, 2), (2, 1), (1, 1, 2), (2, 1, 2)]
    errs_4000, errs_8000 = [], []
    for _ in range(20):
        pts = rng.standard_normal((int(rng.integers(2, 6)), 2))
        sig = signature(pts, 3)
        for w in words_to_check:
            exact = sig[w]
            errs_4000.append(abs(signature_bruteforce(pts, w, steps=4000) - exact))
            errs_8000.append(abs(signature_bruteforce(pts, w, steps=8000) - exact))
    max4, max8 = max(errs_4000), max(errs_8000)
    assert max4 <= 0.05
    assert max8 <= 0.6 * max4, f"expected halving, got {max8:.2e} vs {max4:.2e}"
    report("oracle equivalence", f"max err {max4:.2e} at 4000 steps, {max8:.2e} at 8000")


def test_c06_moment_recovery():
    rng = np.random.default_rng(103)
    worst_stat, worst_closed = 0.0, 0.0
    for _ in range(200):
        values = rng.standard_normal(int(rng.integers(1, 60))) * rng.uniform(0.5, 3.0)
        terms = cumsum_leadlag_level2(values)
        mean, var = mean_var_from_sig(terms.s12, terms.s21, terms.s1, values.size)
        worst_stat = max(
            worst_stat,
            abs(mean - float(np.mean(values))),
            abs(var - float(np.var(values))),
        )
        sig = signature(lead_lag(np.concatenate(([0.0], np.cumsum(values)))), 2)
        pipeline = np.array(
            [sig[(1,)], sig[(2,)], sig[(1, 1)], sig[(1, 2)], sig[(2, 1)], sig[(2, 2)]]
        )
        worst_closed = max(worst_closed, float(np.max(np.abs(np.array(terms) - pipeline))))
    assert worst_stat < 1e-9
    assert worst_closed < 1e-9
    report("moment recovery", f"stats err {worst_stat:.1e}, closed-form err {worst_closed:.1e}")


def test_c07_lyndon_basis():
    basis = lyndon_words(2, 5)
    assert len(basis.words) == 14
    assert log_sig_dimension(2, 5) == 14
    assert standard_factorization((1, 2, 1, 2, 2)) == ((1, 2), (1, 2, 2))
    rng = np.random.default_rng(104)
    worst = 0.0
    for _ in range(100):
        dim = int(rng.integers(2, 4))
        depth = int(rng.integers(2, 5))
        pts = rng.standard_normal((int(rng.integers(2, 7)), dim))
        sig = signature(pts, depth)
        coords = log_signature_coords(sig)
        log_series = tensor_log(sig)
        rebuilt = TruncatedTensorSeries.zero(dim, depth)
        for w, c in zip(coords.basis.words, coords.coords):
            for word, coef in bracket_expansion(w).items():
                idx = 0
                for letter in word:
                    idx = idx * dim + (letter - 1)
                rebuilt.levels[len(word)][idx] += c * coef
        worst = max(worst, _series_diff(rebuilt, log_series))
    assert worst < 1e-9
    report("lyndon basis", f"14 words at d=2 L=5, reconstruction err {worst:.1e}")


def test_c08_cde():
    exp_field = LinearVectorField(np.ones((1, 1, 1)))
    segment = np.array([[0.0], [1.0]])
    approx = linear_cde_solve_signature(exp_field, segment, [1.0], depth=12)
    exp_err = abs(float(approx[0]) - np.e)
    assert exp_err < 1e-8
    rng = np.random.default_rng(105)
    worst = 0.0
    for _ in range(20):
        mats = rng.standard_normal((2, 2, 2))
        mats *= 0.5 / max(np.linalg.norm(mats[0], 2), np.linalg.norm(mats[1], 2))
        field = LinearVectorField(mats)
        # short paths keep the first-order oracle bias within the tolerance
        pts = rng.standard_normal((int(rng.integers(2, 6)), 2)) * 0.2
        y0 = rng.standard_normal(2)
        sig_route = linear_cde_solve_signature(field, pts, y0, depth=8)
        oracle = euler_cde_oracle(field, pts, y0, steps=100_000)
        worst = max(worst, float(np.max(np.abs(sig_route - oracle))))
    assert worst < 1e-5
    report("cde", f"exponential err {exp_err:.1e} at L=12, oracle gap {worst:.1e} on 20 instances")


def test_c09_arma_experiment():
    start = time.perf_counter()
    target = {"S(1)", "S(2)", "S(1,2)", "S(2,1)"}
    accuracies, hits = [], 0
    for seed in range(5):
        result = run_arma_experiment(seed=seed)
        accuracies.append(result.test.accuracy)
        hits += set(result.selected_features) >= target
        assert result.train.total == 700 and result.test.total == 300
    elapsed = time.perf_counter() - start
    mean_acc = float(np.mean(accuracies))
    assert mean_acc >= 0.85, f"mean test accuracy {mean_acc:.3f} below 0.85"
    assert hits >= 3, f"selected set contained the four reported terms in only {hits}/5 seeds"
    assert elapsed < 60.0, f"experiment took {elapsed:.1f}s"
    report(
        "arma experiment",
        f"mean test acc {mean_acc:.3f}, selection hits {hits}/5, {elapsed:.0f}s",
    )


def test_c10_cli_golden_files(tmp_path):
    checks = [
        (
            ["sig", str(DATA / "two_column_stream.csv"), "--depth", "2", "--embedding", "linear"],
            "golden_sig.csv",
        ),
        (
            [
                "sig",
                str(DATA / "two_column_stream.csv"),
                "--depth",
                "2",
                "--embedding",
                "linear",
                "--log",
            ],
            "golden_sig_log.csv",
        ),
        (
            [
                "features",
                str(DATA / "row_streams.csv"),
                "--labels",
                "--standardize",
                "--depth",
                "2",
            ],
            "golden_features.csv",
        ),
    ]
    for argv, golden in checks:
        out_a = tmp_path / f"a_{golden}"
        out_b = tmp_path / f"b_{golden}"
        assert cli_main(argv + ["-o", str(out_a)]) == 0
        assert cli_main(argv + ["-o", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        assert out_a.read_bytes() == (DATA / golden).read_bytes()
    report("cli golden files", "3 fixtures byte-identical across runs and against goldens")
