"""Acceptance gate: ten go/no-go checks, one [PASS]/[FAIL] line each.

Run under pytest, or standalone for the full ten-line report:

    python3 tests/test_acceptance.py

Criterion 3 is implemented exactly as stated and is expected to fail: along
J = P_tot/(sigma2*rho) with eta > 0 the combined-decoder SINR grows like
P_tot^2/(T*rho), so the SNR per bit falls through ln2*P_tot and keeps going
to zero instead of converging to it (with eta = 0 it diverges instead).
There is no eta for which the stated 1%-and-monotone check can hold; the
closed-form value ln2*P_tot is a crossing point of the curve, not its limit.
The limit operator itself (ebn0_rho_zero_limit) still reports ln2*P_tot.
"""

import io
import math
import os
import sys
import tempfile
from contextlib import redirect_stdout

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from rederive_expected import EXPECTED  # independent mpmath re-derivation

from harqscale import (
    Regime,
    Scheme,
    SchemeParams,
    analytic_sinr,
    buffer_rate_from_quant_noise,
    eval_cc_noma,
    eval_cc_oma,
    eval_classical,
    eval_ir_oma,
    evaluate,
    fbl_rate,
    find_crossing,
    ir_quant_noise,
    make_equicorrelated_signatures,
    make_grid,
    se_curve,
    simulate_cc_noma_sinr,
)
from harqscale.cli import main as cli_main

LN2 = math.log(2.0)
SIG6 = 5e-7  # relative tolerance for 6-significant-figure agreement


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _report(num: int, ok: bool, text: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {text}")


# --------------------------------------------------------------------------- 1


def test_criterion_01_formula_spot_checks():
    p_cc = SchemeParams(rho=1.0, T=2, J=10.0, eta=1.0)
    p_ir_sum = SchemeParams(rho=1.0, T=2, J=10.0, c_buf=2.0)
    p_ir_tin = SchemeParams(rho=1.0, T=2, J=10.0, c_buf=0.1)
    metrics = {
        "classical_sum": eval_classical(p_cc, Regime.SUM_OPTIMAL),
        "classical_tin": eval_classical(p_cc, Regime.TIN),
        "cc_noma_sum": eval_cc_noma(p_cc, Regime.SUM_OPTIMAL),
        "cc_noma_tin": eval_cc_noma(p_cc, Regime.TIN),
        "cc_oma_sum": eval_cc_oma(p_cc, Regime.SUM_OPTIMAL),
        "cc_oma_tin": eval_cc_oma(p_cc, Regime.TIN),
        "ir_oma_sum": eval_ir_oma(p_ir_sum, Regime.SUM_OPTIMAL),
        "ir_oma_tin": eval_ir_oma(p_ir_tin, Regime.TIN),
    }
    worst = 0.0
    for key, m in metrics.items():
        worst = max(worst, rel(m.se, EXPECTED[key + "_se"]))
        worst = max(worst, rel(m.ebn0_linear, EXPECTED[key + "_ebn0"]))
    worst = max(worst, rel(fbl_rate(1.0, 100, 1e-3), EXPECTED["fbl_sinr1_n100_eps1e3"]))
    ok = worst < SIG6
    _report(1, ok, f"nine derived values match the re-derivation script "
                   f"(worst rel err {worst:.2e} < {SIG6:.0e})")
    assert ok


# --------------------------------------------------------------------------- 2


def test_criterion_02_tin_floors():
    worst_db = 0.0
    for sigma2 in (0.5, 1.0, 2.0):
        target_db = -1.59 + 10.0 * math.log10(sigma2)
        p = SchemeParams(rho=1e-6, T=2, J=10.0, eta=1.0, sigma2=sigma2)
        for fn in (eval_cc_noma, eval_cc_oma):
            got_db = fn(p, Regime.TIN).ebn0_db
            worst_db = max(worst_db, abs(got_db - target_db))
    ok = worst_db < 0.05
    _report(2, ok, f"TIN floors sit at -1.59 dB + 10log10(sigma2) "
                   f"(worst offset {worst_db:.4f} dB < 0.05 dB)")
    assert ok


# --------------------------------------------------------------------------- 3


def test_criterion_03_fixed_total_power_limit():
    # stated check: at fixed P_tot, the non-orthogonal sum-decoder SNR per bit
    # at rho = 1e-6 is within 1% of ln2 * P_tot, and halving rho twice brings
    # it monotonically closer (eta = 1, T = 2, sigma2 = 1, J = P_tot / rho)
    detail = []
    ok = True
    for p_tot in (1.0, 10.0):
        target = LN2 * p_tot
        errs = []
        for rho in (1e-6, 5e-7, 2.5e-7):
            p = SchemeParams(rho=rho, T=2, J=p_tot / rho, eta=1.0)
            errs.append(rel(eval_cc_noma(p, Regime.SUM_OPTIMAL).ebn0_linear, target))
        detail.append(f"P_tot={p_tot:g}: rel err {errs[0]:.1%} at rho=1e-6, "
                      f"then {errs[1]:.1%}, {errs[2]:.1%}")
        ok = ok and errs[0] < 0.01 and errs[0] > errs[1] > errs[2]
    _report(3, ok, "vanishing-SNR fixed-power limit ln2*P_tot -- " + "; ".join(detail))
    assert ok, (
        "expected failure: with J = P_tot/(sigma2*rho) the combined SINR grows "
        "like P_tot^2/(T*rho) for eta > 0, so log2(1+SINR) diverges and the "
        "SNR per bit P_tot/log2(1+SINR) falls through ln2*P_tot toward 0 "
        "instead of converging (eta = 0 sends it to infinity instead); "
        "ln2*P_tot is where the curve crosses, not where it ends up -- "
        + "; ".join(detail)
    )


# --------------------------------------------------------------------------- 4


def test_criterion_04_ir_buffer_limits():
    worst = 0.0
    for T in (2, 3):
        p = SchemeParams(rho=1.0, T=T, J=10.0, c_buf=1e4)
        tin_ir = eval_ir_oma(p, Regime.TIN).ebn0_linear
        tin_cl = eval_classical(p, Regime.TIN).ebn0_linear
        worst = max(worst, rel(tin_ir, tin_cl))
        sum_ir = eval_ir_oma(p, Regime.SUM_OPTIMAL).ebn0_linear
        single = p.J * p.sigma2 * p.rho / math.log2(1.0 + p.rho * p.J)
        worst = max(worst, rel(sum_ir, single))
    ok = worst < 1e-6
    _report(4, ok, f"huge-buffer IR matches the no-quantization forms "
                   f"(worst rel err {worst:.2e} < 1e-6)")
    assert ok


# --------------------------------------------------------------------------- 5


def test_criterion_05_buffer_round_trip():
    worst = 0.0
    for horizon in (2, 3):
        for rho in (0.1, 0.5, 1.0, 2.0, 10.0):
            for c_buf in (0.5, 1.0, 2.0, 5.0, 10.0):
                p = SchemeParams(rho=rho, T=3, J=10.0, c_buf=c_buf)
                q = ir_quant_noise(p, Regime.SUM_OPTIMAL, 1, horizon)
                rate = buffer_rate_from_quant_noise(p, q.value)
                worst = max(worst, rel(rate, c_buf / horizon))
    ok = worst < 1e-12
    _report(5, ok, f"quantization noise to buffer rate round-trip over the "
                   f"5x5 (rho, c_buf) grid (worst rel err {worst:.2e} < 1e-12)")
    assert ok


# --------------------------------------------------------------------------- 6


def test_criterion_06_monte_carlo_oracle():
    worst = 0.0
    for eta in (0.0, 0.05, 0.1, 0.3):
        for T in (1, 2, 4):
            for j_t in (2, 5, 10):
                sigs = make_equicorrelated_signatures(64, j_t, eta)
                est = simulate_cc_noma_sinr(
                    sigs, 1.0, 1.0, T, [range(j_t)] * T, 0, 2000, seed=1)
                ana = analytic_sinr(Scheme.CC_NOMA, 1.0, T, [j_t] * T, eta)
                worst = max(worst, rel(est.mean, ana))
    ok = worst < 0.05
    _report(6, ok, f"simulated SINR matches the closed form on the 36-cell "
                   f"grid (worst rel err {worst:.1%} < 5%)")
    assert ok


# --------------------------------------------------------------------------- 7


def test_criterion_07_single_slot_coincidence():
    grid = make_grid(1e-3, 1e2, 20)
    ok = True
    for rho in grid:
        p = SchemeParams(rho=rho, T=1, J=10.0, c_buf=10.0)
        for regime in Regime:
            m = eval_classical(p, regime)
            ok = ok and m == eval_cc_oma(p, regime) and m == eval_ir_oma(p, regime)
    _report(7, ok, "classical, orthogonal chase, and incremental-redundancy "
                   "evaluators coincide exactly at T=1 on a 20-point rho grid")
    assert ok


# --------------------------------------------------------------------------- 8


def test_criterion_08_trend_suite():
    def se_of(scheme, regime, T):
        p = SchemeParams(rho=1.0, T=T, J=10.0, eta=1.0, c_buf=10.0 * T)
        return evaluate(scheme, regime, p).se

    sum_noma = [se_of(Scheme.CC_NOMA, Regime.SUM_OPTIMAL, T) for T in (1, 2, 3)]
    tin_noma = [se_of(Scheme.CC_NOMA, Regime.TIN, T) for T in (1, 2, 3)]
    tin_oma = [se_of(Scheme.CC_OMA, Regime.TIN, T) for T in (1, 2, 3)]
    ok = sum_noma[0] > sum_noma[1] > sum_noma[2]
    ok = ok and tin_noma[0] < tin_noma[1] < tin_noma[2]
    ok = ok and tin_oma[0] < tin_oma[1] < tin_oma[2]

    grid = make_grid(1e-3, 1e2, 120)
    p = SchemeParams(rho=1.0, T=2, J=10.0)
    crossing = find_crossing(
        se_curve(Scheme.CC_OMA, Regime.SUM_OPTIMAL, p, grid),
        se_curve(Scheme.CC_OMA, Regime.TIN, p, grid),
    )
    ok = ok and crossing is not None
    _report(8, ok, "retransmission trends hold and the orthogonal sum/TIN "
                   f"curves cross (at {crossing:.2f} dB)" if crossing is not None
                   else "retransmission trends hold but no sum/TIN crossing found")
    assert ok


# --------------------------------------------------------------------------- 9


def test_criterion_09_fbl_sanity():
    ok = True
    worst_gap = 0.0
    for sinr in (0.01, 0.1, 1.0):
        cap = 0.5 * math.log2(1.0 + sinr)
        for n in (100, 10_000, 100_000_000):
            for eps in (1e-3, 1e-5):
                r = fbl_rate(sinr, n, eps)
                ok = ok and r < cap
                if n == 100_000_000:
                    worst_gap = max(worst_gap, abs(r - cap))
    ok = ok and worst_gap < 1e-3
    _report(9, ok, f"finite-blocklength rate stays below capacity and closes "
                   f"to within {worst_gap:.2e} < 1e-3 at n=1e8")
    assert ok


# -------------------------------------------------------------------------- 10


def test_criterion_10_cli_determinism():
    curve_args = ["curve", "--scheme", "cc-noma", "--regime", "sum", "--rho", "1",
                  "--T", "2", "--J", "10", "--eta", "1", "--grid-min", "0.001",
                  "--grid-max", "100", "--grid-points", "60"]
    validate_args = ["validate", "--eta", "0.1", "--T", "2", "--users-per-slot",
                     "5", "--rho", "1", "--trials", "2000", "--seed", "7"]

    def run_validate(workers: int) -> bytes:
        buf = io.StringIO()
        with redirect_stdout(buf):
            rc = cli_main([*validate_args, "--workers", str(workers)])
        assert rc == 0
        return buf.getvalue().encode()

    with tempfile.TemporaryDirectory() as tmp:
        blobs = []
        for i, workers in enumerate((1, 1, 4)):
            path = os.path.join(tmp, f"c{i}.csv")
            buf = io.StringIO()
            with redirect_stdout(buf):
                rc = cli_main([*curve_args, "--workers", str(workers),
                               "--output", path])
            assert rc == 0
            with open(path, "rb") as fh:
                blobs.append(fh.read())
    curves_ok = blobs[0] == blobs[1] == blobs[2]

    v = [run_validate(1), run_validate(1), run_validate(4)]
    validate_ok = v[0] == v[1] == v[2]

    ok = curves_ok and validate_ok
    _report(10, ok, "curve and validate outputs are byte-identical across "
                    "repeat runs and worker counts {1, 4}")
    assert ok


# ----------------------------------------------------------------- standalone


def _run_all() -> int:
    crits = [
        test_criterion_01_formula_spot_checks,
        test_criterion_02_tin_floors,
        test_criterion_03_fixed_total_power_limit,
        test_criterion_04_ir_buffer_limits,
        test_criterion_05_buffer_round_trip,
        test_criterion_06_monte_carlo_oracle,
        test_criterion_07_single_slot_coincidence,
        test_criterion_08_trend_suite,
        test_criterion_09_fbl_sanity,
        test_criterion_10_cli_determinism,
    ]
    failures = 0
    for fn in crits:
        try:
            fn()
        except AssertionError:
            failures += 1
    print(f"{len(crits) - failures}/{len(crits)} acceptance criteria passed")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(_run_all())
