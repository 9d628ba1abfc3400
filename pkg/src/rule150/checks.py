"""Named invariant suites behind the `check` subcommand.

Each suite re-derives a family of exact identities from scratch and
reports per-case pass/fail.  Random cases are seeded, so suite output is
deterministic.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import analysis, counting, eca, fractal, singular
from .quadratic import (
    ALPHA,
    TWO_ALPHA,
    BitStream,
    Dyadic,
    Generator,
    Ones,
    QSqrt5,
    dyadic_of,
)


@dataclass
class CheckCase:
    id: str
    status: str
    detail: str = ""


@dataclass
class CheckReport:
    suite: str
    cases: list[CheckCase] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.status == "pass" for c in self.cases)

    @property
    def failed(self) -> int:
        return sum(c.status == "fail" for c in self.cases)

    @property
    def exit_code(self) -> int:
        return 0 if self.failed == 0 else 1

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": [
                {"id": c.id, "status": c.status, "detail": c.detail}
                for c in self.cases
            ],
            "passed": self.passed,
            "failed": self.failed,
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _run(report: CheckReport, case_id: str, fn: Callable[[], str]) -> None:
    try:
        detail = fn()
    except AssertionError as exc:
        report.cases.append(CheckCase(case_id, "fail", str(exc)))
    else:
        report.cases.append(CheckCase(case_id, "pass", detail))


# -- eca ---------------------------------------------------------------------


def _row_symmetric(c: eca.Configuration) -> bool:
    s = format(c.bits, f"0{c.width}b")
    return s == s[::-1]


def check_eca() -> CheckReport:
    report = CheckReport("eca")
    rows = eca.evolve(eca.single_site_seed(), 512)

    def symmetry() -> str:
        for n, row in enumerate(rows):
            assert _row_symmetric(row), f"row {n} not left-right symmetric"
        return "rows 0..512 symmetric"

    def coarse() -> str:
        for n in range(257):
            assert fractal.subsample_even(rows[2 * n]) == rows[n], f"failed at n={n}"
        return "(T^2n)_2i = (T^n)_i for n <= 256"

    def vanishing() -> str:
        for n in range(0, 513, 2):
            assert all(i % 2 == 0 for i in rows[n].ones()), f"odd cell set at n={n}"
        return "even rows vanish at odd cells, n <= 512"

    def support() -> str:
        for n, row in enumerate(rows):
            assert row.offset == -n and row.width == 2 * n + 1, f"row {n} support"
        return "row n spans exactly [-n, n], n <= 512"

    _run(report, "symmetry", symmetry)
    _run(report, "takahashi-coarse", coarse)
    _run(report, "takahashi-vanishing", vanishing)
    _run(report, "row-support", support)
    return report


# -- counting ----------------------------------------------------------------


def check_counting(sweep: int = 4096) -> CheckReport:
    report = CheckReport("counting")

    def oracle_equivalence() -> str:
        nums = counting.num_series(sweep)
        for n, expected in enumerate(nums):
            assert counting.num_matrix(n) == expected, f"num_matrix({n})"
            assert counting.num_cluster(n) == expected, f"num_cluster({n})"
        return f"num by 3 methods equal on [0, {sweep}]"

    def decompose() -> str:
        cums = counting.cum_series(sweep - 1)
        assert counting.cum_decompose(1) == 1
        for m in range(2, sweep + 1):
            assert counting.cum_decompose(m) == cums[m - 2], f"cum_decompose({m})"
        return f"cum_decompose(m) = cum(m-1) on [1, {sweep}]"

    def pow2_vs_direct() -> str:
        for k in range(1, 13):
            assert counting.cum_pow2(k) == counting.cum_direct(2**k - 1), f"k={k}"
        return "cum_pow2 matches simulation for k <= 12"

    def closed_form() -> str:
        for k in range(1, 65):
            val = counting.cum_pow2_closed(k)
            assert val.is_integer, f"k={k}: sqrt5 part did not cancel"
            assert val.to_fraction() == counting.cum_pow2(k), f"k={k}: value"
        return "closed form integer and equal to matrix power for k <= 64"

    def reversal() -> str:
        for length in range(1, 17):
            for word in range(1 << length):
                bits = [(word >> (length - 1 - j)) & 1 for j in range(length)]
                forward = _word_product(bits)
                assert forward == _word_product(bits[::-1]), f"word {bits}"
                assert forward == _word_cluster(bits), f"cluster {bits}"
        return "digit products reversal-invariant for |w| <= 16"

    _run(report, "oracle-equivalence", oracle_equivalence)
    _run(report, "cum-decompose", decompose)
    _run(report, "cum-pow2", pow2_vs_direct)
    _run(report, "closed-form", closed_form)
    _run(report, "reversal-invariance", reversal)
    return report


def _word_product(bits: list[int]) -> int:
    row = counting.A_ROW
    for b in bits:
        row = (counting.M1 if b else counting.M0).apply_row(row)
    return row[0] + row[1]


def _word_cluster(bits: list[int]) -> int:
    result = 1
    for run in "".join(map(str, bits)).split("0"):
        if run:
            result *= counting.cluster_factor(len(run))
    return result


# -- singular ----------------------------------------------------------------


def _random_dyadic(rng: random.Random, max_depth: int) -> Dyadic:
    e = rng.randint(0, max_depth)
    return Dyadic(rng.randint(0, 1 << e), e)


def check_singular(
    agreement_depth: int = 12,
    residual_count: int = 1000,
    monotone_pairs: int = 10_000,
    dual_depth: int = 12,
) -> CheckReport:
    report = CheckReport("singular")

    def agreement() -> str:
        n = 0
        for m in range((1 << agreement_depth) + 1):
            x = Dyadic(m, agreement_depth)
            assert singular.eval_dyadic_exact(x) == singular.eval_recursive_dyadic(
                x
            ), f"x={x}"
            n += 1
        return f"series = recursion at {n} dyadics, depth <= {agreement_depth}"

    def residuals() -> str:
        rng = random.Random(14850)
        F = singular.eval_dyadic_exact
        const_c = ALPHA + 2 * (ALPHA * ALPHA)
        for _ in range(residual_count):
            i = rng.randint(2, 20)
            m = rng.randrange(0, 1 << (i - 1))
            x = Dyadic(m, i)
            assert F(x) - ALPHA * F(Dyadic(m, i - 1)) == 0, f"low branch {x}"
            m = rng.randrange(1 << (i - 1), 3 << (i - 2))
            x = Dyadic(m, i)
            assert F(x) - 3 * F(Dyadic(m - (1 << (i - 1)), i)) - ALPHA == 0, (
                f"mid branch {x}"
            )
            m = rng.randrange(3 << (i - 2), (1 << i) + 1)
            x = Dyadic(m, i)
            lhs = F(x) - F(Dyadic(m - (1 << (i - 1)), i))
            lhs = lhs - 2 * F(Dyadic(m - (3 << (i - 2)), i)) - const_c
            assert lhs == 0, f"high branch {x}"
        return f"all three residuals exactly zero on {residual_count} samples/branch"

    def monotone() -> str:
        rng = random.Random(61801)
        F = singular.eval_dyadic_exact
        checked = 0
        while checked < monotone_pairs:
            x = _random_dyadic(rng, 16)
            y = _random_dyadic(rng, 16)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            assert F(x) < F(y), f"F not increasing on ({x}, {y})"
            checked += 1
        return f"F strictly increasing on {monotone_pairs} exact pairs"

    def modulus() -> str:
        rng = random.Random(2718)
        F = singular.eval_dyadic_exact
        three_alpha = 3 * ALPHA
        for k in (1, 2, 3, 5, 8, 13, 21, 34, 40):
            bound = singular.MODULUS_COEFFICIENT * three_alpha**k
            for _ in range(25):
                prefix = [rng.getrandbits(1) for _ in range(k)]
                sx = [rng.getrandbits(1) for _ in range(20)]
                sy = [rng.getrandbits(1) for _ in range(20)]
                fx = F(dyadic_of(prefix + sx))
                fy = F(dyadic_of(prefix + sy))
                assert abs(fx - fy) <= bound, f"modulus violated at k={k}"
        return "shared k-bit prefixes obey the (sqrt5+2)(3a)^k bound, k <= 40"

    def normalization() -> str:
        partial = QSqrt5(0)
        a_pow = QSqrt5(1)
        prev = partial
        for i in range(1, 41):
            a_pow = a_pow * ALPHA
            partial = partial + counting.ones_coefficient(i) * a_pow
            assert prev < partial < QSqrt5(1), f"partial sum escaped at i={i}"
            prev = partial
        assert partial > QSqrt5(9, 0, 10), "40-term partial sum below 1 - 1/10"
        assert singular.eval_periodic_exact((), (1,)) == QSqrt5(1)
        return "partial sums of sum b_i a^i increase to 1; periodic route hits 1"

    def dual() -> str:
        n = 0
        for e in range(1, dual_depth + 1):
            for m in range(1, 1 << e, 2):
                assert singular.check_dual_representation(Dyadic(m, e)), f"{m}/2^{e}"
                n += 1
        return f"both expansions agree at {n} dyadics, depth <= {dual_depth}"

    def fk_convergence() -> str:
        rate = Fraction(955, 1000)
        for num, exp in ((1, 1), (3, 2), (5, 3)):
            x = Dyadic(num, exp)
            exact = singular.eval_dyadic_exact(x)
            prev_err = None
            for k in (16, 32, 64, 128, 256):
                err = abs(QSqrt5.from_fraction(singular.eval_fk(x, k)) - exact)
                assert err <= QSqrt5.from_fraction(10 * rate**k), f"x={x}, k={k}"
                if prev_err is not None:
                    assert err < prev_err, f"error not decreasing at x={x}, k={k}"
                prev_err = err
        return "F_k -> F within 10*(0.955)^k, decreasing over k in {16..256}"

    _run(report, "evaluator-agreement", agreement)
    _run(report, "functional-equation-residuals", residuals)
    _run(report, "strict-monotonicity", monotone)
    _run(report, "modulus-of-continuity", modulus)
    _run(report, "normalization", normalization)
    _run(report, "dual-representation", dual)
    _run(report, "fk-convergence", fk_convergence)
    return report


# -- analysis ----------------------------------------------------------------


def check_analysis() -> CheckReport:
    report = CheckReport("analysis")
    F = singular.eval_dyadic_exact

    def closed_vs_direct() -> str:
        for num, exp in ((1, 1), (3, 2), (5, 3), (13, 4)):
            x = Dyadic(num, exp)
            xf = x.fraction
            for m in range(exp + 2, 31):
                lit = (F(x) - F(Dyadic.from_fraction(xf - Fraction(1, 2**m)))) * (
                    2**m
                )
                assert analysis.left_quotient(x, m) == lit, f"left {x} m={m}"
                lit = (F(Dyadic.from_fraction(xf + Fraction(2, 2**m))) - F(x)) * (
                    2 ** (m - 1)
                )
                assert analysis.right_quotient(x, m) == lit, f"right {x} m={m}"
        return "closed forms equal literal difference quotients, m <= 30"

    def divergence() -> str:
        half = Dyadic(1, 1)
        prev = analysis.left_quotient(half, 4)
        crossed = None
        for m in range(5, 81):
            cur = analysis.left_quotient(half, m)
            assert cur > prev, f"not increasing at m={m}"
            if crossed is None and cur > 10**6:
                crossed = m
            prev = cur
        assert crossed is not None, "never exceeded 10^6 by m = 80"
        return f"left quotients at 1/2 increase and pass 10^6 at m={crossed}"

    def vanishing() -> str:
        half = Dyadic(1, 1)
        tiny = Fraction(1, 10**6)
        for m in range(35, 81):
            q = analysis.right_quotient(half, m)
            assert q == 3 * TWO_ALPHA ** (m - 1), f"closed form at m={m}"
            assert q < tiny, f"not below 10^-6 at m={m}"
        return "right quotients at 1/2 equal 3(2a)^(m-1) and stay below 10^-6"

    def trichotomy() -> str:
        six_alpha = 6 * ALPHA
        d_lo = Fraction(10, 3) * ALPHA
        d_hi = Fraction(22, 5) * ALPHA
        stream = BitStream((), Generator(99))
        prev = analysis.dyadic_quotient_statistic(stream, 1)
        kinds = set()
        for k in range(2, 120):
            cur = analysis.dyadic_quotient_statistic(stream, k)
            ratio = cur / prev
            if ratio == TWO_ALPHA:
                kinds.add("2a")
            elif ratio == six_alpha:
                kinds.add("6a")
            else:
                assert d_lo <= ratio <= d_hi, f"ratio escaped at k={k}"
                kinds.add("D_l")
            prev = cur
        assert kinds == {"2a", "6a", "D_l"}, f"saw only {sorted(kinds)}"
        return "successive ratios are exactly 2a, 6a, or in [10a/3, 22a/5]"

    def extremes() -> str:
        ones = BitStream((), Ones())
        stat = analysis.dyadic_quotient_statistic(ones, 300)
        assert stat > 1, "all-ones statistic should exceed 1"
        zeros = BitStream()
        stat = analysis.dyadic_quotient_statistic(zeros, 300)
        assert stat < Fraction(1, 10**60), "all-zeros statistic should collapse"
        return "all-ones diverges (4a > 1), all-zeros collapses ((2a)^k)"

    _run(report, "closed-vs-direct", closed_vs_direct)
    _run(report, "monotone-divergence", divergence)
    _run(report, "vanishing", vanishing)
    _run(report, "ratio-trichotomy", trichotomy)
    _run(report, "exceptional-points", extremes)
    return report


# -- fractal -----------------------------------------------------------------


def check_fractal() -> CheckReport:
    report = CheckReport("fractal")

    def popcounts() -> str:
        for k in range(1, 13):
            bm = fractal.prefractal(k)
            assert bm.popcount() == counting.cum_pow2(k), f"k={k}"
        return "prefractal popcount equals cum(2^k - 1) for k <= 12"

    def selfsim() -> str:
        for k in range(2, 13):
            assert fractal.selfsim_check(k), f"k={k}"
        return "even-coordinate subsample reproduces level k-1 for k <= 12"

    def slope() -> str:
        target = fractal.DIMENSION_TARGET
        coarse = fractal.boxcount_slope(4, 12)
        fine = fractal.boxcount_slope(16, 32)
        assert abs(fine - target) < abs(coarse - target), "no improvement"
        assert abs(fractal.boxcount_slope(8, 24) - target) < 0.01
        assert abs(fractal.boxcount_slope(40, 64) - target) < 0.001
        return f"slope windows converge toward {target}"

    _run(report, "popcount", popcounts)
    _run(report, "self-similarity", selfsim)
    _run(report, "dimension-slope", slope)
    return report


SUITES: dict[str, Callable[[], CheckReport]] = {
    "eca": check_eca,
    "counting": check_counting,
    "singular": check_singular,
    "analysis": check_analysis,
    "fractal": check_fractal,
}


def check_all() -> list[CheckReport]:
    return [SUITES[name]() for name in ("eca", "counting", "singular", "analysis", "fractal")]
