"""Comparing sum sides with product sides, and the structural suite."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..qseries import QSeries, brute_force_gen_function, expand_product, format_exponent, gen_function, to_doubled
from ..rules import check_order_compat, check_symmetry, check_three_term, check_triangle, permutation_from_cycles
from .cases import ASSERT, IdentityCase, all_cases, get_case

PASS = "pass"
FAIL = "fail"
REPORTED = "reported"


@dataclass
class Report:
    case: str
    order: Fraction
    verdict: str
    sum: QSeries | None
    product: QSeries | None
    first_mismatch: int | None = None  # doubled exponent
    ms: int = 0
    product_formula: str = ""
    note: str = ""
    oracle: str = ""  # "", "agrees", or a mismatch description
    agreement: int | None = None  # explore mode: doubled exponent up to which both sides agree
    error: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, REPORTED)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "case": self.case,
            "order": _num(self.order),
            "verdict": self.verdict,
            "sum": _series(self.sum),
            "product": _series(self.product),
            "first_mismatch": None if self.first_mismatch is None else _num(Fraction(self.first_mismatch, 2)),
            "ms": self.ms if timing else None,
        }
        if self.product_formula:
            out["product_formula"] = self.product_formula
        if self.note:
            out["note"] = self.note
        if self.oracle:
            out["oracle"] = self.oracle
        if self.agreement is not None:
            out["agrees_through"] = _num(Fraction(self.agreement, 2))
        if self.error:
            out["error"] = self.error
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def render(self, timing: bool = True) -> str:
        lines = [f"case {self.case}  order {_num(self.order)}  verdict {self.verdict.upper()}"]
        if self.error:
            lines.append(f"  error: {self.error}")
        if self.sum is not None:
            lines.append(f"  sum     {self.sum}")
        if self.product is not None:
            lines.append(f"  product {self.product}")
            lines.append(f"          = {self.product_formula}")
        if self.note:
            lines.append(f"  note: {self.note}")
        if self.first_mismatch is not None:
            k = self.first_mismatch
            lines.append(
                f"  first mismatch at q^{format_exponent(k)}: "
                f"sum {self.sum.coeffs[k]} vs product {self.product.coeffs[k]}"
            )
        if self.agreement is not None:
            lines.append(f"  sides agree through q^{format_exponent(self.agreement)}")
        if self.oracle:
            lines.append(f"  brute-force oracle: {self.oracle}")
        if timing:
            lines.append(f"  {self.ms} ms")
        return "\n".join(lines)


def _series(s: QSeries | None) -> dict | None:
    """Coefficients keyed by twice the exponent, as in :meth:`QSeries.to_json`."""
    return None if s is None else s.to_json()


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def verify(case: IdentityCase | str, order=None, oracle: bool = False) -> Report:
    if isinstance(case, str):
        case = get_case(case)
    order = Fraction(order) if order is not None else case.default_order
    to_doubled(order)
    t0 = time.perf_counter()
    lhs = gen_function(case.rules, case.spec, order)
    rhs = expand_product(case.product, order) if case.product is not None else None
    rep = Report(
        case.name, order, REPORTED, lhs, rhs,
        product_formula=case.product.describe() if case.product is not None else "",
        note=case.note,
    )
    if oracle:
        brute = brute_force_gen_function(case.rules, case.spec, order)
        k = brute.first_mismatch(lhs)
        rep.oracle = "agrees" if k is None else f"differs at q^{format_exponent(k)}"
    if rhs is not None:
        k = lhs.first_mismatch(rhs)
        if case.mode == ASSERT:
            rep.first_mismatch = k
            rep.verdict = PASS if k is None else FAIL
        else:
            rep.agreement = lhs.order2 if k is None else k - 1
    if oracle and rep.oracle != "agrees":
        rep.verdict = FAIL
    rep.ms = int((time.perf_counter() - t0) * 1000)
    return rep


@dataclass
class StructuralResult:
    case: str
    checks: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def render(self) -> str:
        parts = [f"{k} {'ok' if v else 'FAIL'}" for k, v in self.checks.items()]
        out = f"structure {self.case}: " + ", ".join(parts)
        for k, w in self.witnesses.items():
            out += f"\n  {k}: {w}"
        return out


A2_SYMMETRY = (("2", "3"), ("5", "6"), ("7", "8"))


def structural_suite(name: str) -> StructuralResult:
    """Triangle inequality, order compatibility, the three-part lemma, and symmetry for A2."""
    case = get_case(name)
    E = case.entry.matrix
    lab = E.alphabet.label
    res = StructuralResult(name)
    ok, bad = check_triangle(E)
    res.checks["triangle"] = ok
    if bad:
        a, b, c = bad[0]
        res.witnesses["triangle"] = f"E[{lab(a)}][{lab(c)}] > E[{lab(a)}][{lab(b)}] + E[{lab(b)}][{lab(c)}]"
    ok, bad = check_order_compat(E)
    res.checks["order"] = ok
    if bad:
        a, b = bad[0]
        res.witnesses["order"] = f"E[{lab(a)}][{lab(b)}] = 0 but {lab(a)} > {lab(b)}"
    bad3 = check_three_term(case.rules)
    res.checks["three-term"] = not bad3
    if bad3:
        res.witnesses["three-term"] = str(bad3[0])
    if name == "a2-basic":
        sigma = permutation_from_cycles(E.alphabet, A2_SYMMETRY)
        res.checks["symmetry"] = check_symmetry(E, sigma)
    return res


STRUCTURAL_CASES = ("a2-basic", "a3-basic")


@dataclass
class RunSummary:
    reports: list[Report]
    structure: list[StructuralResult]

    @property
    def exit_code(self) -> int:
        bad = [r for r in self.reports if not r.passed] + [s for s in self.structure if not s.passed]
        return 1 if bad else 0


def run_all(order=None, oracle: bool = False) -> RunSummary:
    reports = []
    for case in all_cases():
        try:
            reports.append(verify(case, order, oracle))
        except ValueError as exc:
            reports.append(Report(case.name, Fraction(order or case.default_order), FAIL, None, None, error=str(exc)))
    structure = [structural_suite(n) for n in STRUCTURAL_CASES]
    return RunSummary(reports, structure)
