"""Hodge spectra by two independent routes, plus the global analysis driver.

Route one (combinatorial): the graded complex at level lam is concentrated in
top degree for nondegenerate f, so its dimension there equals the signed
Euler characteristic

    h^lam = (-1)^n * sum_p (-1)^p * C(n, p) * N(p - lam),

with N(c) the number of lattice points of exact weight c.  Route two (rank):
h^lam is the drop of the filtration image dimension between consecutive
jumps, computed from exact kernels and images.  Agreement of the two routes
is the numerical shadow of the degeneration of the spectral sequence at its
first page; the analysis report never hides a disagreement.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .derham import betti_numbers, build_graded_level, filtration_image_dim, exact_rank
from .errors import IntegrityError, NotFullDimensionalError
from .laurent import LaurentPolynomial, format_laurent
from .nondegen import DEFAULT_SEED, NondegeneracyReport, is_nondegenerate
from .polytope import NewtonPolytope, newton_polytope


@dataclass(frozen=True)
class HodgeSpectrum:
    """Sorted (jump, multiplicity) pairs for one cohomology degree."""

    degree: int
    entries: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        lams = [l for l, _ in self.entries]
        if lams != sorted(set(lams)):
            raise ValueError("jumps must be strictly increasing")
        if any(m <= 0 for _, m in self.entries):
            raise ValueError("multiplicities must be positive")

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, lam) -> int:
        lam = Fraction(lam)
        for l, m in self.entries:
            if l == lam:
                return m
        return 0

    def to_json(self) -> list[dict]:
        return [{"lambda": str(l), "mult": m} for l, m in self.entries]

    def __str__(self):
        body = ", ".join(f"({l}, {m})" for l, m in self.entries)
        return f"{{{body}}}"


def jump_candidates(f: LaurentPolynomial) -> list[Fraction]:
    """All values p - weight(alpha) in [0, n]: the only places the filtration
    can jump."""
    poly = newton_polytope(f)
    if poly.dim != f.nvars:
        raise NotFullDimensionalError(poly.dim, f.nvars)
    n = f.nvars
    census = poly.weight_census(Fraction(n))
    out = set()
    for w in census:
        for p in range(n + 1):
            lam = Fraction(p) - w
            if 0 <= lam <= n:
                out.add(lam)
    return sorted(out)


def spectrum_euler(f: LaurentPolynomial) -> HodgeSpectrum:
    """Top-degree spectrum from the weight census alone."""
    poly = newton_polytope(f)
    if poly.dim != f.nvars:
        raise NotFullDimensionalError(poly.dim, f.nvars)
    n = f.nvars
    census = poly.weight_census(Fraction(n))
    sign = (-1) ** n
    entries = []
    for lam in jump_candidates(f):
        h = sign * sum((-1) ** p * comb(n, p) * census.get(Fraction(p) - lam, 0)
                       for p in range(n + 1))
        if h < 0:
            raise IntegrityError(
                f"negative graded dimension {h} at level {lam}: "
                "input is degenerate or a computation is wrong")
        if h > 0:
            entries.append((lam, h))
    return HodgeSpectrum(n, tuple(entries))


def spectrum_rank(f: LaurentPolynomial, threads: int = 1) -> HodgeSpectrum:
    """Top-degree spectrum from exact filtration image dimensions; completely
    independent of the Euler route."""
    n = f.nvars
    jumps = jump_candidates(f)

    def img(lam) -> int:
        return filtration_image_dim(f, lam, n)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            dims = list(pool.map(img, jumps))
    else:
        dims = [img(lam) for lam in jumps]
    dims.append(0)  # above the top jump the level is empty
    entries = []
    for k, lam in enumerate(jumps):
        h = dims[k] - dims[k + 1]
        if h < 0:
            raise IntegrityError(f"filtration image dimension increased at {lam}")
        if h > 0:
            entries.append((lam, h))
    return HodgeSpectrum(n, tuple(entries))


@dataclass(frozen=True)
class CheckResult:
    status: str                  # "pass" | "fail" | "not applicable"
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self):
        return {"status": self.status, **{k: v for k, v in self.detail.items()}}


def check_degeneration(f: LaurentPolynomial, threads: int = 1) -> CheckResult:
    """Spectra agree entrywise AND every graded slice has cohomology only in
    top degree."""
    eu = spectrum_euler(f)
    rk = spectrum_rank(f, threads=threads)
    detail = {"euler": eu.to_json(), "rank": rk.to_json()}
    agree = eu.entries == rk.entries
    n = f.nvars
    vanishing = True
    graded_dims = {}
    for lam in jump_candidates(f):
        g = build_graded_level(f, lam)
        dims = g.dims()
        ranks = [exact_rank(m) for m in g.mats]
        below = []
        for i in range(n):
            r_out = ranks[i]
            r_in = ranks[i - 1] if i > 0 else 0
            below.append(dims[i] - r_out - r_in)
        graded_dims[str(lam)] = below
        if any(b != 0 for b in below):
            vanishing = False
    detail["graded_cohomology_below_top"] = graded_dims
    status = "pass" if (agree and vanishing) else "fail"
    return CheckResult(status, detail)


def check_symmetry(f: LaurentPolynomial) -> CheckResult:
    """h^lam = h^(n-lam) in the proper case (origin interior to the
    polytope); skipped otherwise."""
    poly = newton_polytope(f)
    if not poly.contains_origin_interior():
        note = {"reason": "origin not interior to the Newton polytope; "
                          "cohomology and compactly supported cohomology differ"}
        return CheckResult("not applicable", note)
    n = f.nvars
    rk = spectrum_rank(f)
    rk_neg = spectrum_rank(-f)
    detail = {"rank": rk.to_json(), "rank_negated": rk_neg.to_json()}
    sign_invariant = rk.entries == rk_neg.entries
    symmetric = all(rk.multiplicity(Fraction(n) - lam) == m for lam, m in rk.entries)
    detail["sign_invariance"] = sign_invariant
    detail["symmetric"] = symmetric
    return CheckResult("pass" if (sign_invariant and symmetric) else "fail", detail)


@dataclass
class AnalysisReport:
    f: LaurentPolynomial
    polytope: NewtonPolytope
    nvol: int
    nondegeneracy: NondegeneracyReport
    betti: list[int]
    spectra: dict[str, HodgeSpectrum]
    checks: dict[str, CheckResult]
    warnings: list[str]
    timing_ms: int

    def to_json(self) -> dict:
        poly = self.polytope.summary()
        poly["nvol"] = self.nvol
        poly["origin_interior"] = self.polytope.contains_origin_interior()
        return {
            "input": {
                "poly": format_laurent(self.f),
                "vars": list(self.f.var_names),
                "n": self.f.nvars,
            },
            "polytope": poly,
            "nondegeneracy": self.nondegeneracy.to_json(),
            "betti": list(self.betti),
            "spectrum": {k: v.to_json() for k, v in self.spectra.items()},
            "checks": {k: v.to_json() for k, v in self.checks.items()},
            "warnings": list(self.warnings),
            "timing_ms": self.timing_ms,
        }


def analyze(f: LaurentPolynomial, mode: str = "both", certify: bool = False,
            seed: int = DEFAULT_SEED, primes: int = 3, threads: int = 1,
            curve_checks: Optional[bool] = None,
            truncation: Optional[int] = None) -> AnalysisReport:
    """Full pipeline: polytope, nondegeneracy, Betti numbers, spectra, and
    consequence checks.  Failed checks are reported, never dropped."""
    t0 = time.perf_counter()
    poly = newton_polytope(f)
    if poly.dim != f.nvars:
        raise NotFullDimensionalError(poly.dim, f.nvars)
    warnings: list[str] = []
    report = is_nondegenerate(f, primes=primes, seed=seed, certify=certify, threads=threads)
    betti = betti_numbers(f)
    nvol = poly.normalized_volume()
    spectra: dict[str, HodgeSpectrum] = {}
    checks: dict[str, CheckResult] = {}
    degenerate = report.is_degenerate
    if degenerate:
        warnings.append(
            "input is degenerate: the spectrum below is the raw filtration "
            "rank output, unsupported by the degeneration theorem")
    if mode in ("rank", "both"):
        spectra["rank"] = spectrum_rank(f, threads=threads)
    if mode in ("euler", "both"):
        if degenerate:
            warnings.append("combinatorial route suppressed for degenerate input")
        else:
            spectra["euler"] = spectrum_euler(f)
    if not degenerate:
        checks["degeneration"] = check_degeneration(f, threads=threads)
        checks["symmetry"] = check_symmetry(f)
        if f.nvars == 1 and (curve_checks is None or curve_checks):
            from . import curve

            checks["curve_comparison"] = curve.comparison_check(f, truncation=truncation)
            checks["curve_duality"] = curve.duality_summary(f, truncation=truncation)
    elapsed = int((time.perf_counter() - t0) * 1000)
    return AnalysisReport(f, poly, nvol, report, betti, spectra, checks, warnings, elapsed)
