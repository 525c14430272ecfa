"""Biseparability scan of pure odd-n states from their odd correlations.

Only the correlations ``P_1, P_3, ..., P_{n-2}`` are consulted. For a cut
``M | M'`` the reduced state on any subset ``A`` has as odd correlations
exactly the odd-weight terms supported inside ``A``, and for ``|A| <= n - 1``
these all have weight ``<= n - 2``.

A reduced state is certified pure through the top eigenvalue of its odd
part: ``P_o(rho_A) = 2^{|A|-1} (rho_A - rho_A~)`` reaches ``2^{|A|-1}``
only if ``rho_A`` is pure. That certificate is exact on the odd-size side
of a cut. The even-size side is cross-checked against the pure-state form
``(+l, 0, ..., 0, -l)`` with ``l <= 2^{|A|-1}``. Verdicts are therefore
necessary conditions: "separable-consistent" or "inconsistent".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bloch import BlochVector
from .errors import ValidationError
from .pauli import PauliString
from .reconstruction import SPECTRUM_TOL

PURITY_LENGTH_TOL = 1e-7

SEPARABLE = "separable-consistent"
INCONSISTENT = "inconsistent"


def single_party_vector(p1: BlochVector, party: int) -> np.ndarray:
    """``(c_x, c_y, c_z)`` of one party, read from the weight-1 terms."""
    n = p1.n
    if not 1 <= party <= n:
        raise ValidationError(f"party {party} outside 1..{n}")
    out = []
    for ch in "XYZ":
        label = "I" * (party - 1) + ch + "I" * (n - party)
        out.append(p1.coefficient(PauliString.from_label(label)))
    return np.array(out)


def reduced_purity_test(p1: BlochVector, party: int, tol: float = PURITY_LENGTH_TOL):
    """Verdict and Bloch length of the single-party reduced state."""
    length = float(np.linalg.norm(single_party_vector(p1, party)))
    verdict = SEPARABLE if abs(length - 1.0) <= tol else INCONSISTENT
    return verdict, length


def restrict(b: BlochVector, subset: tuple[int, ...]) -> BlochVector:
    """Terms of ``b`` supported inside ``subset``, as operators on ``len(subset)`` qubits."""
    n = b.n
    inside = 0
    for q in subset:
        inside |= 1 << (n - q)
    out = {}
    for (x, z), c in b.terms.items():
        if (x | z) & ~inside:
            continue
        rx = rz = 0
        for q in subset:
            bit = n - q
            rx = (rx << 1) | ((x >> bit) & 1)
            rz = (rz << 1) | ((z >> bit) & 1)
        out[(rx, rz)] = c
    return BlochVector(len(subset), out)


def _odd_spectrum(b: BlochVector) -> np.ndarray:
    m = b.filter(lambda p: p.weight % 2 == 1).to_operator()
    return np.sort(np.linalg.eigvalsh(m))[::-1]


def pure_certificate(b: BlochVector, tol: float = SPECTRUM_TOL) -> tuple[bool, float]:
    """Top eigenvalue of the odd part equals ``2^{m-1}`` (odd ``m``: full spectrum test)."""
    m = b.n
    half = 2.0 ** (m - 1)
    vals = _odd_spectrum(b)
    expected = np.zeros_like(vals)
    expected[0], expected[-1] = half, -half
    if m % 2 == 1:
        dev = float(np.max(np.abs(vals - expected)))
    else:
        dev = float(abs(vals[0] - half))
    return dev <= tol, dev


def even_side_consistent(b: BlochVector, tol: float = SPECTRUM_TOL) -> tuple[bool, float]:
    """Odd part of a pure even-size state has spectrum ``(+l, 0, ..., 0, -l)``, ``l <= 2^{m-1}``."""
    half = 2.0 ** (b.n - 1)
    vals = _odd_spectrum(b)
    lam = 0.5 * (vals[0] - vals[-1])
    dev = max(float(np.max(np.abs(vals[1:-1]), initial=0.0)),
              float(abs(vals[0] + vals[-1])),
              max(lam - half, 0.0))
    return dev <= tol, dev


@dataclass(frozen=True)
class CutResult:
    subset: tuple[int, ...]
    verdict: str
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BisepReport:
    n: int
    cut_results: dict[int, list[CutResult]]

    def consistent_cuts(self) -> list[tuple[int, ...]]:
        return [r.subset for rs in self.cut_results.values() for r in rs if r.verdict == SEPARABLE]

    def verdict(self, subset) -> str:
        subset = tuple(sorted(subset))
        for rs in self.cut_results.values():
            for r in rs:
                if r.subset == subset:
                    return r.verdict
        raise KeyError(subset)

    def rows(self) -> list[dict]:
        return [{"k": k, "subset": list(r.subset), "verdict": r.verdict, **r.diagnostics}
                for k, rs in self.cut_results.items() for r in rs]


def odd_correlation_data(b: BlochVector) -> BlochVector:
    """Keep only the inputs a scan may read: odd weights ``<= n - 2``."""
    return b.filter(lambda p: p.weight % 2 == 1 and p.weight <= b.n - 2)


def _validate_input(b: BlochVector) -> None:
    n = b.n
    if n < 3 or n % 2 == 0:
        raise ValidationError(f"biseparability scan needs odd n >= 3, got {n}")
    for p, _ in b:
        if p.weight >= n - 1:
            raise ValidationError(
                f"term {p.label()} has weight {p.weight}; only weights <= {n - 2} may be supplied")
        if p.weight % 2 == 0 and p.weight > 0:
            raise ValidationError(f"term {p.label()} has even weight")


def bisep_scan(odd_corrs: BlochVector, tol: float = SPECTRUM_TOL) -> BisepReport:
    """Test every cut ``M | M'`` with ``|M| = 1 .. (n-1)/2`` for consistency with a product."""
    _validate_input(odd_corrs)
    n = odd_corrs.n
    parties = range(1, n + 1)
    results: dict[int, list[CutResult]] = {}
    results[1] = []
    for q in parties:
        verdict, length = reduced_purity_test(odd_corrs, q, tol=PURITY_LENGTH_TOL)
        results[1].append(CutResult((q,), verdict, {"bloch_length": length}))
    for k in range(2, (n - 1) // 2 + 1):
        results[k] = []
        for m in combinations(parties, k):
            rest = tuple(q for q in parties if q not in m)
            odd_side, even_side = (m, rest) if k % 2 == 1 else (rest, m)
            pure_ok, pure_dev = pure_certificate(restrict(odd_corrs, odd_side), tol)
            even_ok, even_dev = even_side_consistent(restrict(odd_corrs, even_side), tol)
            verdict = SEPARABLE if pure_ok and even_ok else INCONSISTENT
            results[k].append(CutResult(m, verdict, {
                "odd_side": list(odd_side),
                "pure_deviation": pure_dev,
                "even_side_deviation": even_dev,
            }))
    return BisepReport(n, results)
