"""Property-check engine: algebraic identities as pass/fail checks.

Every check computes a residual as the largest absolute entry of a
difference (Chebyshev norm) and passes when the residual is within the
tolerance.  Checks are pure and deterministic; the suite runner merges
its results ordered by check name.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import fock, liealg, schwinger
from .errors import CapacityError
from .fock import FockOperator
from .liealg import StructureConstants
from .schwinger import RepresentationResult

__all__ = [
    "CheckResult",
    "VerificationReport",
    "BlockDecomposition",
    "check_anticommutation",
    "check_closure",
    "check_eij_algebra",
    "check_number_commutant",
    "block_decompose",
    "compare_ops",
    "run_suite",
]

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    elapsed: float = 0.0


class VerificationReport:
    """Accumulated check results with an overall verdict."""

    def __init__(self, params: dict | None = None):
        self.params: dict = dict(params or {})
        self.checks: list[CheckResult] = []

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, residual: float, tol: float, elapsed: float = 0.0) -> None:
        residual = float(residual)
        if not math.isfinite(residual) or residual < 0:
            raise ValueError(f"residual must be finite and nonnegative, got {residual}")
        self.checks.append(CheckResult(name, residual <= tol, residual, elapsed))

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def sort_by_name(self) -> None:
        self.checks.sort(key=lambda c: c.name)

    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def signature(self) -> tuple:
        """Deterministic identity of the report: names, verdicts, residuals."""
        return tuple((c.name, c.passed, c.residual) for c in self.checks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VerificationReport):
            return NotImplemented
        return self.overall == other.overall and self.signature() == other.signature()

    __hash__ = None

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "overall": self.overall,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "residual": c.residual,
                    "elapsed": c.elapsed,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, payload: dict) -> "VerificationReport":
        report = cls(payload.get("params", {}))
        for c in payload["checks"]:
            report.checks.append(
                CheckResult(
                    c["name"], bool(c["passed"]), float(c["residual"]),
                    float(c.get("elapsed", 0.0)),
                )
            )
        return report

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status}  {c.name}  residual={c.residual:.3e}")
        lines.append(
            f"overall: {'PASS' if self.overall else 'FAIL'} "
            f"({len(self.checks)} checks, {len(self.failed())} failed)"
        )
        return "\n".join(lines)


def check_anticommutation(
    n: int,
    tol: float = 0.0,
    annihilation_source: Callable[[int, int], FockOperator] | None = None,
) -> VerificationReport:
    """All anticommutator identities of the n ladder operators.

    {a_i, a_j} = 0, {a+_i, a+_j} = 0 and {a_i, a+_j} = d_ij * identity for
    every ordered index pair.  The ladder matrices are integer-valued, so
    residuals are exactly zero and the default tolerance is 0.
    """
    source = annihilation_source or fock.annihilation
    ann = [source(n, i) for i in range(1, n + 1)]
    cre = [a.dagger() for a in ann]
    eye = FockOperator.identity(n)
    report = VerificationReport({"n": n, "tol": tol})
    for i in range(n):
        for j in range(n):
            t0 = time.perf_counter()
            r = ann[i].anticommutator(ann[j]).max_abs()
            report.add(
                f"anticomm/n{n:02d}/aa[{i + 1:02d},{j + 1:02d}]",
                r, tol, time.perf_counter() - t0,
            )
            t0 = time.perf_counter()
            r = cre[i].anticommutator(cre[j]).max_abs()
            report.add(
                f"anticomm/n{n:02d}/cc[{i + 1:02d},{j + 1:02d}]",
                r, tol, time.perf_counter() - t0,
            )
            t0 = time.perf_counter()
            delta = eye if i == j else FockOperator.zero(n)
            r = (ann[i].anticommutator(cre[j]) - delta).max_abs()
            report.add(
                f"anticomm/n{n:02d}/ac[{i + 1:02d},{j + 1:02d}]",
                r, tol, time.perf_counter() - t0,
            )
    return report


# above this many bytes for the dense operator stack, closure checks fall
# back to sparse pairwise arithmetic instead of batched dense products
_DENSE_CLOSURE_BYTES = 400_000_000


def check_closure(
    rep: RepresentationResult | Sequence[FockOperator],
    constants: StructureConstants,
    tol: float = DEFAULT_TOL,
    label: str = "closure",
) -> VerificationReport:
    """Residuals of [r_i, r_j] - sum_l c[i, j, l] r_l for every pair i < j."""
    ops = list(rep)
    k = len(ops)
    if constants.size != k:
        raise ValueError(
            f"representation has {k} operators but constants are for {constants.size}"
        )
    report = VerificationReport({"label": label, "tol": tol})
    c = constants.c
    dim = ops[0].dim
    if k * dim * dim * 16 > _DENSE_CLOSURE_BYTES:
        for i in range(k):
            for j in range(i + 1, k):
                t0 = time.perf_counter()
                diff = ops[i].commutator(ops[j])
                for l in np.nonzero(np.abs(c[i, j]) > 1e-14)[0]:
                    diff = diff - complex(c[i, j, l]) * ops[l]
                report.add(
                    f"{label}/[{i + 1:02d},{j + 1:02d}]",
                    diff.max_abs(), tol, time.perf_counter() - t0,
                )
        return report
    stack = np.stack([op.to_dense() for op in ops])
    for i in range(k):
        t0 = time.perf_counter()
        comm = np.matmul(stack[i][None, :, :], stack) - np.matmul(
            stack, stack[i][None, :, :]
        )
        recon = np.tensordot(c[i], stack, axes=(1, 0))
        resid = np.max(np.abs(comm - recon), axis=(1, 2))
        elapsed = time.perf_counter() - t0
        for j in range(i + 1, k):
            report.add(
                f"{label}/[{i + 1:02d},{j + 1:02d}]",
                float(resid[j]), tol, elapsed / max(k - i - 1, 1),
            )
    return report


def check_eij_algebra(
    units: Sequence[FockOperator],
    k: int,
    tol: float = DEFAULT_TOL,
    label: str = "eij",
    samples: int | None = None,
    seed: int = 0,
) -> VerificationReport:
    """Matrix-unit commutation identities for a k^2-element operator list.

    The list is indexed row-major: units[(i-1)*k + (j-1)] plays e_ij, and
    each quadruple must satisfy [Q_ij, Q_pq] = d_jp Q_iq - d_qi Q_pj.
    With samples=None all k^4 identities are checked and one result is
    recorded per (i, j) pair; otherwise a fixed-seed pseudo-random subset
    of quadruples is checked and recorded as a single result.
    """
    if len(units) != k * k:
        raise ValueError(f"need {k * k} operators for k={k}, got {len(units)}")

    def q(i: int, j: int) -> FockOperator:
        return units[i * k + j]

    def identity_residual(i: int, j: int, p: int, qq: int) -> float:
        lhs = q(i, j).commutator(q(p, qq))
        rhs = FockOperator.zero(lhs.modes)
        if j == p:
            rhs = rhs + q(i, qq)
        if qq == i:
            rhs = rhs - q(p, j)
        return (lhs - rhs).max_abs()

    report = VerificationReport({"label": label, "k": k, "tol": tol})
    if samples is None:
        for i in range(k):
            for j in range(k):
                t0 = time.perf_counter()
                worst = 0.0
                for p in range(k):
                    for qq in range(k):
                        worst = max(worst, identity_residual(i, j, p, qq))
                report.add(
                    f"{label}/[{i + 1:02d},{j + 1:02d}]",
                    worst, tol, time.perf_counter() - t0,
                )
    else:
        rng = np.random.RandomState(seed)
        t0 = time.perf_counter()
        worst = 0.0
        for _ in range(samples):
            i, j, p, qq = rng.randint(0, k, size=4)
            worst = max(worst, identity_residual(int(i), int(j), int(p), int(qq)))
        report.add(
            f"{label}/sampled[{samples}]", worst, tol, time.perf_counter() - t0
        )
    return report


def check_number_commutant(
    rep: RepresentationResult | Sequence[FockOperator],
    n: int,
    tol: float = DEFAULT_TOL,
    label: str = "numcomm",
) -> VerificationReport:
    """Residual of [op, N_total] for every operator."""
    ops = list(rep)
    report = VerificationReport({"label": label, "n": n, "tol": tol})
    ntot = fock.total_number(n)
    names = None
    if isinstance(rep, RepresentationResult) and len(rep.meta.labels) == len(ops):
        names = rep.meta.labels
    for a, op in enumerate(ops):
        if op.modes != n:
            raise ValueError(f"operator {a} acts on {op.modes} modes, expected {n}")
        t0 = time.perf_counter()
        r = op.commutator(ntot).max_abs()
        tag = names[a] if names else f"{a + 1:03d}"
        report.add(f"{label}/{tag}", r, tol, time.perf_counter() - t0)
    return report


@dataclass(frozen=True, eq=False)
class BlockDecomposition:
    """Per-sector diagonal blocks of an operator in the canonical basis."""

    modes: int
    blocks: dict[int, np.ndarray]
    off_block_norm: float

    def reassemble(self) -> FockOperator:
        """Operator with the stored blocks and zeros elsewhere."""
        basis = fock.build_basis(self.modes)
        entries: dict[tuple[int, int], complex] = {}
        for m, block in self.blocks.items():
            start = basis.sector_range(m).start
            rows, cols = np.nonzero(block)
            for r, c in zip(rows, cols):
                entries[(start + int(r), start + int(c))] = complex(block[r, c])
        return FockOperator.from_entries(self.modes, entries)


def block_decompose(op: FockOperator) -> BlockDecomposition:
    """Split an operator into per-sector blocks plus an off-block norm.

    The off-block norm is the largest absolute entry connecting different
    particle-count sectors; it is zero exactly when the operator is
    number conserving.
    """
    n = op.modes
    basis = fock.build_basis(n)
    counts = np.array([s.particle_count() for s in basis.states])
    starts = {m: basis.sector_range(m).start for m in range(n + 1)}
    blocks = {
        m: np.zeros((math.comb(n, m), math.comb(n, m)), dtype=np.complex128)
        for m in range(n + 1)
    }
    off = 0.0
    coo = op.mat.tocoo()
    for r, c, v in zip(coo.row, coo.col, coo.data):
        mr, mc = int(counts[r]), int(counts[c])
        if mr == mc:
            blocks[mr][r - starts[mr], c - starts[mc]] = v
        else:
            off = max(off, abs(complex(v)))
    return BlockDecomposition(n, blocks, off)


def compare_ops(
    a: RepresentationResult | Sequence[FockOperator],
    b: RepresentationResult | Sequence[FockOperator],
    tol: float = DEFAULT_TOL,
    label: str = "compare",
) -> VerificationReport:
    """Entrywise difference between two equal-length operator lists."""
    ops_a, ops_b = list(a), list(b)
    if len(ops_a) != len(ops_b):
        raise ValueError(f"lengths differ: {len(ops_a)} vs {len(ops_b)}")
    report = VerificationReport({"label": label, "tol": tol})
    for k, (x, y) in enumerate(zip(ops_a, ops_b)):
        if x.modes != y.modes:
            raise ValueError(f"operator {k} mode counts differ: {x.modes} vs {y.modes}")
        t0 = time.perf_counter()
        report.add(f"{label}/{k + 1:03d}", x.diff_max(y), tol, time.perf_counter() - t0)
    return report


def _block_equality_checks(
    rep: RepresentationResult,
    expected_blocks: dict[int, Sequence[np.ndarray]],
    must_vanish: Iterable[int],
    n: int,
    tol: float,
    label: str,
) -> VerificationReport:
    """Sector blocks of each operator against expected matrices.

    Blocks listed in expected_blocks are compared entrywise, sectors in
    must_vanish must be zero, other sectors are unconstrained; off-block
    entries count against every operator.
    """
    vanish = set(must_vanish)
    report = VerificationReport({"label": label, "tol": tol})
    for a, op in enumerate(rep):
        t0 = time.perf_counter()
        dec = block_decompose(op)
        worst = dec.off_block_norm
        for m in range(n + 1):
            block = dec.blocks[m]
            if m in expected_blocks:
                worst = max(worst, float(np.max(np.abs(block - expected_blocks[m][a]))))
            elif m in vanish and block.size:
                worst = max(worst, float(np.max(np.abs(block))))
        report.add(f"{label}/{a + 1:03d}", worst, tol, time.perf_counter() - t0)
    return report


def _outer_product_check(
    units: Sequence[FockOperator], n: int, m: int, tol: float, label: str
) -> VerificationReport:
    """Each unit operator against the literal basis outer product."""
    report = VerificationReport({"label": label, "tol": tol})
    idx = fock.sector_indices(n, m)
    k = len(idx)
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(k):
        for j in range(k):
            expected = FockOperator.from_entries(n, {(idx[i], idx[j]): 1})
            worst = max(worst, units[i * k + j].diff_max(expected))
    report.add(label, worst, tol, time.perf_counter() - t0)
    return report


def run_suite(
    n_max: int,
    tol: float = DEFAULT_TOL,
    *,
    max_sector_dim: int = 10,
    eij_samples: int = 2000,
    seed: int = 0,
    annihilation_source: Callable[[int, int], FockOperator] | None = None,
) -> VerificationReport:
    """Run the full identity catalogue for all mode counts up to n_max.

    Covers the anticommutation relations, closure of the bilinear and
    number-selective representations, the spin-1 quadratic
    reconstruction, the explicit-vs-uniform three-mode comparison, the
    sector unit-operator algebra, number-commutant checks, and the block
    equalities.  Sector constructions whose dimension C(n, m) exceeds
    max_sector_dim only get a fixed-seed sampled unit-algebra check;
    their full closure is skipped to keep the runtime and the
    structure-constant tensors bounded.

    annihilation_source replaces the builder feeding the anticommutation
    family; it exists so fault-injection tests can corrupt the input.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    cap = fock.mode_capacity()
    if n_max > cap:
        raise CapacityError(f"n_max {n_max} exceeds capacity {cap}")

    report = VerificationReport(
        {
            "n_max": n_max,
            "tol": tol,
            "max_sector_dim": max_sector_dim,
            "eij_samples": eij_samples,
            "seed": seed,
        }
    )
    for n in range(1, n_max + 1):
        report.extend(
            check_anticommutation(n, tol, annihilation_source=annihilation_source)
        )
    for n in range(2, n_max + 1):
        gens = liealg.generalized_gell_mann(n)
        sc = liealg.structure_constants(gens)
        conj = liealg.conjugate_rep(gens)

        std = schwinger.standard_rep(gens, n)
        report.extend(check_closure(std, sc, tol, label=f"closure/standard/n{n:02d}"))
        report.extend(
            check_number_commutant(std, n, tol, label=f"numcomm/standard/n{n:02d}")
        )
        report.extend(
            _block_equality_checks(
                std,
                {1: gens.mats, n - 1: conj.mats} if n > 2 else {1: gens.mats},
                (0, n),
                n,
                tol,
                label=f"block/standard/n{n:02d}",
            )
        )

        if n >= 3:
            nssfr = schwinger.nssfr_un(gens, n)
            report.extend(
                check_closure(nssfr, sc, tol, label=f"closure/nssfr/n{n:02d}")
            )
            report.extend(
                check_number_commutant(nssfr, n, tol, label=f"numcomm/nssfr/n{n:02d}")
            )
            report.extend(
                _block_equality_checks(
                    nssfr,
                    {1: gens.mats, n - 1: gens.mats},
                    (m for m in range(n + 1) if m not in (1, n - 1)),
                    n,
                    tol,
                    label=f"block/nssfr/n{n:02d}",
                )
            )

        if n == 3:
            gm = liealg.gell_mann()
            rebuilt = liealg.gellmann_from_spin1()
            rec = VerificationReport()
            t0 = time.perf_counter()
            worst = max(
                float(np.max(np.abs(a - b)))
                for a, b in zip(rebuilt.mats, gm.mats)
            )
            rec.add("reconstruct/spin1-quadratic", worst, tol, time.perf_counter() - t0)
            report.extend(rec)
            report.extend(
                compare_ops(
                    schwinger.nssfr_u3_explicit(),
                    schwinger.nssfr_un(gm, 3),
                    tol,
                    label="compare/u3-explicit-vs-uniform",
                )
            )
            report.extend(
                check_closure(
                    schwinger.nssfr_u3_explicit(),
                    liealg.structure_constants(gm),
                    tol,
                    label="closure/u3-explicit",
                )
            )

        for m in range(1, n):
            kdim = fock.sector_dimension(n, m)
            units = schwinger.element_operators(n, m)
            report.extend(
                _outer_product_check(
                    units, n, m, tol, label=f"outer/n{n:02d}m{m:02d}"
                )
            )
            report.extend(
                check_number_commutant(
                    units, n, tol, label=f"numcomm/sector/n{n:02d}m{m:02d}"
                )
            )
            if kdim <= max_sector_dim:
                report.extend(
                    check_eij_algebra(
                        units, kdim, tol, label=f"eij/n{n:02d}m{m:02d}"
                    )
                )
                sector_gens = liealg.generalized_gell_mann(kdim)
                sector_sc = liealg.structure_constants(sector_gens)
                sector_rep = schwinger.rep_ucnm(sector_gens, n, m)
                report.extend(
                    check_closure(
                        sector_rep,
                        sector_sc,
                        tol,
                        label=f"closure/sector/n{n:02d}m{m:02d}",
                    )
                )
                report.extend(
                    _block_equality_checks(
                        sector_rep,
                        {m: sector_gens.mats},
                        (s for s in range(n + 1) if s != m),
                        n,
                        tol,
                        label=f"block/sector/n{n:02d}m{m:02d}",
                    )
                )
            else:
                report.extend(
                    check_eij_algebra(
                        units,
                        kdim,
                        tol,
                        label=f"eij/n{n:02d}m{m:02d}",
                        samples=eij_samples,
                        seed=seed,
                    )
                )
    report.sort_by_name()
    return report
