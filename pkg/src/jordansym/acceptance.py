"""Acceptance suite shared by ``jordansym selftest`` and the test-suite.

Every criterion is a function ``(config) -> CriterionResult`` built on
independent oracles where one exists. Sample counts are multiplied by
``config.scale`` (1.0 is the full desk-scale run).
"""

import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import matrixcore as mc
from .algebra import AlgebraElement, BlockAlgebra, is_positive
from .bloch import Orientation, bloch_to_density, corner_determinant, density_to_bloch, orientation_of, sphere_tp
from .errors import OracleInconsistent
from .extraction import ImplementingOperator, extract_unitary, phase_distance, verify_implementation
from .rand import (random_canonical_form, random_effect, random_jordan, random_positive,
                   random_pure_state, random_state, random_unitary)
from .states import PureState, carrier, tp_all, tp_amplitude, tp_inf_witness
from .symmetry import (CanonicalForm, JordanMap, KadisonView, check_herstein_identities,
                       jordan_from_wigner, kadison_apply, wigner_from_jordan)
from .thomsen import Label, thomsen_decompose

TP_SHAPES = ((3,), (2, 2), (5, 3, 1), (8,))
HERSTEIN_SHAPES = ((2,), (3,), (2, 2), (5, 3, 1), (8,))
RECONSTRUCT_SHAPES = ((2, 2), (4, 3, 1))
EXTRACT_SIZES = (2, 3, 5, 8)


@dataclass
class Tolerances:
    """Named tolerances; each can be overridden from the command line."""

    tp: float = 1e-9
    distance: float = 1e-8
    herstein: float = 1e-8
    thomsen: float = 1e-9
    uniqueness: float = 1e-8
    extraction: float = 1e-8
    reconstruction: float = 1e-8
    bloch: float = 1e-12
    roundtrip: float = 1e-10
    orientation: float = 1e-9
    unit: float = 1e-9
    positivity: float = 1e-8
    infimum: float = 1e-8
    carrier: float = 1e-9
    selftest_seconds: float = 60.0

    @classmethod
    def names(cls):
        return [f.name for f in fields(cls)]


@dataclass
class AcceptanceConfig:
    seed: int = 0
    scale: float = 1.0
    tol: Tolerances = field(default_factory=Tolerances)

    def count(self, n) -> int:
        return max(1, int(round(n * self.scale)))

    def rng(self, criterion) -> np.random.Generator:
        # independent stream per criterion, so criteria can run in any order
        return np.random.default_rng([self.seed, criterion])


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict
    elapsed: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.number:2d} {self.name} ({self.elapsed:.2f}s)"

    def to_json(self) -> dict:
        # wall-clock times stay out of JSON so reports are reproducible
        return {"number": self.number, "name": self.name, "passed": bool(self.passed),
                "details": self.details}


def _pair_same_block(algebra, rng):
    w1 = random_pure_state(algebra, rng)
    return w1, random_pure_state(algebra, rng, block=w1.block)


def criterion_tp_equivalence(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(1)
    worst, n = 0.0, cfg.count(1000)
    for t in range(n):
        A = BlockAlgebra(TP_SHAPES[t % len(TP_SHAPES)])
        # alternate independent draws (often cross-block) with same-block pairs
        if t % 2:
            w1, w2 = _pair_same_block(A, rng)
        else:
            w1, w2 = random_pure_state(A, rng), random_pure_state(A, rng)
        worst = max(worst, tp_all(w1, w2)["max_deviation"])
    return {"passed": worst < cfg.tol.tp, "pairs": n, "max_deviation": worst}


def _two_by_two_trace_norm(w1: PureState, w2: PureState) -> float:
    """Trace norm of the difference from the 2x2 compression to span{psi, psi'}."""
    if len(w1.psi) == 1:
        return 0.0
    q, _ = np.linalg.qr(np.column_stack([w1.psi, w2.psi]))
    d = mc.adjoint(q) @ (w1.projector() - w2.projector()) @ q
    # traceless hermitian 2x2: eigenvalues +-sqrt(-det)
    det = (d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]).real
    return 2 * np.sqrt(max(-det, 0.0))


def criterion_distance_identity(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(2)
    worst_lib = worst_oracle = 0.0
    n = cfg.count(1000)
    for t in range(n):
        A = BlockAlgebra(TP_SHAPES[t % len(TP_SHAPES)])
        w1, w2 = _pair_same_block(A, rng)
        target = 2 * np.sqrt(1 - tp_amplitude(w1, w2))
        lib = sum(mc.trace_norm(b) for b in (w1.density() - w2.density()).blocks)
        worst_lib = max(worst_lib, abs(lib - target))
        worst_oracle = max(worst_oracle, abs(_two_by_two_trace_norm(w1, w2) - target))
    worst = max(worst_lib, worst_oracle)
    return {"passed": worst < cfg.tol.distance, "pairs": n,
            "max_library_deviation": worst_lib, "max_oracle_deviation": worst_oracle}


def corrupted_map(algebra: BlockAlgebra, rng) -> JordanMap:
    """A genuine symmetry with one matrix column perturbed (no longer Jordan)."""
    J = random_jordan(algebra, rng)
    M = J.matrix.copy()
    M[:, 0] += 0.5 * rng.standard_normal(M.shape[0])
    return JordanMap(algebra, M)


def criterion_herstein(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(3)
    n = cfg.count(50)
    worst, failures = 0.0, []
    for dims in HERSTEIN_SHAPES:
        A = BlockAlgebra(dims)
        for k in range(n):
            J = random_jordan(A, rng)
            rep = check_herstein_identities(J, trials=2, seed=int(rng.integers(2**32)),
                                            tol=cfg.tol.herstein)
            worst = max(worst, rep.max_residual)
            if not rep.passed:
                failures.append({"dims": list(dims), "map": k, "witness": rep.witness})
    bad = corrupted_map(BlockAlgebra((2, 2)), rng)
    control = check_herstein_identities(bad, trials=5, seed=1, tol=cfg.tol.herstein)
    witness = control.details["witnesses"].get("iii")
    passed = not failures and not control.passed and witness is not None
    return {"passed": passed, "maps_per_shape": n, "max_residual": worst,
            "failures": failures[:5], "control_witness_iii": witness}


def thomsen_fixture() -> JordanMap:
    """id + transpose + id on M_2 + M_3 + C."""
    A = BlockAlgebra((2, 3, 1))
    return CanonicalForm(A, (0, 1, 2), tuple(np.eye(n) for n in A.dims),
                         (False, True, False)).jordan()


def criterion_thomsen(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(4)
    J = thomsen_fixture()
    A = J.algebra
    dec = thomsen_decompose(J)
    expected = [A.block_identity(i).dense() for i in range(3)]
    entry = max(float(np.max(np.abs(p.dense() - e)))
                for p, e in zip((dec.p1, dec.p2, dec.p3), expected))
    labels_ok = dec.labels == (Label.HOM, Label.ANTI, Label.BOTH)
    spread = 0.0
    for _ in range(cfg.count(5)):
        order = rng.permutation(A.real_dim)
        other = thomsen_decompose(J, basis_order=order)
        spread = max(spread, *(float(np.max(np.abs(p.dense() - q.dense())))
                               for p, q in ((dec.p1, other.p1), (dec.p2, other.p2),
                                            (dec.p3, other.p3))))
    passed = entry < cfg.tol.thomsen and labels_ok and spread < cfg.tol.uniqueness
    return {"passed": passed, "max_entry_deviation": entry,
            "labels": [lab.value for lab in dec.labels], "permutation_spread": spread}


def criterion_extraction(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(5)
    n_maps = cfg.count(100)
    worst_phase = worst_impl = 0.0
    for n in EXTRACT_SIZES:
        A = BlockAlgebra((n,))
        for anti in (False, True):
            for _ in range(n_maps):
                u = random_unitary(n, rng)
                J = CanonicalForm(A, (0,), (u,), (anti,)).jordan()
                op = extract_unitary(J, 0)
                worst_phase = max(worst_phase,
                                  phase_distance(op, ImplementingOperator(0, u, anti)))
                worst_impl = max(worst_impl, verify_implementation(J, op).max_residual)
    passed = max(worst_phase, worst_impl) < cfg.tol.extraction
    return {"passed": passed, "cases": 2 * n_maps * len(EXTRACT_SIZES),
            "max_phase_distance": worst_phase, "max_implementation_residual": worst_impl}


def non_unitary_oracle_form(algebra: BlockAlgebra, rng) -> CanonicalForm:
    """Canonical-form data whose first operator is invertible but not unitary."""
    form = random_canonical_form(algebra, rng)
    us = list(form.unitaries)
    n = algebra.dims[0]
    us[0] = us[0] @ np.diag(np.linspace(1.0, 2.0, n))
    return CanonicalForm(algebra, form.permutation, tuple(us), form.antiunitary)


def criterion_reconstruction(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(6)
    n = cfg.count(50)
    worst = 0.0
    for dims in RECONSTRUCT_SHAPES:
        A = BlockAlgebra(dims)
        for _ in range(n):
            J = random_jordan(A, rng)
            J2 = jordan_from_wigner(wigner_from_jordan(J), seed=int(rng.integers(2**32)))
            worst = max(worst, float(np.linalg.norm(J.matrix - J2.matrix)))
    control_raised = False
    try:
        jordan_from_wigner(non_unitary_oracle_form(BlockAlgebra((2, 2)), rng).oracle())
    except OracleInconsistent:
        control_raised = True
    return {"passed": worst < cfg.tol.reconstruction and control_raised,
            "maps_per_shape": n, "max_residual": worst, "control_raised": control_raised}


def _unit_vectors(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def criterion_bloch(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(7)
    n = cfg.count(1000)
    xs, ys = _unit_vectors(rng, n), _unit_vectors(rng, n)
    tp_dev = max(max(abs(np.trace(bloch_to_density(x) @ bloch_to_density(y)).real
                         - 0.5 * (1 + x @ y)),
                     abs(sphere_tp(x, y) - 0.5 * (1 + x @ y)))
                 for x, y in zip(xs, ys))
    # uniform points of the ball
    pts = _unit_vectors(rng, n) * rng.random((n, 1)) ** (1 / 3)
    det_dev = max(abs(np.linalg.det(bloch_to_density(v)).real - 0.25 * (1 - v @ v)) for v in pts)
    rt_dev = max(float(np.max(np.abs(density_to_bloch(bloch_to_density(v)) - v))) for v in pts)
    passed = tp_dev < cfg.tol.bloch and det_dev < cfg.tol.bloch and rt_dev < cfg.tol.roundtrip
    return {"passed": passed, "points": n, "max_tp_deviation": float(tp_dev),
            "max_det_deviation": float(det_dev), "max_roundtrip_deviation": rt_dev}


def criterion_orientation(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(8)
    tol = cfg.tol.orientation
    problems = []
    n = cfg.count(10)

    def check(J, verdict, sign, tag):
        rep = orientation_of(J, seed=int(rng.integers(2**32)))
        if rep.verdict != verdict:
            problems.append({"case": tag, "verdict": rep.verdict.value})
        for c in rep.corner_checks:
            want = sign if sign is not None else (1 if rep.block_labels[c["block"]] == Label.HOM else -1)
            if abs(c["det_value"] - want) >= tol or c["residual"] >= tol:
                problems.append({"case": tag, "block": c["block"], "det": c["det_value"]})

    for k in range(n):
        for dims in ((2,), (3,), (4, 3, 1)):
            A = BlockAlgebra(dims)
            check(random_jordan(A, rng, transpose=False), Orientation.PRESERVING, 1, f"hom{dims}")
            check(random_jordan(A, rng, transpose=True), Orientation.REVERSING, -1, f"anti{dims}")
    A = BlockAlgebra((2, 2))
    mixed = CanonicalForm(A, (0, 1), (np.eye(2), np.eye(2)), (False, True)).jordan()
    check(mixed, Orientation.MIXED, None, "id+transpose")
    check(JordanMap.identity(BlockAlgebra((1, 1, 1))), Orientation.TRIVIAL, None, "commutative")

    chart_mismatch = 0
    for k in range(n):
        A = BlockAlgebra((4,))
        J = random_jordan(A, rng)
        w1, w2 = random_pure_state(A, rng, 0), random_pure_state(A, rng, 0)
        d1, _ = corner_determinant(J, w1, w2)
        d2, _ = corner_determinant(J, w1, w2, second=rng.standard_normal(4),
                                   image_first=rng.standard_normal(4) + 1j * rng.standard_normal(4))
        chart_mismatch += np.sign(d1) != np.sign(d2)
    passed = not problems and chart_mismatch == 0
    return {"passed": passed, "problems": problems[:5], "chart_sign_mismatches": int(chart_mismatch)}


def criterion_positivity(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(9)
    n = cfg.count(20)
    unit, floor = 0.0, np.inf
    state_failures = 0
    for dims in TP_SHAPES + ((4, 3, 1),):
        A = BlockAlgebra(dims)
        for _ in range(n):
            J = random_jordan(A, rng)
            unit = max(unit, (J(A.identity()) - A.identity()).norm())
            image = J(random_positive(A, rng))
            floor = min(floor, min(np.linalg.eigvalsh(0.5 * (b + mc.adjoint(b)))[0]
                                   for b in image.blocks))
            try:
                out = kadison_apply(KadisonView(J), random_state(A, rng))
                traces = sum(np.trace(r).real for r in out.rho)
                if abs(traces - 1) > 1e-10 or not is_positive(AlgebraElement(A, out.rho)):
                    state_failures += 1
            except ValueError:
                state_failures += 1
    passed = unit < cfg.tol.unit and floor >= -cfg.tol.positivity and state_failures == 0
    return {"passed": passed, "max_unit_residual": float(unit), "eigenvalue_floor": float(floor),
            "state_failures": state_failures}


def criterion_infimum(cfg: AcceptanceConfig) -> dict:
    rng = cfg.rng(10)
    pairs, per = cfg.count(100), cfg.count(100)
    worst_gap = np.inf
    carrier_dev = 0.0
    for t in range(pairs):
        A = BlockAlgebra(TP_SHAPES[t % len(TP_SHAPES)])
        w1, w2 = (_pair_same_block(A, rng) if t % 2 else
                  (random_pure_state(A, rng), random_pure_state(A, rng)))
        tau = tp_amplitude(w1, w2)
        for _ in range(per):
            worst_gap = min(worst_gap, tp_inf_witness(w1, w2, random_effect(A, rng, w2)) - tau)
        carrier_dev = max(carrier_dev, abs(tp_inf_witness(w1, w2, carrier(w2)) - tau))
    passed = worst_gap >= -cfg.tol.infimum and carrier_dev < cfg.tol.carrier
    return {"passed": passed, "witnesses": pairs * per, "min_gap": float(worst_gap),
            "carrier_deviation": carrier_dev}


CRITERIA = {
    1: ("transition-probability formulas agree", criterion_tp_equivalence),
    2: ("pure-state distance identity", criterion_distance_identity),
    3: ("Herstein identities", criterion_herstein),
    4: ("central decomposition fixture", criterion_thomsen),
    5: ("unitary extraction round trip", criterion_extraction),
    6: ("reconstruction from pure-state map", criterion_reconstruction),
    7: ("Bloch-ball identities", criterion_bloch),
    8: ("orientation classification", criterion_orientation),
    9: ("positivity and unitality", criterion_positivity),
    10: ("infimum dominance", criterion_infimum),
}


def run_criterion(number: int, cfg: AcceptanceConfig = None) -> CriterionResult:
    cfg = cfg or AcceptanceConfig()
    name, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        details = fn(cfg)
    except Exception as exc:  # a crash is a failed criterion, not a crashed run
        details = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
    passed = bool(details.pop("passed"))
    return CriterionResult(number, name, passed, details, time.perf_counter() - start)


def run_all(cfg: AcceptanceConfig = None) -> list:
    """Criteria 1-10, then 11: the whole run finished inside the time budget."""
    cfg = cfg or AcceptanceConfig()
    start = time.perf_counter()
    results = [run_criterion(k, cfg) for k in CRITERIA]
    total = time.perf_counter() - start
    ok = all(r.passed for r in results) and total < cfg.tol.selftest_seconds
    results.append(CriterionResult(11, "self-test end to end", ok,
                                   {"budget_seconds": cfg.tol.selftest_seconds}, total))
    return results


def config_json(cfg: AcceptanceConfig) -> dict:
    return {"seed": cfg.seed, "scale": cfg.scale, "tol": asdict(cfg.tol)}
