# src/anumrad/harness.py

"""Instance generation, seeded fuzzing, reference-value reproduction and
report serialization.

Determinism contract: every random quantity flows from a per-trial child seed
derived with ``seeding.splitmix64(master_seed, trial)``, so serial and
parallel execution (and repeated runs) produce identical reports. Floats are
serialized at 12 significant digits; reports are byte-stable at that
precision.

Wire format: complex scalars are two-element ``[re, im]`` arrays; matrices
are row-major nested lists of those pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import catalog
from .adjoint import admits_a_adjoint, sharp
from .catalog import CheckResult, resolve_ids, run_all, run_check
from .errors import BadRank, NoAdjoint, ReproMismatch
from .frame import AFrame, new_frame
from .gauges import DEFAULT_SWEEP, SweepConfig, a_numerical_radius, a_seminorm
from .matrixcore import as_cmatrix, frob, herm_part
from .seeding import splitmix64

TOOL_VERSION = "0.1.0"

RANK_POLICIES = ("full", "mixed", "degenerate-heavy")

OPERAND_NAMES = ("T", "X", "Y", "P", "Q")

_SPECTRUM_FLOOR = 1e-3
_SPECTRUM_CEIL = 1e3


# --------------------------------------------------------------------------
# Generators
# --------------------------------------------------------------------------

def gen_psd(n: int, rank: int, seed: int) -> np.ndarray:
    """Hermitian PSD matrix of exact numerical rank ``rank``.

    Built as G G* from an n x rank complex Gaussian factor, then rescaled so
    the nonzero spectrum is geometrically centered at 1 and clamped into
    [1e-3, 1e3]. Deterministic in ``seed``.
    """
    if not 0 <= rank <= n:
        raise BadRank(f"rank {rank} out of range for dimension {n}")
    if rank == 0:
        return np.zeros((n, n), dtype=np.complex128)
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))) / math.sqrt(2.0)
    a = g @ g.conj().T
    lam, v = np.linalg.eigh(herm_part(a))
    lam = np.clip(lam, 0.0, None)
    kept = lam[n - rank:]
    lo, hi = float(kept[0]), float(kept[-1])
    scale = 1.0 / math.sqrt(lo * hi) if lo > 0 else 1.0 / max(hi, 1.0)
    spectrum = np.zeros(n)
    spectrum[n - rank:] = np.clip(kept * scale, _SPECTRUM_FLOOR, _SPECTRUM_CEIL)
    return herm_part((v * spectrum) @ v.conj().T)


def gen_compatible(f: AFrame, seed: int) -> np.ndarray:
    """Random operator leaving the null space of A invariant.

    Drawn blockwise in the orthonormal basis [range | null] with the
    (range-row, null-column) block zeroed, so the Douglas condition holds by
    construction for every output.
    """
    rng = np.random.default_rng(seed)
    n, r = f.dim, f.rank
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    g[:r, r:] = 0.0
    basis = np.hstack([f.range_u, f.null_u])
    return basis @ g @ basis.conj().T


# --------------------------------------------------------------------------
# Instances
# --------------------------------------------------------------------------

@dataclass
class Instance:
    """Serializable problem instance: metric, named operators, seed, note."""

    dim: int
    a: np.ndarray
    operators: Dict[str, np.ndarray]
    seed: int
    note: str = ""


def make_instance(n: int, rank: int, seed: int,
                  names: Sequence[str] = OPERAND_NAMES) -> Instance:
    a = gen_psd(n, rank, splitmix64(seed, 0))
    f = new_frame(a)
    ops = {
        name: gen_compatible(f, splitmix64(seed, j + 1))
        for j, name in enumerate(names)
    }
    return Instance(dim=n, a=a, operators=ops, seed=seed, note=f"n={n} rank={rank}")


def validate_instance(inst: Instance, rank_tol: float = 1e-10) -> AFrame:
    """Frame construction plus admissibility of every operator."""
    f = new_frame(inst.a, rank_tol)
    if f.dim != inst.dim:
        raise ValueError(f"instance dim {inst.dim} does not match metric {f.dim}")
    for name, op in inst.operators.items():
        op = as_cmatrix(op)
        if op.shape != (inst.dim, inst.dim):
            raise ValueError(f"operator {name!r} has shape {op.shape}, expected "
                             f"({inst.dim}, {inst.dim})")
        if not admits_a_adjoint(f, op):
            raise NoAdjoint(f"operator {name!r} does not admit an A-adjoint")
    return f


def mat_to_wire(m) -> list:
    m = as_cmatrix(m)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def mat_from_wire(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("matrix wire format must be rows of [re, im] pairs")
    return as_cmatrix(arr[:, :, 0] + 1j * arr[:, :, 1])


def instance_to_dict(inst: Instance) -> dict:
    return {
        "dim": int(inst.dim),
        "A": mat_to_wire(inst.a),
        "operators": {k: mat_to_wire(v) for k, v in sorted(inst.operators.items())},
        "seed": int(inst.seed),
        "note": str(inst.note),
    }


def instance_from_dict(d: dict) -> Instance:
    dim = int(d["dim"])
    a = mat_from_wire(d["A"])
    ops = {str(k): mat_from_wire(v) for k, v in d.get("operators", {}).items()}
    return Instance(dim=dim, a=a, operators=ops,
                    seed=int(d.get("seed", 0)), note=str(d.get("note", "")))


def save_instance(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(inst), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------

@dataclass
class FuzzConfig:
    trials: int
    master_seed: int = 0
    n_min: int = 2
    n_max: int = 6
    rank_policy: str = "mixed"
    tol: float = catalog.DEFAULT_TOL
    checks: Optional[Sequence[str]] = None
    explore: bool = False
    sweep: SweepConfig = field(default_factory=lambda: DEFAULT_SWEEP)

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be nonnegative")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.rank_policy not in RANK_POLICIES:
            raise ValueError(f"rank_policy must be one of {RANK_POLICIES}")


@dataclass
class Report:
    tool_version: str
    master_seed: int
    trials: int
    rows: List[dict]
    summary: dict


def _row(trial: int, res: CheckResult) -> dict:
    return {
        "trial": trial,
        "check_id": res.check_id,
        "lhs": res.lhs,
        "rhs": res.rhs,
        "slack": res.slack,
        "pass": bool(res.passed),
        "skipped": bool(res.skipped),
    }


def _isnan(x) -> bool:
    return isinstance(x, float) and math.isnan(x)


def _summarize(rows: List[dict], trial_seeds: List[int], ids: Sequence[str],
               top: Optional[int] = None) -> dict:
    per: Dict[str, dict] = {}
    for cid in ids:
        per[cid] = {
            "evaluated": 0,
            "skipped": 0,
            "violations": 0,
            "min_slack": None,
            "min_rel_slack": None,
            "sharpest_seed": None,
        }
        if top is not None:
            per[cid]["top"] = []
    candidates: Dict[str, list] = {cid: [] for cid in ids}
    for row in rows:
        entry = per[row["check_id"]]
        if row["skipped"]:
            entry["skipped"] += 1
            continue
        entry["evaluated"] += 1
        if not row["pass"]:
            entry["violations"] += 1
        slack = row["slack"]
        if _isnan(slack):
            continue
        rel = slack / (1.0 + abs(row["rhs"]))
        seed = trial_seeds[row["trial"]]
        candidates[row["check_id"]].append((rel, slack, seed))
        if entry["min_slack"] is None or slack < entry["min_slack"]:
            entry["min_slack"] = slack
        if entry["min_rel_slack"] is None or rel < entry["min_rel_slack"]:
            entry["min_rel_slack"] = rel
            entry["sharpest_seed"] = seed
    if top is not None:
        for cid, cand in candidates.items():
            cand.sort(key=lambda t: t[0])
            per[cid]["top"] = [
                {"seed": seed, "rel_slack": rel, "slack": slack}
                for rel, slack, seed in cand[:top]
            ]
    violations = sum(e["violations"] for e in per.values())
    return {"rows": len(rows), "violations": violations, "checks": per}


def _rank_for_policy(rng: np.random.Generator, n: int, policy: str) -> int:
    if policy == "full":
        return n
    if policy == "mixed":
        return int(rng.integers(1, n + 1))
    return int(rng.integers(1, max(1, n // 2) + 1))  # degenerate-heavy


def fuzz(config: FuzzConfig, top: Optional[int] = None) -> Report:
    """Seeded random-instance sweep over the (filtered) check registry.

    Exit contract: zero violations expected; any violation indicates an
    implementation bug, since every registered statement is a theorem on its
    hypothesis domain.
    """
    ids = resolve_ids(config.checks)
    rows: List[dict] = []
    trial_seeds: List[int] = []
    trial_errors: List[dict] = []
    for trial in range(config.trials):
        child = splitmix64(config.master_seed, trial)
        trial_seeds.append(child)
        trng = np.random.default_rng(child)
        n = int(trng.integers(config.n_min, config.n_max + 1))
        rank = _rank_for_policy(trng, n, config.rank_policy)
        try:
            inst = make_instance(n, rank, child)
            f = new_frame(inst.a)
            params = {"seed": child, "explore": config.explore}
            results = run_all(f, inst.operators, params, config.sweep,
                              config.tol, checks=ids)
            rows.extend(_row(trial, res) for res in results)
        except Exception as exc:  # noqa: BLE001 - never abort the sweep
            nan = float("nan")
            for cid in ids:
                rows.append({
                    "trial": trial, "check_id": cid, "lhs": nan, "rhs": nan,
                    "slack": nan, "pass": False, "skipped": False,
                })
            trial_errors.append({"trial": trial, "error": f"{type(exc).__name__}: {exc}"})
    summary = _summarize(rows, trial_seeds, ids, top=top)
    if trial_errors:
        summary["trial_errors"] = trial_errors
    return Report(
        tool_version=TOOL_VERSION,
        master_seed=config.master_seed,
        trials=config.trials,
        rows=rows,
        summary=summary,
    )


def scan_sharpness(config: FuzzConfig, top: int = 10) -> Report:
    """Fuzz run whose summary ranks instances by smallest relative slack, so
    near-equality cases are easy to pull out and inspect."""
    return fuzz(config, top=top)


# --------------------------------------------------------------------------
# Reference-value reproduction
# --------------------------------------------------------------------------

def repro_paper(cfg: SweepConfig = DEFAULT_SWEEP) -> Report:
    """Re-derive the hard-coded reference quantities and assert each one.

    Raises ReproMismatch naming every quantity that fails its 1e-9 window.
    """
    tol = 1e-9
    rows: List[dict] = []
    failures: List[str] = []

    def record(trial: int, name: str, lhs: float, rhs: float, ok: bool) -> None:
        rows.append({
            "trial": trial, "check_id": name, "lhs": float(lhs), "rhs": float(rhs),
            "slack": float(rhs - lhs), "pass": bool(ok), "skipped": False,
        })
        if not ok:
            failures.append(name)

    # 1. The classic 2x2 pair where the adjoint does not exist.
    f0 = new_frame(np.array([[0.0, 0.0], [0.0, 1.0]]))
    t0 = np.array([[0.0, 1.0], [1.0, 0.0]])
    admits = admits_a_adjoint(f0, t0)
    record(0, "repro_no_adjoint", 1.0 if admits else 0.0, 0.0, not admits)

    # 2. Refined fourth-power bound: rhs = 39/16, plain comparison = 49/16.
    f1 = new_frame(np.eye(3))
    t1 = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 2.0], [0.0, 0.0, 0.0]])
    res = run_check("thm_refined_fourth", f1, {"T": t1}, cfg=cfg)
    record(1, "repro_refined_rhs_39_16", res.rhs, 39.0 / 16.0,
           abs(res.rhs - 39.0 / 16.0) <= tol)
    comparison = float(res.metadata["comparison_rhs"])
    record(1, "repro_comparison_49_16", comparison, 49.0 / 16.0,
           abs(comparison - 49.0 / 16.0) <= tol)

    # 3. Equality without nilpotency: w_A(T) = sqrt(||TT#+T#T||_A)/2 = 1
    #    while T^2 is nonzero.
    f2 = new_frame(np.eye(3))
    t2 = np.array([[0.0, 2.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    w = a_numerical_radius(f2, t2, cfg)
    record(2, "repro_w_equals_one", w, 1.0, abs(w - 1.0) <= tol)
    s = sharp(f2, t2)
    half_sqrt = 0.5 * math.sqrt(a_seminorm(f2, t2 @ s + s @ t2))
    record(2, "repro_half_sqrt_norm_one", half_sqrt, 1.0,
           abs(half_sqrt - 1.0) <= tol)
    t2_sq = frob(t2 @ t2)
    record(2, "repro_t2_frobenius_one", t2_sq, 1.0,
           abs(t2_sq - 1.0) <= tol and t2_sq > 0.0)

    report = Report(
        tool_version=TOOL_VERSION,
        master_seed=0,
        trials=3,
        rows=rows,
        summary=_summarize(rows, [0, 1, 2], [r["check_id"] for r in rows]),
    )
    if failures:
        exc = ReproMismatch("reference mismatch: " + ", ".join(failures))
        exc.report = report
        raise exc
    return report


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

def _clean(x):
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return None
        return float(f"{x:.12g}")
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def report_to_json(report: Report) -> str:
    obj = {
        "tool_version": report.tool_version,
        "master_seed": report.master_seed,
        "trials": report.trials,
        "rows": _clean(report.rows),
        "summary": _clean(report.summary),
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_num(x: float) -> str:
    if _isnan(x):
        return "nan"
    return f"{x:.12g}"


def report_to_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "check_id", "lhs", "rhs", "slack", "pass", "skipped"])
    for row in report.rows:
        writer.writerow([
            row["trial"],
            row["check_id"],
            _csv_num(row["lhs"]),
            _csv_num(row["rhs"]),
            _csv_num(row["slack"]),
            str(bool(row["pass"])).lower(),
            str(bool(row["skipped"])).lower(),
        ])
    return buf.getvalue()


def violation_count(report: Report) -> int:
    return int(report.summary.get("violations", 0))


def exit_code_for(report: Report) -> int:
    return 1 if violation_count(report) else 0
