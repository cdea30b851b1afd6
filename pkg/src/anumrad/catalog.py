# src/anumrad/catalog.py

"""Registry of executable inequality checks on A-weighted gauges.

Every check compares a left-hand side against a right-hand side at a
relative tolerance and reports a structured CheckResult. Multi-part
statements are registered as atomic sub-checks (``_lower``/``_upper``,
``_plus``/``_minus``, roman numerals); the family name is a common prefix, so
id filters accept either the exact id or a family prefix.

Hypothesis gating: checks whose statement assumes a strictly positive metric
are *skipped* (never failed) on degenerate frames; the same applies to the
nilpotency-conditional equality checks and to the lower bounds that divide by
the operator seminorm. Exploration mode (``params={"explore": True}``)
evaluates strict-metric checks on degenerate frames anyway, still reporting
them as skipped, with the values recorded as outside-hypothesis metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .adjoint import reduced, sharp
from .errors import UnknownCheckId
from .frame import AFrame, direct_sum
from .gauges import DEFAULT_SWEEP, SweepConfig, a_positive_power, sweep_gauges
from .matrixcore import as_cmatrix, frob, singular_values, spec_norm
from .seeding import label_seed

DEFAULT_TOL = 1e-8

_POINTWISE_SAMPLES = 50


@dataclass(frozen=True)
class CheckResult:
    """One inequality evaluation: lhs vs rhs with slack = rhs - lhs."""

    check_id: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    hypothesis_met: bool
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def skipped(self) -> bool:
        return not self.hypothesis_met


@dataclass(frozen=True)
class CheckDef:
    """Registry row: id, comparison mode, hypothesis and evaluator."""

    check_id: str
    mode: str  # 'le' (lhs <= rhs) or 'eq' (lhs == rhs)
    hypothesis: str  # 'always' | 'strict' | 'strict_nonzero_t' | 'nilpotent2' | 'nilpotent3' | 'power'
    roles: Tuple[str, ...]
    evaluate: Callable[["_Ctx"], Tuple[float, float, Dict[str, object]]]
    abs_tol: Optional[float] = None
    param_r: Optional[float] = None
    description: str = ""


REGISTRY: "Dict[str, CheckDef]" = {}


def registry_ids() -> list[str]:
    return sorted(REGISTRY)


def resolve_ids(checks: Optional[Sequence[str]]) -> list[str]:
    """Expand exact ids and family prefixes into sorted registry ids."""
    if not checks:
        return registry_ids()
    out = set()
    for pat in checks:
        hits = [cid for cid in REGISTRY if cid == pat or cid.startswith(pat)]
        if not hits:
            raise UnknownCheckId(pat)
        out.update(hits)
    return sorted(out)


class _Ctx:
    """Per-instance evaluation context: frame, sweep config and gauge caches.

    Gauges are memoized by matrix bytes so that checks sharing intermediate
    operators (the same T^2, the same assembled block, ...) pay for each
    sweep once per instance.
    """

    def __init__(self, f: AFrame, operands, params, cfg: SweepConfig):
        self.f = f
        self.cfg = cfg
        self.params = dict(params or {})
        self._ops = {k: as_cmatrix(v) for k, v in dict(operands or {}).items()}
        self._sharp: dict = {}
        self._red: dict = {}
        self._sweep: dict = {}
        self._sv: dict = {}
        self._bf: Optional[AFrame] = None
        self._bred: dict = {}
        self._bsweep: dict = {}

    @staticmethod
    def _key(m: np.ndarray):
        return (m.shape, m.tobytes())

    def op(self, name: str) -> np.ndarray:
        if name in self._ops:
            return self._ops[name]
        if name in ("X", "Y"):
            return self.op("T")
        if name in ("P", "Q"):
            eye = np.eye(self.f.dim, dtype=np.complex128)
            self._ops[name] = eye
            return eye
        raise KeyError(f"operand {name!r} not supplied")

    def seed_for(self, label: str) -> int:
        return label_seed(int(self.params.get("seed", 0)), label)

    def sharp_of(self, m: np.ndarray) -> np.ndarray:
        k = self._key(m)
        if k not in self._sharp:
            self._sharp[k] = sharp(self.f, m)
        return self._sharp[k]

    def re_of(self, m: np.ndarray) -> np.ndarray:
        return 0.5 * (m + self.sharp_of(m))

    def red(self, m: np.ndarray) -> np.ndarray:
        k = self._key(m)
        if k not in self._red:
            self._red[k] = reduced(self.f, m).mat
        return self._red[k]

    def _gauges(self, m: np.ndarray):
        k = self._key(m)
        if k not in self._sweep:
            self._sweep[k] = sweep_gauges(self.red(m), self.cfg)
        return self._sweep[k]

    def _singvals(self, m: np.ndarray) -> np.ndarray:
        k = self._key(m)
        if k not in self._sv:
            self._sv[k] = singular_values(self.red(m))
        return self._sv[k]

    def w(self, m) -> float:
        return self._gauges(m).w

    def c(self, m) -> float:
        return self._gauges(m).crawford

    def cc(self, m) -> float:
        return self._gauges(m).crawford_c

    def nrm(self, m) -> float:
        sv = self._singvals(m)
        return float(sv[0]) if sv.size else 0.0

    def mm(self, m) -> float:
        sv = self._singvals(m)
        return float(sv[-1]) if sv.size else 0.0

    def bframe(self) -> AFrame:
        if self._bf is None:
            self._bf = direct_sum(self.f)
        return self._bf

    def antidiag(self) -> np.ndarray:
        x, y = self.op("X"), self.op("Y")
        zero = np.zeros_like(x)
        return np.block([[zero, x], [y, zero]])

    def wb(self, m2: np.ndarray) -> float:
        k = self._key(m2)
        if k not in self._bsweep:
            red = reduced(self.bframe(), m2).mat
            self._bsweep[k] = sweep_gauges(red, self.cfg)
        return self._bsweep[k].w

    def pm(self, t: np.ndarray) -> np.ndarray:
        """T^sharp T + T T^sharp."""
        s = self.sharp_of(t)
        return s @ t + t @ s

    def power_norm(self, t: np.ndarray, r: float) -> float:
        """||(T^sharp T)^r + (T T^sharp)^r||_A via the PSD functional calculus."""
        s = self.sharp_of(t)
        p1 = a_positive_power(self.f, s @ t, r).mat
        p2 = a_positive_power(self.f, t @ s, r).mat
        return spec_norm(p1 + p2)


def _nilpotency_defect(t: np.ndarray, order: int) -> float:
    p = np.linalg.matrix_power(t, order)
    return frob(p) / (1.0 + frob(t) ** order)


def _hypothesis_state(cd: CheckDef, ctx: _Ctx) -> tuple[bool, bool]:
    """Returns (met, explorable): whether the hypothesis holds, and whether
    exploration mode may still evaluate the formulas when it does not."""
    if cd.hypothesis == "always":
        return True, False
    if cd.hypothesis == "strict":
        return ctx.f.strictly_positive, True
    if cd.hypothesis == "strict_nonzero_t":
        nt = ctx.nrm(ctx.op("T"))
        nonzero = nt > 1e-12 * (1.0 + frob(ctx.op("T")))
        return (ctx.f.strictly_positive and nonzero), nonzero
    if cd.hypothesis == "nilpotent2":
        return _nilpotency_defect(ctx.op("T"), 2) <= 1e-12, False
    if cd.hypothesis == "nilpotent3":
        return _nilpotency_defect(ctx.op("T"), 3) <= 1e-12, False
    if cd.hypothesis == "power":
        r = cd.param_r
        integer = r is not None and abs(r - round(r)) <= 1e-12
        return (integer or ctx.f.strictly_positive), False
    raise AssertionError(f"unknown hypothesis kind {cd.hypothesis!r}")


def _verdict(lhs: float, rhs: float, mode: str, tol: float, abs_tol: Optional[float]) -> bool:
    gap = abs_tol if abs_tol is not None else tol * (1.0 + abs(rhs))
    slack = rhs - lhs
    if mode == "eq":
        return abs(slack) <= gap
    return slack >= -gap


def _register(check_id, *, mode="le", hypothesis="always", roles=("T",),
              abs_tol=None, param_r=None, description=""):
    def deco(fn):
        if check_id in REGISTRY:
            raise AssertionError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = CheckDef(
            check_id=check_id,
            mode=mode,
            hypothesis=hypothesis,
            roles=tuple(roles),
            evaluate=fn,
            abs_tol=abs_tol,
            param_r=param_r,
            description=description,
        )
        return fn

    return deco


# --------------------------------------------------------------------------
# Seminorm / numerical radius equivalence and the basic lemmas
# --------------------------------------------------------------------------

@_register("equiv_half_lower", description="||T||_A / 2 <= w_A(T)")
def _equiv_half_lower(ctx):
    t = ctx.op("T")
    w, n = ctx.w(t), ctx.nrm(t)
    return 0.5 * n, w, {"w_T": w, "nrm_T": n}


@_register("equiv_half_upper", description="w_A(T) <= ||T||_A")
def _equiv_half_upper(ctx):
    t = ctx.op("T")
    w, n = ctx.w(t), ctx.nrm(t)
    return w, n, {"w_T": w, "nrm_T": n}


@_register("lem_selfadj_eq", mode="eq",
            description="w_A(S) = ||S||_A for the A-selfadjoint S = Re_A(T)")
def _lem_selfadj_eq(ctx):
    s = ctx.re_of(ctx.op("T"))
    w, n = ctx.w(s), ctx.nrm(s)
    return w, n, {"derived_operand": "re_a(T)"}


@_register("lem_sup_theta",
            description="sampled sup over theta of ||Re_A(e^{i theta} T)||_A "
                        "stays below w_A(T)")
def _lem_sup_theta(ctx):
    t = ctx.op("T")
    k = ctx.red(t)
    ksh = ctx.red(ctx.sharp_of(t))
    thetas = np.linspace(0.0, 2.0 * np.pi, 64, endpoint=False)
    ph = np.exp(1j * thetas)[:, None, None]
    stack = 0.5 * (ph * k + ph.conj() * ksh)
    sv = np.linalg.svd(stack, compute_uv=False)
    lhs = float(sv[:, 0].max())
    rhs = ctx.w(t)
    return lhs, rhs, {"grid_points": 64}


@_register("lem_positivity_mono", roles=("X", "Y"),
            description="A-positive dominance X' >= Y' implies ||X'||_A >= ||Y'||_A "
                        "with X' = X#X + Y#Y, Y' = X#X")
def _lem_positivity_mono(ctx):
    x, y = ctx.op("X"), ctx.op("Y")
    s1 = ctx.sharp_of(x) @ x
    s2 = ctx.sharp_of(y) @ y
    lhs = ctx.nrm(s1)
    rhs = ctx.nrm(s1 + s2)
    return lhs, rhs, {"derived": "X'=X#X+Y#Y, Y'=X#X"}


# --------------------------------------------------------------------------
# Antidiagonal block bounds and their corollaries
# --------------------------------------------------------------------------

def _antidiag_ms(ctx):
    x, y = ctx.op("X"), ctx.op("Y")
    sx, sy = ctx.sharp_of(x), ctx.sharp_of(y)
    m1 = x @ sx + sy @ y
    m2 = sx @ x + y @ sy
    return x, y, m1, m2


@_register("thm_antidiag_lower", roles=("X", "Y"),
            description="max(||XX#+Y#Y||_A, ||X#X+YY#||_A)/4 <= wB(antidiag)^2")
def _thm_antidiag_lower(ctx):
    _, _, m1, m2 = _antidiag_ms(ctx)
    wb = ctx.wb(ctx.antidiag())
    lhs = 0.25 * max(ctx.nrm(m1), ctx.nrm(m2))
    return lhs, wb ** 2, {"wB": wb, "nrm_M": ctx.nrm(m1), "nrm_N": ctx.nrm(m2)}


@_register("thm_antidiag_upper", roles=("X", "Y"),
            description="wB(antidiag)^2 <= max(||XX#+Y#Y||_A, ||X#X+YY#||_A)/2")
def _thm_antidiag_upper(ctx):
    _, _, m1, m2 = _antidiag_ms(ctx)
    wb = ctx.wb(ctx.antidiag())
    rhs = 0.5 * max(ctx.nrm(m1), ctx.nrm(m2))
    return wb ** 2, rhs, {"wB": wb}


@_register("cor_kittaneh_A_lower", hypothesis="strict",
            description="||TT#+T#T||_A / 4 <= w_A(T)^2")
def _cor_kittaneh_lower(ctx):
    t = ctx.op("T")
    pm = ctx.pm(t)
    return 0.25 * ctx.nrm(pm), ctx.w(t) ** 2, {"nrm_P": ctx.nrm(pm)}


@_register("cor_kittaneh_A_upper", hypothesis="strict",
            description="w_A(T)^2 <= ||TT#+T#T||_A / 2")
def _cor_kittaneh_upper(ctx):
    t = ctx.op("T")
    pm = ctx.pm(t)
    return ctx.w(t) ** 2, 0.5 * ctx.nrm(pm), {"nrm_P": ctx.nrm(pm)}


@_register("thm_fourth_antidiag_lower", roles=("X", "Y"),
            description="max(||P||_A, ||Q||_A)/16 <= wB(antidiag)^4 with "
                        "P=(XX#+Y#Y)^2+4 Re_A(XY)^2, Q=(X#X+YY#)^2+4 Re_A(YX)^2")
def _thm_fourth_antidiag_lower(ctx):
    x, y, m1, m2 = _antidiag_ms(ctx)
    rexy = ctx.re_of(x @ y)
    reyx = ctx.re_of(y @ x)
    p = m1 @ m1 + 4.0 * rexy @ rexy
    q = m2 @ m2 + 4.0 * reyx @ reyx
    wb = ctx.wb(ctx.antidiag())
    lhs = max(ctx.nrm(p), ctx.nrm(q)) / 16.0
    return lhs, wb ** 4, {"wB": wb, "nrm_P": ctx.nrm(p), "nrm_Q": ctx.nrm(q)}


@_register("thm_fourth_antidiag_upper", roles=("X", "Y"),
            description="wB(antidiag)^4 <= max(||XX#+Y#Y||^2+4 w_A(XY)^2, "
                        "||X#X+YY#||^2+4 w_A(YX)^2)/8")
def _thm_fourth_antidiag_upper(ctx):
    x, y, m1, m2 = _antidiag_ms(ctx)
    wb = ctx.wb(ctx.antidiag())
    rhs = 0.125 * max(
        ctx.nrm(m1) ** 2 + 4.0 * ctx.w(x @ y) ** 2,
        ctx.nrm(m2) ** 2 + 4.0 * ctx.w(y @ x) ** 2,
    )
    return wb ** 4, rhs, {"wB": wb}


@_register("cor_fourth_lower", hypothesis="strict",
            description="||(TT#+T#T)^2 + 4 Re_A(T^2)^2||_A / 16 <= w_A(T)^4")
def _cor_fourth_lower(ctx):
    t = ctx.op("T")
    pm = ctx.pm(t)
    ret2 = ctx.re_of(t @ t)
    inner = pm @ pm + 4.0 * ret2 @ ret2
    return ctx.nrm(inner) / 16.0, ctx.w(t) ** 4, {"nrm_inner": ctx.nrm(inner)}


@_register("cor_fourth_upper", hypothesis="strict",
            description="w_A(T)^4 <= ||TT#+T#T||_A^2 / 8 + w_A(T^2)^2 / 2")
def _cor_fourth_upper(ctx):
    t = ctx.op("T")
    pm = ctx.pm(t)
    t2 = t @ t
    rhs = 0.125 * ctx.nrm(pm) ** 2 + 0.5 * ctx.w(t2) ** 2
    return ctx.w(t) ** 4, rhs, {"nrm_P": ctx.nrm(pm), "w_T2": ctx.w(t2)}


# --------------------------------------------------------------------------
# Refined fourth-power, cubic and power bounds
# --------------------------------------------------------------------------

@_register("thm_refined_fourth", hypothesis="strict",
            description="w_A(T)^4 <= w_A(T^2)^2/4 + w_A(T^2 P + P T^2)/8 + "
                        "||P||_A^2/16 with P = T#T + TT#")
def _thm_refined_fourth(ctx):
    t = ctx.op("T")
    pm = ctx.pm(t)
    t2 = t @ t
    g = t2 @ pm + pm @ t2
    w_t2 = ctx.w(t2)
    w_g = ctx.w(g)
    nrm_p = ctx.nrm(pm)
    rhs = 0.25 * w_t2 ** 2 + 0.125 * w_g + nrm_p ** 2 / 16.0
    meta = {
        "w_T2": w_t2,
        "w_T2P_PT2": w_g,
        "nrm_P": nrm_p,
        "comparison_rhs": (nrm_p + 2.0 * w_t2) ** 2 / 16.0,
    }
    return ctx.w(t) ** 4, rhs, meta


def _cubic_mixed(ctx, t):
    s = ctx.sharp_of(t)
    t2 = t @ t
    return t2 @ s + s @ t2 + t @ s @ t


@_register("thm_cubic", hypothesis="strict",
            description="w_A(T)^3 <= w_A(T^3)/4 + w_A(T^2 T# + T# T^2 + T T# T)/4")
def _thm_cubic(ctx):
    t = ctx.op("T")
    rhs = 0.25 * ctx.w(t @ t @ t) + 0.25 * ctx.w(_cubic_mixed(ctx, t))
    return ctx.w(t) ** 3, rhs, {}


@_register("thm_cubic_sq_zero", mode="eq", hypothesis="nilpotent2", abs_tol=1e-8,
            description="T^2 = 0 forces w_A(T) = sqrt(||TT#+T#T||_A)/2")
def _thm_cubic_sq_zero(ctx):
    t = ctx.op("T")
    rhs = 0.5 * math.sqrt(ctx.nrm(ctx.pm(t)))
    return ctx.w(t), rhs, {"nilpotency_defect": _nilpotency_defect(t, 2)}


@_register("thm_cubic_cube_zero", mode="eq", hypothesis="nilpotent3", abs_tol=1e-7,
            description="T^3 = 0 forces w_A(T)^3 = w_A(T^2 T# + T# T^2 + T T# T)/4")
def _thm_cubic_cube_zero(ctx):
    t = ctx.op("T")
    rhs = 0.25 * ctx.w(_cubic_mixed(ctx, t))
    return ctx.w(t) ** 3, rhs, {"nilpotency_defect": _nilpotency_defect(t, 3)}


def _power_evaluator(r: float):
    def _eval(ctx):
        t = ctx.op("T")
        term = ctx.power_norm(t, r)
        rhs = 0.5 * ctx.w(t @ t) ** r + 0.25 * term
        return ctx.w(t) ** (2.0 * r), rhs, {"r": r, "power_term": term}

    return _eval


for _r, _suffix in ((1.0, "1"), (1.5, "1p5"), (2.0, "2"), (3.0, "3")):
    _register(
        f"thm_power_r_{_suffix}",
        hypothesis="power",
        param_r=_r,
        description=f"w_A(T)^(2r) <= w_A(T^2)^r/2 + ||(T#T)^r+(TT#)^r||_A/4 at r={_r}",
    )(_power_evaluator(_r))


@_register("thm_lower_fourth", hypothesis="strict",
            description="C_A(T^2)^2/4 + c_A(T^2 P + P T^2)/8 + ||P||_A^2/16 "
                        "<= w_A(T)^4")
def _thm_lower_fourth(ctx):
    t = ctx.op("T")
    pm = ctx.pm(t)
    t2 = t @ t
    g = t2 @ pm + pm @ t2
    cc = ctx.cc(t2)
    cg = ctx.c(g)
    nrm_p = ctx.nrm(pm)
    lhs = 0.25 * cc ** 2 + 0.125 * cg + nrm_p ** 2 / 16.0
    meta = {"C_T2": cc, "c_T2P_PT2": cg, "nrm_P": nrm_p}
    return lhs, ctx.w(t) ** 4, meta


# --------------------------------------------------------------------------
# Product bounds
# --------------------------------------------------------------------------

def _prod_sum(ctx, sign: float) -> np.ndarray:
    p, q = ctx.op("P"), ctx.op("Q")
    x, y = ctx.op("X"), ctx.op("Y")
    return p @ x @ ctx.sharp_of(q) + sign * (q @ y @ ctx.sharp_of(p))


@_register("thm_prod_pm_plus", roles=("P", "Q", "X", "Y"),
            description="w_A(PXQ# + QYP#) <= 2 ||P||_A ||Q||_A wB(antidiag(X,Y))")
def _thm_prod_pm_plus(ctx):
    wb = ctx.wb(ctx.antidiag())
    rhs = 2.0 * ctx.nrm(ctx.op("P")) * ctx.nrm(ctx.op("Q")) * wb
    return ctx.w(_prod_sum(ctx, +1.0)), rhs, {"wB": wb}


@_register("thm_prod_pm_minus", hypothesis="strict", roles=("P", "Q", "X", "Y"),
            description="w_A(PXQ# - QYP#) <= 2 ||P||_A ||Q||_A wB(antidiag(X,Y))")
def _thm_prod_pm_minus(ctx):
    wb = ctx.wb(ctx.antidiag())
    rhs = 2.0 * ctx.nrm(ctx.op("P")) * ctx.nrm(ctx.op("Q")) * wb
    return ctx.w(_prod_sum(ctx, -1.0)), rhs, {"wB": wb}


def _prod_particular(ctx, sign: float):
    p, q, x = ctx.op("P"), ctx.op("Q"), ctx.op("X")
    m = p @ x @ ctx.sharp_of(q) + sign * (q @ x @ ctx.sharp_of(p))
    rhs = 2.0 * ctx.nrm(p) * ctx.nrm(q) * ctx.w(x)
    return ctx.w(m), rhs, {"w_X": ctx.w(x)}


@_register("thm_prod_particular_plus", hypothesis="strict", roles=("P", "Q", "X"),
            description="w_A(PXQ# + QXP#) <= 2 ||P||_A ||Q||_A w_A(X)")
def _thm_prod_particular_plus(ctx):
    return _prod_particular(ctx, +1.0)


@_register("thm_prod_particular_minus", hypothesis="strict", roles=("P", "Q", "X"),
            description="w_A(PXQ# - QXP#) <= 2 ||P||_A ||Q||_A w_A(X)")
def _thm_prod_particular_minus(ctx):
    return _prod_particular(ctx, -1.0)


def _commutator(ctx, sign: float):
    t, q = ctx.op("T"), ctx.op("Q")
    m = t @ ctx.sharp_of(q) + sign * (q @ t)
    rhs = 2.0 * ctx.w(t) * ctx.nrm(q)
    return ctx.w(m), rhs, {"w_T": ctx.w(t), "nrm_Q": ctx.nrm(q)}


@_register("cor_commutator_plus", hypothesis="strict", roles=("T", "Q"),
            description="w_A(TQ# + QT) <= 2 w_A(T) ||Q||_A")
def _cor_commutator_plus(ctx):
    return _commutator(ctx, +1.0)


@_register("cor_commutator_minus", hypothesis="strict", roles=("T", "Q"),
            description="w_A(TQ# - QT) <= 2 w_A(T) ||Q||_A")
def _cor_commutator_minus(ctx):
    return _commutator(ctx, -1.0)


@_register("lem_pointwise", hypothesis="strict", roles=("X", "T", "Y"),
            description="|<X#TYx,x>_A| + |<Y#TXx,x>_A| <= 2 w_A(T) ||Xx||_A ||Yx||_A "
                        "on sampled x (worst sample reported)")
def _lem_pointwise(ctx):
    x_op, t, y_op = ctx.op("X"), ctx.op("T"), ctx.op("Y")
    g1 = ctx.sharp_of(x_op) @ t @ y_op
    g2 = ctx.sharp_of(y_op) @ t @ x_op
    wt = ctx.w(t)
    n = ctx.f.dim
    rng = np.random.default_rng(ctx.seed_for("lem_pointwise"))
    xs = rng.standard_normal((n, _POINTWISE_SAMPLES)) + 1j * rng.standard_normal(
        (n, _POINTWISE_SAMPLES)
    )
    xs /= np.linalg.norm(xs, axis=0)
    a = ctx.f.a
    quad1 = np.abs(np.einsum("ij,ij->j", xs.conj(), a @ g1 @ xs))
    quad2 = np.abs(np.einsum("ij,ij->j", xs.conj(), a @ g2 @ xs))
    nx = np.linalg.norm(ctx.f.sqrt_a @ x_op @ xs, axis=0)
    ny = np.linalg.norm(ctx.f.sqrt_a @ y_op @ xs, axis=0)
    lhs_all = quad1 + quad2
    rhs_all = 2.0 * wt * nx * ny
    worst = int(np.argmax((lhs_all - rhs_all) / (1.0 + np.abs(rhs_all))))
    meta = {"samples": _POINTWISE_SAMPLES, "worst_index": worst}
    return float(lhs_all[worst]), float(rhs_all[worst]), meta


def _crawford_prod(ctx):
    x, t, y = ctx.op("X"), ctx.op("T"), ctx.op("Y")
    g1 = ctx.sharp_of(x) @ t @ y
    g2 = ctx.sharp_of(y) @ t @ x
    rhs = 2.0 * ctx.w(t) * ctx.nrm(x) * ctx.nrm(y)
    return g1, g2, rhs


@_register("thm_crawford_prod_cw", hypothesis="strict", roles=("X", "T", "Y"),
            description="c_A(X#TY) + w_A(Y#TX) <= 2 w_A(T) ||X||_A ||Y||_A")
def _thm_crawford_prod_cw(ctx):
    g1, g2, rhs = _crawford_prod(ctx)
    return ctx.c(g1) + ctx.w(g2), rhs, {}


@_register("thm_crawford_prod_wc", hypothesis="strict", roles=("X", "T", "Y"),
            description="w_A(X#TY) + c_A(Y#TX) <= 2 w_A(T) ||X||_A ||Y||_A")
def _thm_crawford_prod_wc(ctx):
    g1, g2, rhs = _crawford_prod(ctx)
    return ctx.w(g1) + ctx.c(g2), rhs, {}


@_register("cor_prod_improved_1", hypothesis="strict", roles=("X", "Y"),
            description="w_A(XY) <= 2 w_A(X) ||Y||_A - c_A(Y#X)")
def _cor_prod_improved_1(ctx):
    x, y = ctx.op("X"), ctx.op("Y")
    plain = 2.0 * ctx.w(x) * ctx.nrm(y)
    rhs = plain - ctx.c(ctx.sharp_of(y) @ x)
    return ctx.w(x @ y), rhs, {"plain_rhs": plain}


@_register("cor_prod_improved_2", hypothesis="strict", roles=("X", "Y"),
            description="w_A(XY) <= 2 w_A(Y) ||X||_A - c_A(YX#)")
def _cor_prod_improved_2(ctx):
    x, y = ctx.op("X"), ctx.op("Y")
    plain = 2.0 * ctx.w(y) * ctx.nrm(x)
    rhs = plain - ctx.c(y @ ctx.sharp_of(x))
    return ctx.w(x @ y), rhs, {"plain_rhs": plain}


# --------------------------------------------------------------------------
# Block and seminorm lower bounds
# --------------------------------------------------------------------------

def _block_lower(ctx, use_x: bool, use_minmod: bool):
    x, y = ctx.op("X"), ctx.op("Y")
    wb = ctx.wb(ctx.antidiag())
    lead, prod = (x, y @ x) if use_x else (y, x @ y)
    gauge = ctx.mm(lead) ** 2 if use_minmod else ctx.nrm(lead) ** 2
    inner = ctx.w(prod) if use_minmod else ctx.c(prod)
    lhs = gauge + inner
    rhs = 2.0 * wb * ctx.nrm(lead)
    return lhs, rhs, {"wB": wb}


@_register("thm_block_lower_i", hypothesis="strict", roles=("X", "Y"),
            description="||X||_A^2 + c_A(YX) <= 2 wB(antidiag) ||X||_A")
def _thm_block_lower_i(ctx):
    return _block_lower(ctx, use_x=True, use_minmod=False)


@_register("thm_block_lower_ii", hypothesis="strict", roles=("X", "Y"),
            description="m_A(X)^2 + w_A(YX) <= 2 wB(antidiag) ||X||_A")
def _thm_block_lower_ii(ctx):
    return _block_lower(ctx, use_x=True, use_minmod=True)


@_register("thm_block_lower_iii", hypothesis="strict", roles=("X", "Y"),
            description="||Y||_A^2 + c_A(XY) <= 2 wB(antidiag) ||Y||_A")
def _thm_block_lower_iii(ctx):
    return _block_lower(ctx, use_x=False, use_minmod=False)


@_register("thm_block_lower_iv", hypothesis="strict", roles=("X", "Y"),
            description="m_A(Y)^2 + w_A(XY) <= 2 wB(antidiag) ||Y||_A")
def _thm_block_lower_iv(ctx):
    return _block_lower(ctx, use_x=False, use_minmod=True)


@_register("thm_wa_lower_1", hypothesis="strict_nonzero_t",
            description="||T||_A/2 + c_A(T^2)/(2||T||_A) <= w_A(T)")
def _thm_wa_lower_1(ctx):
    t = ctx.op("T")
    nt = ctx.nrm(t)
    lhs = 0.5 * nt + ctx.c(t @ t) / (2.0 * nt)
    return lhs, ctx.w(t), {"nrm_T": nt, "c_T2": ctx.c(t @ t)}


@_register("thm_wa_lower_2", hypothesis="strict_nonzero_t",
            description="m_A(T)^2/(2||T||_A) + w_A(T^2)/(2||T||_A) <= w_A(T)")
def _thm_wa_lower_2(ctx):
    t = ctx.op("T")
    nt = ctx.nrm(t)
    lhs = (ctx.mm(t) ** 2 + ctx.w(t @ t)) / (2.0 * nt)
    return lhs, ctx.w(t), {"nrm_T": nt, "mm_T": ctx.mm(t)}


@_register("thm_wa_lower_max", hypothesis="strict_nonzero_t",
            description="max(||T||_A^2 + c_A(T^2), m_A(T)^2 + w_A(T^2)) / "
                        "(2||T||_A) <= w_A(T)")
def _thm_wa_lower_max(ctx):
    t = ctx.op("T")
    nt = ctx.nrm(t)
    t2 = t @ t
    lhs = max(nt ** 2 + ctx.c(t2), ctx.mm(t) ** 2 + ctx.w(t2)) / (2.0 * nt)
    return lhs, ctx.w(t), {"nrm_T": nt}


# --------------------------------------------------------------------------
# Execution
# --------------------------------------------------------------------------

def _skipped_result(cd: CheckDef, meta: Dict[str, object]) -> CheckResult:
    nan = float("nan")
    return CheckResult(
        check_id=cd.check_id,
        lhs=nan,
        rhs=nan,
        slack=nan,
        passed=True,
        hypothesis_met=False,
        metadata=meta,
    )


def _run_one(cd: CheckDef, ctx: _Ctx, tol: float) -> CheckResult:
    met, explorable = _hypothesis_state(cd, ctx)
    if not met:
        meta: Dict[str, object] = {"skip_reason": cd.hypothesis}
        if explorable and bool(ctx.params.get("explore")):
            lhs, rhs, extra = cd.evaluate(ctx)
            meta.update(extra)
            meta["outside_hypothesis"] = True
            meta["explored_lhs"] = lhs
            meta["explored_rhs"] = rhs
        return _skipped_result(cd, meta)
    lhs, rhs, meta = cd.evaluate(ctx)
    lhs = float(lhs)
    rhs = float(rhs)
    return CheckResult(
        check_id=cd.check_id,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        passed=_verdict(lhs, rhs, cd.mode, tol, cd.abs_tol),
        hypothesis_met=True,
        metadata=meta,
    )


def _lookup(check_id: str, params) -> CheckDef:
    cd = REGISTRY.get(check_id)
    if cd is not None:
        return cd
    if check_id == "thm_power_r" and params and "r" in params:
        r = float(params["r"])
        return CheckDef(
            check_id="thm_power_r",
            mode="le",
            hypothesis="power",
            roles=("T",),
            evaluate=_power_evaluator(r),
            param_r=r,
            description=f"power bound at caller-supplied r={r}",
        )
    raise UnknownCheckId(check_id)


def run_check(check_id: str, f: AFrame, operands, params=None,
              cfg: SweepConfig = DEFAULT_SWEEP, tol: float = DEFAULT_TOL) -> CheckResult:
    """Evaluate a single registry check; errors propagate to the caller."""
    cd = _lookup(check_id, params)
    ctx = _Ctx(f, operands, params, cfg)
    return _run_one(cd, ctx, tol)


def run_all(f: AFrame, operands, params=None, cfg: SweepConfig = DEFAULT_SWEEP,
            tol: float = DEFAULT_TOL, checks: Optional[Sequence[str]] = None) -> list[CheckResult]:
    """Evaluate a filtered batch of checks on one instance.

    All checks share one gauge cache. Per-check errors are folded into failed
    results (error message in metadata) instead of aborting the batch; the
    result list is ordered by check_id.
    """
    ids = resolve_ids(checks)
    ctx = _Ctx(f, operands, params, cfg)
    results = []
    for cid in ids:
        cd = REGISTRY[cid]
        try:
            results.append(_run_one(cd, ctx, tol))
        except Exception as exc:  # noqa: BLE001 - fold into the report
            nan = float("nan")
            results.append(
                CheckResult(
                    check_id=cid,
                    lhs=nan,
                    rhs=nan,
                    slack=nan,
                    passed=False,
                    hypothesis_met=True,
                    metadata={"error": f"{type(exc).__name__}: {exc}"},
                )
            )
    return results
