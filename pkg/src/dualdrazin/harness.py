"""Randomised instance generation and fuzz verification for the closed forms.

Generators build instances whose hypotheses hold exactly, by working in
integer frames: a unimodular shear conjugates a block split into an
invertible triangular part and a shifted nilpotent part, and borders are
supported on exact kernels of that nilpotent part.  Membership in the
invertible class is then either structural or enforced by an exact-filter
and resample loop.

fuzz drives a family of such instances through the closed form, compares
against the series inverse of the assembled matrix and against the three
defining equations, and emits a deterministic JSON-lines report.
smith_rank_oracle cross-checks the numerical ranks by exact fraction
elimination over the dual ring.
"""

from __future__ import annotations

import hashlib
import logging
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .blocks import THEOREMS, BlockInstance, check_hypotheses, closed_form
from .digraphs import (
    DLinkedStars,
    DoubleStar,
    DutchWindmill,
    GraphSpec,
    build_adjacency,
    dls_dual_drazin,
    ds_dual_drazin,
    dw_bc_zero,
    dw_dual_drazin,
    dw_group,
    graph_hypotheses,
    graph_spec_to_doc,
)
from .drazin import defining_residuals, dual_drazin, dual_exists
from .dualmat import DualMatrix, dmul
from .dualnum import DualScalar
from .errors import (
    DualDrazinError,
    GenerationFailed,
    InexactInput,
    SpecInvalid,
)
from .serialize import dumps_doc

logger = logging.getLogger(__name__)

GRAPH_FAMILIES = (
    "DOUBLE_STAR",
    "LINKED_STARS",
    "WINDMILL",
    "WINDMILL_BC0",
    "WINDMILL_GROUP",
)
FAMILIES = THEOREMS + GRAPH_FAMILIES

_MAX_ATTEMPTS = 120

__all__ = [
    "FAMILIES",
    "GRAPH_FAMILIES",
    "GenConfig",
    "VerifyReport",
    "gen_instance",
    "gen_member",
    "gen_existence",
    "fuzz",
    "smith_rank_oracle",
]


@dataclass(frozen=True)
class GenConfig:
    """Reproducible description of one fuzzing run.

    family names either a block theorem or a digraph family.  Dimensions
    are sampled uniformly between dim_min and dim_max, except that the
    first two trials pin the two boundary dimensions.  violate flips the
    generator into producing instances that break their own hypotheses,
    for exercising the rejection paths.
    """

    family: str
    trials: int = 100
    seed: int = 0
    dim_min: int = 1
    dim_max: int = 5
    entry_scale: int = 2
    max_rel_error: float = 1e-8
    violate: bool = False
    artifact_dir: str | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecInvalid(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.trials < 1:
            raise SpecInvalid("trials must be at least 1")
        if not 1 <= self.dim_min <= self.dim_max:
            raise SpecInvalid("need 1 <= dim_min <= dim_max")
        if self.entry_scale < 1:
            raise SpecInvalid("entry_scale must be at least 1")


def _trial_rng(cfg: GenConfig, trial: int) -> np.random.Generator:
    # per-trial stream keyed on (master seed, trial, family) so a single
    # trial can be regenerated without replaying the run
    tag = zlib.crc32(cfg.family.encode())
    return np.random.default_rng([cfg.seed & (2**64 - 1), trial, tag])


def _dim(cfg: GenConfig, trial: int, rng, floor: int = 1) -> int:
    lo = max(cfg.dim_min, floor)
    hi = max(cfg.dim_max, lo)
    if trial == 0:
        return lo
    if trial == 1:
        return hi
    return int(rng.integers(lo, hi + 1))


def _in_class(x: DualMatrix, res_tol=None) -> bool:
    ok, _ = dual_exists(x, res_tol=res_tol)
    return ok


# ---------------------------------------------------------------------------
# integer frame building blocks


def _ints(rng, shape, scale) -> np.ndarray:
    return rng.integers(-scale, scale + 1, shape).astype(complex)


def _nonzero_ints(rng, count, scale) -> np.ndarray:
    vals = rng.integers(1, scale + 1, count) * rng.choice([-1, 1], count)
    return vals.astype(complex)


def _int_dual(rng, m, n, scale) -> DualMatrix:
    return DualMatrix(_ints(rng, (m, n), scale), _ints(rng, (m, n), scale))


def _unimodular(n, rng) -> tuple[np.ndarray, np.ndarray]:
    """Integer shear product with exactly known integer inverse."""
    s = np.eye(n)
    sinv = np.eye(n)
    for _ in range(n + 2):
        i, j = rng.integers(0, n, 2)
        if i == j:
            continue
        c = int(rng.choice([-1, 1]))
        e = np.eye(n)
        e[i, j] = c
        ei = np.eye(n)
        ei[i, j] = -c
        s = s @ e
        sinv = ei @ sinv
    return s.astype(complex), sinv.astype(complex)


def _superdiag_nilpotent(b, rng) -> tuple[np.ndarray, list[int]]:
    n = np.zeros((b, b), dtype=complex)
    coeffs = []
    for j in range(b - 1):
        c = int(rng.choice([0, 1, 1, 2]))
        coeffs.append(c)
        n[j, j + 1] = c
    return n, coeffs


def _poly_of(mat, rng, unit, scale=2) -> np.ndarray:
    b = mat.shape[0]
    out = np.zeros((b, b), dtype=complex)
    if unit:
        out += int(rng.choice([1, -1, 2])) * np.eye(b)
    power = mat.copy()
    for _ in range(min(b, 3)):
        out += int(rng.integers(-scale, scale + 1)) * power
        power = power @ mat
    return out


@dataclass(frozen=True)
class _Frame:
    s: np.ndarray
    sinv: np.ndarray
    a: int
    nil: np.ndarray
    kernel: list[int]
    left_kernel: list[int]
    matrix: DualMatrix

    @property
    def b(self) -> int:
        return self.nil.shape[0]


def _make_frame(n, rng, scale, a=None, nilpotent_inf=True) -> _Frame:
    """Shear-conjugated invertible-plus-nilpotent split, a member by construction.

    The infinitesimal part is block diagonal in the frame: arbitrary on the
    invertible block, a multiple of the nilpotent block on the other, which
    keeps the mixed series supported away from the nilpotent projector.
    """
    if a is None:
        a = int(rng.integers(0, n + 1))
    b = n - a
    s, sinv = _unimodular(n, rng)
    p = np.triu(_ints(rng, (a, a), scale))
    if a:
        np.fill_diagonal(p, rng.choice([-2, -1, 1, 2], a))
    p0 = _ints(rng, (a, a), scale)
    nil, coeffs = _superdiag_nilpotent(b, rng)
    g22 = nil @ _poly_of(nil, rng, unit=bool(rng.integers(0, 2))) if nilpotent_inf else np.eye(b, dtype=complex)
    std = np.zeros((n, n), dtype=complex)
    inf = np.zeros((n, n), dtype=complex)
    std[:a, :a] = p
    std[a:, a:] = nil
    inf[:a, :a] = p0
    inf[a:, a:] = g22
    kernel = [0] + [j + 1 for j, c in enumerate(coeffs) if c == 0] if b else []
    left_kernel = [b - 1] + [j for j, c in enumerate(coeffs) if c == 0] if b else []
    matrix = DualMatrix(s @ std @ sinv, s @ inf @ sinv)
    return _Frame(s, sinv, a, nil, kernel, left_kernel, matrix)


def gen_member(dim: int, rng, entry_scale: int = 2, invertible: bool | None = None) -> DualMatrix:
    """Random member of the invertible class with exact integer structure.

    invertible=True forces a nonsingular standard part, False forces a
    nontrivial nilpotent block, None mixes both.
    """
    if dim < 1:
        raise SpecInvalid("dimension must be at least 1")
    if invertible is True:
        a = dim
    elif invertible is False:
        a = int(rng.integers(0, dim))
    else:
        a = None
    return _make_frame(dim, rng, entry_scale, a=a).matrix


def gen_existence(dim: int, rng, positive: bool, entry_scale: int = 2) -> DualMatrix:
    """Exact-arithmetic instance for the existence test, labelled by design.

    Positive instances share the member frame.  Negative ones put the
    identity on the nilpotent block of the infinitesimal part, which makes
    the projected mixed series an integer matrix of norm at least one.
    """
    if positive:
        return gen_member(dim, rng, entry_scale)
    a = int(rng.integers(0, dim))
    return _make_frame(dim, rng, entry_scale, a=a, nilpotent_inf=False).matrix


# ---------------------------------------------------------------------------
# per-family generators


def _orthogonal_pair(r, rng, scale) -> tuple[DualMatrix, DualMatrix]:
    """Fan weight pair with u^T v = 0 in both parts, all standard entries nonzero."""
    if r < 2:
        raise GenerationFailed("dual-orthogonal fans need at least two leaves")
    for _ in range(_MAX_ATTEMPTS):
        v_std = _nonzero_ints(rng, r, scale)
        v_std[-1] = 1.0
        u_std = _nonzero_ints(rng, r, scale)
        u_std[-1] = -(u_std[:-1] @ v_std[:-1])
        if u_std[-1] == 0:
            continue
        v_inf = _ints(rng, r, scale)
        u_inf = _ints(rng, r, scale)
        u_inf[-1] = -(u_std @ v_inf) - (u_inf[:-1] @ v_std[:-1])
        u = DualMatrix(u_std.reshape(-1, 1), u_inf.reshape(-1, 1))
        v = DualMatrix(v_std.reshape(-1, 1), v_inf.reshape(-1, 1))
        return u, v
    raise GenerationFailed("could not build a dual-orthogonal fan pair")


def _pure_eps_column(rng, r, scale) -> DualMatrix:
    inf = _nonzero_ints(rng, r, scale)
    return DualMatrix(np.zeros((r, 1), dtype=complex), inf.reshape(-1, 1))


def _gen_cline(cfg, trial, rng):
    if cfg.violate:
        m = _dim(cfg, trial, rng)
        bad = gen_existence(m, rng, positive=False, entry_scale=cfg.entry_scale)
        return BlockInstance("CLINE", {"A": DualMatrix.identity(m), "B": bad}), True
    m = _dim(cfg, trial, rng)
    n = int(rng.integers(1, m + 1))
    a = _int_dual(rng, m, n, cfg.entry_scale)
    b = _int_dual(rng, n, m, cfg.entry_scale)
    ok = _in_class(dmul(b, a)) and _in_class(dmul(a, b))
    return BlockInstance("CLINE", {"A": a, "B": b}), ok


def _gen_tri(cfg, trial, rng, orientation):
    theorem = "TRI_UPPER" if orientation == "upper" else "TRI_LOWER"
    na = _dim(cfg, trial, rng)
    nd = int(rng.integers(max(1, cfg.dim_min), cfg.dim_max + 1))
    if cfg.violate:
        blocks = {
            "A": gen_existence(na, rng, positive=False, entry_scale=cfg.entry_scale),
            "B": _int_dual(rng, na, nd, cfg.entry_scale),
            "D": gen_member(nd, rng, cfg.entry_scale),
        }
        return BlockInstance(theorem, blocks), True
    blocks = {
        "A": gen_member(na, rng, cfg.entry_scale),
        "B": _int_dual(rng, na, nd, cfg.entry_scale),
        "D": gen_member(nd, rng, cfg.entry_scale),
    }
    inst = BlockInstance(theorem, blocks)
    return inst, _in_class(inst.assembled())


def _gen_sum(cfg, trial, rng):
    n = _dim(cfg, trial, rng)
    a = int(rng.integers(0, n + 1))
    b = n - a
    s, sinv = _unimodular(n, rng)
    h1 = np.triu(_ints(rng, (a, a), cfg.entry_scale))
    if a:
        np.fill_diagonal(h1, rng.choice([-2, -1, 1, 2], a))
    h1_inf = _ints(rng, (a, a), cfg.entry_scale)
    p_std = np.zeros((n, n), dtype=complex)
    p_inf = np.zeros((n, n), dtype=complex)
    p_std[:a, :a] = h1
    p_inf[:a, :a] = h1_inf
    q_std = np.zeros((n, n), dtype=complex)
    q_std[a:, :a] = _ints(rng, (b, a), cfg.entry_scale)
    if b and rng.integers(0, 2):
        h2 = np.triu(_ints(rng, (b, b), cfg.entry_scale))
        np.fill_diagonal(h2, rng.choice([-2, -1, 1, 2], b))
        q_std[a:, a:] = h2
        q_inf = np.zeros((n, n), dtype=complex)
        q_inf[a:, :a] = _ints(rng, (b, a), cfg.entry_scale)
        q_inf[a:, a:] = _ints(rng, (b, b), cfg.entry_scale)
    else:
        nil, _ = _superdiag_nilpotent(b, rng)
        q_std[a:, a:] = nil
        # nilpotent stratum: the infinitesimal part is Q*g(Q), which kills
        # every term of the mixed series exactly
        q_inf = q_std @ _poly_of(q_std, rng, unit=True)
    if cfg.violate:
        q_std[:a, :a] = np.eye(a)
    p = DualMatrix(s @ p_std @ sinv, s @ p_inf @ sinv)
    q = DualMatrix(s @ q_std @ sinv, s @ q_inf @ sinv)
    inst = BlockInstance("SUM_PQ0", {"P": p, "Q": q})
    if cfg.violate:
        return inst, a > 0
    ok = _in_class(p) and _in_class(q) and _in_class(p + q)
    return inst, ok


def _kernel_cols(rows, cols, kernel, rng, scale) -> np.ndarray:
    out = np.zeros((rows, cols), dtype=complex)
    for col in range(cols):
        for pos in kernel:
            out[pos, col] = int(rng.integers(-scale, scale + 1))
    return out


def _kernel_rows(rows, cols, left_kernel, rng, scale) -> np.ndarray:
    out = np.zeros((rows, cols), dtype=complex)
    for row in range(rows):
        for pos in left_kernel:
            out[row, pos] = int(rng.integers(-scale, scale + 1))
    return out


def _gen_abio(cfg, trial, rng, side):
    theorem = "ABIO_RIGHT" if side == "right" else "ABIO_LEFT"
    n = _dim(cfg, trial, rng)
    if cfg.violate:
        # invertible A makes A A^e B = A B, never zero against B = I
        frame = _make_frame(n, rng, cfg.entry_scale, a=n)
        inst = BlockInstance(theorem, {"A": frame.matrix, "B": DualMatrix.identity(n)})
        report = check_hypotheses(inst)
        return inst, not report.passed
    frame = _make_frame(n, rng, cfg.entry_scale)
    a, b = frame.a, frame.b
    nil = frame.nil
    unit = bool(rng.integers(0, 2))
    if unit:
        v2 = _poly_of(nil, rng, unit=True)
        v2t = _poly_of(nil, rng, unit=False)
    else:
        v2 = nil @ _poly_of(nil, rng, unit=True)
        v2t = v2 @ _poly_of(nil, rng, unit=True)
    b_std = np.zeros((n, n), dtype=complex)
    b_inf = np.zeros((n, n), dtype=complex)
    if side == "right":
        b_std[a:, :a] = _kernel_cols(b, a, frame.kernel, rng, cfg.entry_scale)
        b_inf[a:, :a] = _kernel_cols(b, a, frame.kernel, rng, cfg.entry_scale)
        b_std[a:, a:] = v2
        b_inf[a:, a:] = v2t
    else:
        b_std[:a, a:] = _kernel_rows(a, b, frame.left_kernel, rng, cfg.entry_scale)
        b_inf[:a, a:] = _kernel_rows(a, b, frame.left_kernel, rng, cfg.entry_scale)
        b_std[a:, a:] = v2
        b_inf[a:, a:] = v2t
    bb = DualMatrix(frame.s @ b_std @ frame.sinv, frame.s @ b_inf @ frame.sinv)
    inst = BlockInstance(theorem, {"A": frame.matrix, "B": bb})
    ok = _in_class(bb) and _in_class(inst.assembled())
    return inst, ok


def _gen_abco(cfg, trial, rng, side):
    theorem = "ABCO_RIGHT" if side == "right" else "ABCO_LEFT"
    n = _dim(cfg, trial, rng)
    if cfg.violate:
        frame = _make_frame(n, rng, cfg.entry_scale, a=n)
        blocks = {
            "A": frame.matrix,
            "B": DualMatrix.identity(n),
            "C": DualMatrix.identity(n),
        }
        inst = BlockInstance(theorem, blocks)
        report = check_hypotheses(inst)
        return inst, not report.passed
    frame = _make_frame(n, rng, cfg.entry_scale, a=int(rng.integers(0, n)))
    a, b = frame.a, frame.b
    nil = frame.nil
    shear = _poly_of(nil, rng, unit=False)
    w1 = _kernel_cols(b, a, frame.kernel, rng, cfg.entry_scale)
    w1t = _kernel_cols(b, a, frame.kernel, rng, cfg.entry_scale)
    w2 = _poly_of(nil, rng, unit=True)
    w2t = _poly_of(nil, rng, unit=False)
    if side == "right":
        b_std = np.zeros((n, b), dtype=complex)
        b_inf = np.zeros((n, b), dtype=complex)
        b_std[a:, :] = np.eye(b)
        b_inf[a:, :] = shear
        bb = DualMatrix(frame.s @ b_std, frame.s @ b_inf)
        cc = DualMatrix(np.hstack([w1, w2]) @ frame.sinv, np.hstack([w1t, w2t]) @ frame.sinv)
    else:
        v1 = _kernel_rows(a, b, frame.left_kernel, rng, cfg.entry_scale)
        v1t = _kernel_rows(a, b, frame.left_kernel, rng, cfg.entry_scale)
        c_std = np.zeros((b, n), dtype=complex)
        c_inf = np.zeros((b, n), dtype=complex)
        c_std[:, a:] = np.eye(b)
        c_inf[:, a:] = shear
        cc = DualMatrix(c_std @ frame.sinv, c_inf @ frame.sinv)
        bb = DualMatrix(frame.s @ np.vstack([v1, w2]), frame.s @ np.vstack([v1t, w2t]))
    inst = BlockInstance(theorem, {"A": frame.matrix, "B": bb, "C": cc})
    ok = _in_class(dmul(bb, cc)) and _in_class(inst.assembled())
    return inst, ok


def _gen_bipartite(cfg, trial, rng):
    n = _dim(cfg, trial, rng)
    if cfg.violate:
        bad = gen_existence(n, rng, positive=False, entry_scale=cfg.entry_scale)
        return BlockInstance("BIPARTITE", {"B": DualMatrix.identity(n), "C": bad}), True
    p = n if rng.integers(0, 2) else int(rng.integers(n, max(cfg.dim_max, n) + 1))
    b = _int_dual(rng, n, p, cfg.entry_scale)
    c = _int_dual(rng, p, n, cfg.entry_scale)
    inst = BlockInstance("BIPARTITE", {"B": b, "C": c})
    ok = _in_class(dmul(b, c)) and _in_class(inst.assembled())
    return inst, ok


def _gen_double_star(cfg, trial, rng):
    m = _dim(cfg, trial, rng)
    n = _dim(cfg, trial, rng, floor=2)
    scale = cfg.entry_scale
    x = DualMatrix(_nonzero_ints(rng, m, scale).reshape(-1, 1), _ints(rng, m, scale).reshape(-1, 1))
    y = DualMatrix(_nonzero_ints(rng, m, scale).reshape(-1, 1), _ints(rng, m, scale).reshape(-1, 1))
    a = DualScalar(int(rng.choice([-2, -1, 1, 2])), int(rng.integers(-scale, scale + 1)))
    b = DualScalar(int(rng.choice([-2, -1, 1, 2])), int(rng.integers(-scale, scale + 1)))
    if cfg.violate:
        ones = DualMatrix(np.ones((n, 1), dtype=complex), np.zeros((n, 1), dtype=complex))
        spec = DoubleStar(m=m, n=n, x=x, y=y, w=ones, v=ones, a=a, b=b)
        return spec, True
    w, v = _orthogonal_pair(n, rng, scale)
    spec = DoubleStar(m=m, n=n, x=x, y=y, w=w, v=v, a=a, b=b)
    theta = (x.T.std @ y.std)[0, 0] + complex(a.std * b.std)
    theta_inf = (x.T.std @ y.inf + x.T.inf @ y.std)[0, 0] + complex(a.std * b.inf + a.inf * b.std)
    if theta == 0 and theta_inf != 0:
        return spec, False
    return spec, _in_class(build_adjacency(spec).matrix)


def _gen_linked_stars(cfg, trial, rng):
    n = _dim(cfg, trial, rng)
    scale = cfg.entry_scale
    base = gen_member(n, rng, scale)
    r = tuple(int(rng.integers(2, 5)) for _ in range(n))
    pairs = [_orthogonal_pair(ri, rng, scale) for ri in r]
    x = tuple(p[0] for p in pairs)
    y = tuple(p[1] for p in pairs)
    if cfg.violate:
        ones = DualMatrix(np.ones((r[0], 1), dtype=complex), np.zeros((r[0], 1), dtype=complex))
        x = (ones,) + x[1:]
        y = (ones,) + y[1:]
        return DLinkedStars(base=base, r=r, x=x, y=y), True
    spec = DLinkedStars(base=base, r=r, x=x, y=y)
    return spec, _in_class(build_adjacency(spec).matrix)


def _windmill_sizes(cfg, trial, rng) -> tuple[int, int]:
    m = _dim(cfg, trial, rng)
    n = int(rng.integers(1, 4))
    return m, n


def _gen_windmill(cfg, trial, rng):
    m, n = _windmill_sizes(cfg, trial, rng)
    size = 2 * n - 1
    scale = cfg.entry_scale
    if cfg.violate:
        blades = tuple(DualMatrix.identity(size) for _ in range(m))
        ones = DualMatrix(np.ones((size, 1), dtype=complex), np.zeros((size, 1), dtype=complex))
        spec = DutchWindmill(m=m, n=n, blades=blades, x=(ones,) * m, y=(ones,) * m)
        return spec, True
    if rng.integers(0, 2):
        # orthogonal stratum: invertible blades, pure infinitesimal weights
        blades = tuple(_invertible_dual(size, rng, scale) for _ in range(m))
        x = tuple(_pure_eps_column(rng, size, scale) for _ in range(m))
        y = tuple(_pure_eps_column(rng, size, scale) for _ in range(m))
    else:
        # nilpotent stratum: weights supported on the exact kernels, so
        # every blade-pair product vanishes identically
        blades = []
        x = []
        y = []
        for _ in range(m):
            nil, coeffs = _superdiag_nilpotent(size, rng)
            inf = nil @ _poly_of(nil, rng, unit=True)
            blades.append(DualMatrix(nil, inf))
            kernel = [0] + [j + 1 for j, c in enumerate(coeffs) if c == 0]
            left = [size - 1] + [j for j, c in enumerate(coeffs) if c == 0]
            y_vec = DualMatrix(
                _kernel_cols(size, 1, kernel, rng, scale),
                _kernel_cols(size, 1, kernel, rng, scale),
            )
            if y_vec.norm() == 0:
                y_vec = _unit_column(size, kernel[0])
            x_vec = DualMatrix(
                _kernel_cols(size, 1, left, rng, scale),
                _kernel_cols(size, 1, left, rng, scale),
            )
            if x_vec.norm() == 0:
                x_vec = _unit_column(size, left[0])
            y.append(y_vec)
            x.append(x_vec)
        blades = tuple(blades)
    spec = DutchWindmill(m=m, n=n, blades=blades, x=tuple(x), y=tuple(y))
    # the hub product sum(x_s^T y_s) must itself admit a dual Drazin
    # inverse: a pure infinitesimal hub scalar does not, even when the
    # assembled adjacency does
    hub = DualMatrix.zeros(1)
    for xs, ys in zip(spec.x, spec.y):
        hub = hub + dmul(xs.T, ys)
    ok = _in_class(build_adjacency(spec).matrix) and _in_class(hub)
    return spec, ok


def _unit_column(size: int, pos: int) -> DualMatrix:
    std = np.zeros((size, 1), dtype=complex)
    std[pos, 0] = 1.0
    return DualMatrix(std, np.zeros((size, 1), dtype=complex))


def _invertible_dual(n, rng, scale) -> DualMatrix:
    s, sinv = _unimodular(n, rng)
    t = np.triu(_ints(rng, (n, n), scale))
    np.fill_diagonal(t, rng.choice([-2, -1, 1, 2], n))
    return DualMatrix(s @ t @ sinv, _ints(rng, (n, n), scale))


def _gen_windmill_bc0(cfg, trial, rng):
    m, n = _windmill_sizes(cfg, trial, rng)
    size = 2 * n - 1
    scale = cfg.entry_scale
    if cfg.violate:
        blades = tuple(_invertible_dual(size, rng, scale) for _ in range(m))
        ones = DualMatrix(np.ones((size, 1), dtype=complex), np.zeros((size, 1), dtype=complex))
        return DutchWindmill(m=m, n=n, blades=blades, x=(ones,) * m, y=(ones,) * m), True
    blades = tuple(_invertible_dual(size, rng, scale) for _ in range(m))
    x = tuple(_pure_eps_column(rng, size, scale) for _ in range(m))
    y = tuple(_pure_eps_column(rng, size, scale) for _ in range(m))
    spec = DutchWindmill(m=m, n=n, blades=blades, x=x, y=y)
    return spec, _in_class(build_adjacency(spec).matrix)


def _gen_windmill_group(cfg, trial, rng):
    m, n = _windmill_sizes(cfg, trial, rng)
    size = 2 * n - 1
    scale = cfg.entry_scale
    if cfg.violate:
        blades = tuple(_invertible_dual(size, rng, scale) for _ in range(m))
        ones = DualMatrix(np.ones((size, 1), dtype=complex), np.zeros((size, 1), dtype=complex))
        return DutchWindmill(m=m, n=n, blades=blades, x=(ones,) * m, y=(ones,) * m), True
    blades = []
    for _ in range(m):
        if rng.integers(0, 2):
            blades.append(_invertible_dual(size, rng, scale))
        else:
            # singular index-one blade: invertible block bordered by zeros
            blades.append(_group_frame(size, int(rng.integers(0, size)), rng, scale))
    blades = tuple(blades)
    x = tuple(_pure_eps_column(rng, size, scale) for _ in range(m))
    y = tuple(_pure_eps_column(rng, size, scale) for _ in range(m))
    spec = DutchWindmill(m=m, n=n, blades=blades, x=x, y=y)
    return spec, _in_class(build_adjacency(spec).matrix)


def _group_frame(size, a, rng, scale) -> DualMatrix:
    s, sinv = _unimodular(size, rng)
    std = np.zeros((size, size), dtype=complex)
    inf = np.zeros((size, size), dtype=complex)
    if a:
        p = np.triu(_ints(rng, (a, a), scale))
        np.fill_diagonal(p, rng.choice([-2, -1, 1, 2], a))
        std[:a, :a] = p
        inf[:a, :a] = _ints(rng, (a, a), scale)
    return DualMatrix(s @ std @ sinv, s @ inf @ sinv)


_GENERATORS = {
    "CLINE": _gen_cline,
    "TRI_UPPER": lambda cfg, trial, rng: _gen_tri(cfg, trial, rng, "upper"),
    "TRI_LOWER": lambda cfg, trial, rng: _gen_tri(cfg, trial, rng, "lower"),
    "SUM_PQ0": _gen_sum,
    "ABIO_RIGHT": lambda cfg, trial, rng: _gen_abio(cfg, trial, rng, "right"),
    "ABIO_LEFT": lambda cfg, trial, rng: _gen_abio(cfg, trial, rng, "left"),
    "ABCO_RIGHT": lambda cfg, trial, rng: _gen_abco(cfg, trial, rng, "right"),
    "ABCO_LEFT": lambda cfg, trial, rng: _gen_abco(cfg, trial, rng, "left"),
    "BIPARTITE": _gen_bipartite,
    "DOUBLE_STAR": _gen_double_star,
    "LINKED_STARS": _gen_linked_stars,
    "WINDMILL": _gen_windmill,
    "WINDMILL_BC0": _gen_windmill_bc0,
    "WINDMILL_GROUP": _gen_windmill_group,
}


def gen_instance(cfg: GenConfig, trial: int):
    """Instance for one trial, resampling until the accept filter passes.

    Returns a BlockInstance for the block theorems and a GraphSpec for the
    digraph families.  Raises GenerationFailed when the filter keeps
    rejecting, which reports the draw rather than looping forever.
    """
    gen = _GENERATORS[cfg.family]
    rng = _trial_rng(cfg, trial)
    rejected = 0
    for _ in range(_MAX_ATTEMPTS):
        inst, ok = gen(cfg, trial, rng)
        if ok:
            if rejected:
                logger.debug(
                    "family %s trial %d: accepted after %d rejected draws",
                    cfg.family, trial, rejected,
                )
            return inst
        rejected += 1
    raise GenerationFailed(
        f"family {cfg.family} trial {trial}: no acceptable instance"
        f" in {_MAX_ATTEMPTS} draws"
    )


# ---------------------------------------------------------------------------
# exact rank oracle


def _gauss_int(value: float, what: str) -> Fraction:
    if value != int(value):
        raise InexactInput(f"{what} is not exactly a Gaussian integer: {value!r}")
    return Fraction(int(value))


_CZERO = (Fraction(0), Fraction(0))


def _cadd(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _csub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _cmul(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _cinv(u):
    den = u[0] * u[0] + u[1] * u[1]
    return (u[0] / den, -u[1] / den)


def _dmul_exact(x, y):
    return (_cmul(x[0], y[0]), _cadd(_cmul(x[0], y[1]), _cmul(x[1], y[0])))


def _dsub_exact(x, y):
    return (_csub(x[0], y[0]), _csub(x[1], y[1]))


def smith_rank_oracle(x: DualMatrix) -> tuple[int, int]:
    """Exact pivot counts (appreciable, infinitesimal) over the dual ring.

    Gaussian elimination with unit pivots runs until no entry has a
    nonzero standard part; what remains is epsilon times a complex matrix
    whose exact rank gives the infinitesimal pivot count.  Requires
    Gaussian integer entries so every step stays in exact fractions.
    """
    rows, cols = x.shape
    work = [
        [
            (
                (_gauss_int(x.std[i, j].real, f"std[{i},{j}].re"),
                 _gauss_int(x.std[i, j].imag, f"std[{i},{j}].im")),
                (_gauss_int(x.inf[i, j].real, f"inf[{i},{j}].re"),
                 _gauss_int(x.inf[i, j].imag, f"inf[{i},{j}].im")),
            )
            for j in range(cols)
        ]
        for i in range(rows)
    ]
    r = 0
    while True:
        pivot = next(
            ((i, j) for i in range(len(work)) for j in range(len(work[0]) if work else 0)
             if work[i][j][0] != _CZERO),
            None,
        )
        if pivot is None:
            break
        pi, pj = pivot
        pval = work[pi][pj]
        pinv_std = _cinv(pval[0])
        pinv = (pinv_std, _cmul((Fraction(-1), Fraction(0)), _cmul(pinv_std, _cmul(pval[1], pinv_std))))
        for i in range(len(work)):
            if i == pi:
                continue
            factor = _dmul_exact(work[i][pj], pinv)
            work[i] = [
                _dsub_exact(work[i][j], _dmul_exact(factor, work[pi][j]))
                for j in range(len(work[0]))
            ]
        for j in range(len(work[0])):
            if j == pj:
                continue
            factor = _dmul_exact(pinv, work[pi][j])
            for i in range(len(work)):
                work[i][j] = _dsub_exact(work[i][j], _dmul_exact(work[i][pj], factor))
        work = [
            [work[i][j] for j in range(len(work[0])) if j != pj]
            for i in range(len(work)) if i != pi
        ]
        r += 1
        if not work or not work[0]:
            break
    # remaining entries are pure infinitesimals; their rank over the
    # complex rationals is the epsilon pivot count
    resid = [[entry[1] for entry in row] for row in work]
    s = _exact_rank(resid)
    return r, s


def _exact_rank(rows_in) -> int:
    rows = [list(row) for row in rows_in if any(v != _CZERO for v in row)]
    rank = 0
    col = 0
    width = len(rows_in[0]) if rows_in else 0
    while rows and col < width:
        pivot_row = next((i for i, row in enumerate(rows) if row[col] != _CZERO), None)
        if pivot_row is None:
            col += 1
            continue
        rows[0], rows[pivot_row] = rows[pivot_row], rows[0]
        inv = _cinv(rows[0][col])
        for i in range(1, len(rows)):
            if rows[i][col] == _CZERO:
                continue
            factor = _cmul(rows[i][col], inv)
            rows[i] = [_csub(rows[i][j], _cmul(factor, rows[0][j])) for j in range(width)]
        rows = rows[1:]
        rows = [row for row in rows if any(v != _CZERO for v in row)]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------------------
# fuzz driver


_GRAPH_OPS = {
    "DOUBLE_STAR": ds_dual_drazin,
    "LINKED_STARS": dls_dual_drazin,
    "WINDMILL": dw_dual_drazin,
    "WINDMILL_BC0": dw_bc_zero,
    "WINDMILL_GROUP": dw_group,
}

_WINDMILL_FORM = {"WINDMILL": "drazin", "WINDMILL_BC0": "bc_zero", "WINDMILL_GROUP": "group"}


@dataclass
class VerifyReport:
    """JSON-lines fuzzing record: one dict per trial plus a summary dict."""

    config: GenConfig
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.summary.get("pass_count") == self.config.trials)

    def to_jsonl(self) -> str:
        lines = [dumps_doc(rec) for rec in self.records]
        lines.append(dumps_doc(self.summary))
        return "".join(lines)

    def write(self, path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding="utf-8")


def _instance_doc(inst) -> dict:
    if isinstance(inst, BlockInstance):
        return inst.to_doc()
    return graph_spec_to_doc(inst)


def _instance_hypotheses(inst, family, tol, res_tol):
    if isinstance(inst, BlockInstance):
        return check_hypotheses(inst, tol, res_tol)
    return graph_hypotheses(inst, _WINDMILL_FORM.get(family, "drazin"), tol, res_tol)


def _instance_closed_form(inst, family, tol, res_tol) -> DualMatrix:
    if isinstance(inst, BlockInstance):
        return closed_form(inst, tol, res_tol)
    return _GRAPH_OPS[family](inst, tol, res_tol)


def _instance_assembled(inst) -> DualMatrix:
    if isinstance(inst, BlockInstance):
        return inst.assembled()
    return build_adjacency(inst).matrix


def fuzz(cfg: GenConfig, tol=None, res_tol=None) -> VerifyReport:
    """Generate, gate and verify cfg.trials instances of one family.

    Each record carries the hypothesis residuals, the relative gap between
    the closed form and the series inverse of the assembled matrix, and
    the residuals of the three defining equations.  The closed form is
    only evaluated when every hypothesis holds, so a config built to
    violate them produces a report with zero evaluations.  Counterexamples
    are kept on the report and, when artifact_dir is set, written to disk.
    """
    report = VerifyReport(config=cfg)
    evaluated = 0
    hypothesis_failures = 0
    generation_failures = 0
    pass_count = 0
    max_err = 0.0
    max_def = 0.0
    for trial in range(cfg.trials):
        record: dict = {"record": "trial", "family": cfg.family, "trial": trial}
        try:
            inst = gen_instance(cfg, trial)
        except GenerationFailed as exc:
            generation_failures += 1
            record.update({"pass": False, "note": str(exc)})
            report.records.append(record)
            continue
        doc = _instance_doc(inst)
        assembled = _instance_assembled(inst)
        record["digest"] = hashlib.sha256(dumps_doc(doc).encode()).hexdigest()[:16]
        record["order"] = assembled.shape[0]
        hyp = _instance_hypotheses(inst, cfg.family, tol, res_tol)
        record["hypotheses_pass"] = hyp.passed
        record["hypothesis_residuals"] = {c.name: c.residual for c in hyp.conditions}
        if not hyp.passed:
            hypothesis_failures += 1
            record["pass"] = bool(cfg.violate)
            if not cfg.violate:
                record["note"] = "hypotheses failed on a non-violating draw"
                _persist(report, cfg, trial, doc, record)
            report.records.append(record)
            if record["pass"]:
                pass_count += 1
            continue
        try:
            closed = _instance_closed_form(inst, cfg.family, tol, res_tol)
            oracle = dual_drazin(assembled, tol, res_tol).inverse
        except DualDrazinError as exc:
            record.update({"pass": False, "note": f"{type(exc).__name__}: {exc}"})
            _persist(report, cfg, trial, doc, record)
            report.records.append(record)
            continue
        evaluated += 1
        rel = float((closed - oracle).norm() / (1.0 + oracle.norm()))
        defres = defining_residuals(assembled, closed, tol=tol)
        record["closed_form_error"] = rel
        record["defining_residuals"] = [float(v) for v in defres]
        ok = rel <= cfg.max_rel_error and max(defres) <= cfg.max_rel_error
        record["pass"] = bool(ok) and not cfg.violate
        if cfg.violate:
            record["note"] = "closed form evaluated despite violate config"
        max_err = max(max_err, rel)
        max_def = max(max_def, max(defres))
        if record["pass"]:
            pass_count += 1
        else:
            _persist(report, cfg, trial, doc, record)
        report.records.append(record)
    report.summary = {
        "record": "summary",
        "family": cfg.family,
        "seed": cfg.seed,
        "violate": cfg.violate,
        "trials": cfg.trials,
        "evaluated": evaluated,
        "hypothesis_failures": hypothesis_failures,
        "generation_failures": generation_failures,
        "pass_count": pass_count,
        "max_closed_form_error": max_err,
        "max_defining_residual": float(max_def),
    }
    return report


def _persist(report: VerifyReport, cfg: GenConfig, trial: int, doc: dict, record: dict) -> None:
    entry = {"family": cfg.family, "trial": trial, "instance": doc, "record": dict(record)}
    report.counterexamples.append(entry)
    if cfg.artifact_dir is None:
        return
    directory = Path(cfg.artifact_dir)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{cfg.family.lower()}_{trial:04d}.json"
    path.write_text(dumps_doc(entry), encoding="utf-8")
    record["artifact"] = str(path)
