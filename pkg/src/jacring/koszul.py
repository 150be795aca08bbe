"""Koszul complexes of a linear system W in S^N acting on the polynomial
ring or on a Jacobian ring, middle-exactness reports, and the exactness
scan over (a, s) grids of certified base-point-free subsystems.

Two evaluation paths compute the same defect:

* generic: materialize the two differentials as dense matrices and take
  exact ranks over GF(p);
* monomial: when W is spanned by monomials the differentials preserve the
  ZZ^n multidegree, so the complex splits into many small blocks.  This is
  what makes the larger scan grids tractable.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .jacobian import JacobianRing
from .modp import check_budget, rank_gfp
from .polynomials import dim_graded, monomial_array, monomial_index
from .spaces import GradedSubspace, bpf_check, multiplication_matrix


class BpfSamplingError(RuntimeError):
    """No certified base-point-free subsystem found within the retry bound."""


@dataclass(frozen=True)
class KoszulReport:
    rank_in: int
    kernel_out: int
    defect: int
    exact: bool
    shape_in: tuple[int, int]
    shape_out: tuple[int, int]


@dataclass(frozen=True)
class KoszulSlice:
    """Explicit differentials around the middle term M^(a+N) (x) Lambda^s W."""

    module_kind: str          # "S" or "R"
    a: int
    s: int
    N: int
    w: int
    delta_in: np.ndarray      # M^a (x) Λ^(s+1) W  ->  M^(a+N) (x) Λ^s W
    delta_out: np.ndarray     # M^(a+N) (x) Λ^s W  ->  M^(a+2N) (x) Λ^(s-1) W
    p: int


def _comb_count(w: int, t: int) -> int:
    if t < 0 or t > w:
        return 0
    return math.comb(w, t)


def _module_dim(k: int, n: int, ring: JacobianRing | None) -> int:
    if k < 0:
        return 0
    return ring.hilbert(k) if ring is not None else dim_graded(n, k)


def _mult_mats(W: GradedSubspace, k: int, ring: JacobianRing | None,
               budget: int | None) -> list[np.ndarray]:
    """Multiplication by each W basis element as a matrix M^k -> M^(k+N)."""
    n, p, N = W.n, W.p, W.degree
    tgt = _module_dim(k + N, n, ring)
    if k < 0:
        return [np.zeros((tgt, 0), dtype=np.int64) for _ in range(W.dim)]
    mats = []
    for poly in W.polynomials():
        check_budget(dim_graded(n, k + N), dim_graded(n, k), budget)
        M = multiplication_matrix(poly, k)
        if ring is not None:
            M = ring.reduce(M[:, ring.quotient_basis(k)].T, k + N).T
        mats.append(M)
    return mats


def _koszul_delta(mats: list[np.ndarray], w: int, t: int, p: int,
                  budget: int | None) -> np.ndarray:
    """Differential M^k (x) Λ^t W -> M^(k+N) (x) Λ^(t-1) W with the sign
    convention delta(m (x) w_{i0}^...^w_{it-1}) = sum_j (-1)^j w_{ij} m (x) (drop j)."""
    dim_src = mats[0].shape[1] if mats else 0
    dim_tgt = mats[0].shape[0] if mats else 0
    Ct = _comb_count(w, t)
    Ct1 = _comb_count(w, t - 1)
    rows, cols = dim_tgt * Ct1, dim_src * Ct
    check_budget(max(rows, 1), max(cols, 1), budget)
    D = np.zeros((rows, cols), dtype=np.int64)
    if rows == 0 or cols == 0:
        return D
    rank_t1 = {c: i for i, c in enumerate(itertools.combinations(range(w), t - 1))}
    src_idx = np.arange(dim_src)
    tgt_idx = np.arange(dim_tgt)
    for ci, T in enumerate(itertools.combinations(range(w), t)):
        for pos, j in enumerate(T):
            sub = T[:pos] + T[pos + 1:]
            cj = rank_t1[sub]
            sign = 1 if pos % 2 == 0 else p - 1
            block = (sign * mats[j]) % p
            D[np.ix_(tgt_idx * Ct1 + cj, src_idx * Ct + ci)] = (
                D[np.ix_(tgt_idx * Ct1 + cj, src_idx * Ct + ci)] + block
            ) % p
    return D


def koszul_slice(W: GradedSubspace, a: int, s: int,
                 ring: JacobianRing | None = None,
                 budget: int | None = None) -> KoszulSlice:
    """Explicit Koszul differentials around left degree a and exterior index s."""
    if s < 0:
        raise ValueError("s must be >= 0")
    if W.dim == 0:
        raise ValueError("W must be nonzero")
    n, p, N = W.n, W.p, W.degree
    w = W.dim
    mats_in = _mult_mats(W, a, ring, budget)
    mats_out = _mult_mats(W, a + N, ring, budget)
    delta_in = _koszul_delta(mats_in, w, s + 1, p, budget)
    delta_out = _koszul_delta(mats_out, w, s, p, budget) if s >= 1 else np.zeros(
        (0, _module_dim(a + N, n, ring) * _comb_count(w, s)), dtype=np.int64
    )
    return KoszulSlice(
        module_kind="R" if ring is not None else "S",
        a=a, s=s, N=N, w=w, delta_in=delta_in, delta_out=delta_out, p=p,
    )


def report_from_slice(sl: KoszulSlice) -> KoszulReport:
    rank_in = rank_gfp(sl.delta_in, sl.p)
    mid = sl.delta_in.shape[0]
    rank_out = rank_gfp(sl.delta_out, sl.p)
    kernel_out = mid - rank_out
    defect = kernel_out - rank_in
    return KoszulReport(
        rank_in=rank_in,
        kernel_out=kernel_out,
        defect=defect,
        exact=defect == 0,
        shape_in=sl.delta_in.shape,
        shape_out=sl.delta_out.shape,
    )


# -- multidegree fast path ---------------------------------------------------


def _term_keys(n: int, k: int, Wexp: np.ndarray, t: int) -> tuple[np.ndarray, list]:
    """Multidegree key of every basis element of S^k (x) Λ^t W, as a
    (dim S^k, C(w, t)) int64 array, plus the combination list."""
    w = Wexp.shape[0]
    combs = list(itertools.combinations(range(w), t))
    mono = monomial_array(n, k)
    powers = (1 << (7 * np.arange(n))).astype(np.int64)  # exponents stay < 128
    mono_key = mono @ powers
    comb_key = np.array(
        [Wexp[list(T)].sum(axis=0) @ powers for T in combs], dtype=np.int64
    ).reshape(len(combs))
    return mono_key[:, None] + comb_key[None, :], combs


def _middle_exactness_monomial(W: GradedSubspace, a: int, s: int) -> KoszulReport:
    n, p, N = W.n, W.p, W.degree
    w = W.dim
    Wexp = monomial_array(n, N)[list(W.pivots)]
    dims = {}
    for name, k, t in (("L", a, s + 1), ("M", a + N, s), ("R", a + 2 * N, s - 1)):
        dk = dim_graded(n, k) if k >= 0 else 0
        dims[name] = dk * _comb_count(w, t)
    shape_in = (dims["M"], dims["L"])
    shape_out = (dims["R"], dims["M"])
    if dims["M"] == 0:
        return KoszulReport(0, 0, 0, True, shape_in, shape_out)

    keys_M, combs_M = _term_keys(n, a + N, Wexp, s)
    rank_M = {T: i for i, T in enumerate(combs_M)}
    mid_pos: dict[tuple[int, int], tuple[int, int]] = {}
    blocks: dict[int, dict] = {}
    dM = keys_M.shape[0]
    for mi in range(dM):
        for ci in range(len(combs_M)):
            key = int(keys_M[mi, ci])
            blk = blocks.setdefault(key, {"nmid": 0, "A": [], "Acols": 0,
                                          "B": [], "right_local": {}})
            mid_pos[(mi, ci)] = (key, blk["nmid"])
            blk["nmid"] += 1

    idx_mid = monomial_index(n, a + N)
    mono_L = monomial_array(n, a) if a >= 0 else np.zeros((0, n), dtype=np.int64)

    # incoming differential, grouped by multidegree
    if dims["L"]:
        combs_L = list(itertools.combinations(range(w), s + 1))
        for mi in range(mono_L.shape[0]):
            me = mono_L[mi]
            for T in combs_L:
                entries = []
                for pos, j in enumerate(T):
                    tgt_m = idx_mid[tuple(int(x) for x in me + Wexp[j])]
                    tgt_c = rank_M[T[:pos] + T[pos + 1:]]
                    key, loc = mid_pos[(tgt_m, tgt_c)]
                    sign = 1 if pos % 2 == 0 else p - 1
                    entries.append((key, loc, sign))
                # all targets share one multidegree
                key = entries[0][0]
                blk = blocks[key]
                col = blk["Acols"]
                blk["Acols"] += 1
                for _, loc, sign in entries:
                    blk["A"].append((loc, col, sign))

    # outgoing differential, grouped the same way
    if dims["R"] and s >= 1:
        idx_right = monomial_index(n, a + 2 * N)
        right_keys, combs_R = _term_keys(n, a + 2 * N, Wexp, s - 1)
        rank_R = {T: i for i, T in enumerate(combs_R)}
        mono_M = monomial_array(n, a + N)
        right_pos: dict[tuple[int, int], int] = {}
        for mi in range(dM):
            for ci, T in enumerate(combs_M):
                key, loc = mid_pos[(mi, ci)]
                blk = blocks[key]
                me = mono_M[mi]
                for pos, j in enumerate(T):
                    tgt = (idx_right[tuple(int(x) for x in me + Wexp[j])],
                           rank_R[T[:pos] + T[pos + 1:]])
                    rl = blk["right_local"]
                    if tgt not in rl:
                        rl[tgt] = len(rl)
                    sign = 1 if pos % 2 == 0 else p - 1
                    blk["B"].append((rl[tgt], loc, sign))

    rank_in = 0
    rank_out = 0
    for blk in blocks.values():
        if blk["A"]:
            A = np.zeros((blk["nmid"], blk["Acols"]), dtype=np.int64)
            for r, c, v in blk["A"]:
                A[r, c] = (A[r, c] + v) % p
            rank_in += rank_gfp(A, p)
        if blk["B"]:
            B = np.zeros((len(blk["right_local"]), blk["nmid"]), dtype=np.int64)
            for r, c, v in blk["B"]:
                B[r, c] = (B[r, c] + v) % p
            rank_out += rank_gfp(B, p)
    kernel_out = dims["M"] - rank_out
    defect = kernel_out - rank_in
    return KoszulReport(rank_in, kernel_out, defect, defect == 0,
                        shape_in, shape_out)


def middle_exactness(W: GradedSubspace, a: int, s: int,
                     ring: JacobianRing | None = None,
                     budget: int | None = None,
                     force_generic: bool = False) -> KoszulReport:
    """Exact rank of the incoming differential, exact kernel of the outgoing
    one, and their difference (the middle defect)."""
    if ring is None and W.is_monomial_spanned() and not force_generic:
        return _middle_exactness_monomial(W, a, s)
    return report_from_slice(koszul_slice(W, a, s, ring=ring, budget=budget))


# -- subsystem sampling and the scan ----------------------------------------


def sample_bpf_subsystem(n: int, N: int, codim: int, p: int,
                         rng: np.random.Generator,
                         style: str = "dense",
                         max_tries: int = 50,
                         m_max: int | None = None,
                         budget: int | None = None) -> GradedSubspace:
    """Random codimension-c subsystem of S^N, certified base-point-free.

    style="dense" draws a random row space; style="monomial" keeps all
    monomials except c random non-power ones (the pure powers guarantee an
    empty base locus, and the resulting complex splits by multidegree).
    """
    D = dim_graded(n, N)
    if codim < 0 or codim >= D:
        raise ValueError(f"codimension {codim} impossible in dim {D}")
    idx = monomial_index(n, N)
    pure = {idx[m] for m in ((0,) * i + (N,) + (0,) * (n - i - 1) for i in range(n))}
    for _ in range(max_tries):
        if style == "monomial":
            others = sorted(set(range(D)) - pure)
            if len(others) < codim:
                raise BpfSamplingError(
                    f"cannot exclude {codim} non-power monomials at (n={n}, N={N})"
                )
            drop = set(int(others[i]) for i in
                       rng.choice(len(others), size=codim, replace=False))
            W = GradedSubspace.span_of_monomials(
                sorted(set(range(D)) - drop), n, p, N
            )
        else:
            rows = rng.integers(0, p, size=(D - codim, D), dtype=np.int64)
            W = GradedSubspace.from_rows(rows, n, p, N)
            if W.dim != D - codim:
                continue
        if bpf_check(W, m_max, budget):
            return W
    raise BpfSamplingError(
        f"no certified base-point-free W after {max_tries} tries "
        f"(n={n}, N={N}, codim={codim})"
    )


@dataclass(frozen=True)
class GreenCell:
    n: int
    N: int
    codim: int
    trial: int
    a: int
    s: int
    rank_in: int
    kernel_out: int
    defect: int
    bound_holds: bool
    exact: bool


GREEN_CSV_COLUMNS = ("n", "N", "codim", "trial", "a", "s", "rank_in",
                     "kernel_out", "defect", "bound_holds", "exact")


def _grid_cost(n: int, N: int, codim: int, a_max: int, s_max: int) -> float:
    """Worst elimination cost over the grid for the generic dense path."""
    worst = 0.0
    D = dim_graded(n, N) - codim
    for a in range(a_max + 1):
        for s in range(s_max + 1):
            rows = dim_graded(n, a + N) * _comb_count(D, s)
            cols = dim_graded(n, a) * _comb_count(D, s + 1)
            worst = max(worst, rows * cols * min(rows, cols))
    return worst


DENSE_COST_LIMIT = 2e9


def green_scan(n: int, N: int, codims, a_max: int, s_max: int, trials: int,
               p: int, rng: np.random.Generator,
               style: str = "auto",
               budget: int | None = None) -> list[GreenCell]:
    """Evaluate middle exactness over the (a, s) grid for `trials` certified
    base-point-free subsystems of each listed codimension."""
    cells = []
    for c in codims:
        if style == "auto":
            c_style = "dense" if _grid_cost(n, N, c, a_max, s_max) <= DENSE_COST_LIMIT \
                else "monomial"
        else:
            c_style = style
        for trial in range(trials):
            W = sample_bpf_subsystem(n, N, c, p, rng, style=c_style, budget=budget)
            for a in range(a_max + 1):
                for s in range(s_max + 1):
                    rep = middle_exactness(W, a, s, budget=budget)
                    cells.append(GreenCell(
                        n=n, N=N, codim=c, trial=trial, a=a, s=s,
                        rank_in=rep.rank_in, kernel_out=rep.kernel_out,
                        defect=rep.defect, bound_holds=a >= s + c,
                        exact=rep.exact,
                    ))
    return cells


# -- Jacobian-ring instance of the complex -----------------------------------


@dataclass(frozen=True)
class JacobianKoszulReport:
    report: KoszulReport
    a: int                      # left degree -d-2+Np
    s: int
    codim_W: int
    green_bound_holds: bool     # a >= s + codim W
    transfer_condition: bool    # -d-2+N(p+1) >= N-1


def jacobian_koszul_check(ring: JacobianRing, W: GradedSubspace, p_index: int,
                          s: int, budget: int | None = None) -> JacobianKoszulReport:
    """Middle exactness of the Jacobian-ring Koszul slice at left degree
    a = -d-2+N*p_index, for a system W between J^N and S^N."""
    X = ring.X
    if W.degree != X.N or W.n != X.n or W.p != X.p:
        raise ValueError("W must be a subspace of S^N for this hypersurface")
    cert = ring.smoothness_certificate()
    if not cert.smooth:
        raise ValueError(f"hypersurface not certified smooth: {cert.reason}")
    if not W.contains(ring.jacobian_piece(X.N)):
        raise ValueError("W must contain the degree-N piece of the Jacobian ideal")
    a = -X.d - 2 + X.N * p_index
    rep = middle_exactness(W, a, s, ring=ring, budget=budget)
    return JacobianKoszulReport(
        report=rep,
        a=a,
        s=s,
        codim_W=W.codim,
        green_bound_holds=a >= s + W.codim,
        transfer_condition=(a + X.N) >= X.N - 1,
    )
