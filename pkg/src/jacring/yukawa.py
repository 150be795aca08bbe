"""Multiplication into the socle: the coupling pairing, the non-vanishing
of d-fold products modulo the Jacobian ideal, and the step-by-step
hyperplane chain (colon system, base-point-freeness, product spans,
socle image) for Calabi-Yau degree N = d+2."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jacobian import Hypersurface, JacobianRing, NotSmoothError
from .modp import matmul_gfp, nullspace_gfp, rank_gfp
from .polynomials import dim_graded, product_index_table
from .spaces import (
    GradedSubspace,
    annihilator,
    bpf_check,
    colon_by_linear_forms,
    product_span,
)


def _require_smooth(ring: JacobianRing) -> None:
    cert = ring.smoothness_certificate()
    if not cert.smooth:
        raise NotSmoothError(cert.reason or "not certified smooth")


def socle_functional(ring: JacobianRing) -> np.ndarray:
    """Linear functional on S^sigma computing the socle coordinate."""
    sigma = ring.X.socle_degree
    idx = ring.socle_index()
    D = dim_graded(ring.X.n, sigma)
    e = np.zeros((1, D), dtype=np.int64)
    data = ring._degree_data(sigma)
    e[0, idx] = 1
    if data.rref is not None and len(data.pivots):
        # coordinate after reduction: v[idx] - v[pivots] . rref[:, idx]
        e[0, data.pivots] = (-data.rref[:, idx]) % ring.X.p
    return e[0]


def socle_pairing_rank(ring: JacobianRing, A: GradedSubspace, B: GradedSubspace) -> int:
    """Rank of the pairing A x B -> R^sigma induced by multiplication and
    projection to the one-dimensional socle."""
    _require_smooth(ring)
    X = ring.X
    sigma = X.socle_degree
    if A.degree + B.degree != sigma:
        raise ValueError("degrees must sum to the socle degree")
    if A.dim == 0 or B.dim == 0:
        return 0
    u = socle_functional(ring)
    T = product_index_table(X.n, A.degree, B.degree)
    # P[i, j] = sum_{mu,nu} A[i,mu] B[j,nu] u[mu*nu]
    U = u[T]  # (dim S^a, dim S^(sigma-a))
    P = matmul_gfp(matmul_gfp(A.basis, U, X.p), B.basis.T, X.p)
    return rank_gfp(P, X.p)


def power_span(K: GradedSubspace, d: int, budget: int | None = None) -> GradedSubspace:
    """Row-reduced span of d-fold products K^d, built iteratively."""
    if d < 1:
        raise ValueError("need d >= 1")
    out = K
    for _ in range(d - 1):
        out = product_span(out, K, budget)
    return out


def yukawa_nonvanishing(ring: JacobianRing, K: GradedSubspace,
                        budget: int | None = None) -> bool:
    """True iff the image of K^d in R^(d(d+2)) is nonzero, for N = d+2."""
    X = ring.X
    if X.N != X.d + 2:
        raise ValueError("non-vanishing check needs Calabi-Yau degree N = d+2")
    if K.degree != X.d + 2:
        raise ValueError("K must sit in degree d+2")
    _require_smooth(ring)
    if not K.contains(ring.jacobian_piece(X.N)):
        raise ValueError("K must contain the degree-N piece of the Jacobian ideal")
    Kd = power_span(K, X.d, budget)
    image = ring.reduce(Kd.basis, X.socle_degree)
    return bool(image.any())


@dataclass(frozen=True)
class ChainStep:
    step: str
    expected: str
    got: int | str
    ok: bool

    def as_dict(self) -> dict:
        return {"step": self.step, "expected": self.expected,
                "got": self.got, "ok": self.ok}


@dataclass(frozen=True)
class YukawaChainReport:
    d: int
    N: int
    steps: tuple[ChainStep, ...]

    @property
    def all_ok(self) -> bool:
        return all(s.ok for s in self.steps)


def random_hyperplane_over_jacobian(ring: JacobianRing,
                                    rng: np.random.Generator) -> GradedSubspace:
    """Random codimension-1 subspace of S^(d+2) containing J^(d+2): the
    kernel of a random nonzero functional vanishing on the ideal piece."""
    X = ring.X
    J = ring.jacobian_piece(X.N)
    ann = annihilator(J)
    if ann.shape[0] == 0:
        raise ValueError("Jacobian piece is full; no hyperplane contains it")
    while True:
        coeffs = rng.integers(0, X.p, size=ann.shape[0], dtype=np.int64)
        u = matmul_gfp(coeffs[None, :], ann, X.p)
        if u.any():
            break
    rows = nullspace_gfp(u, X.p)
    return GradedSubspace.from_rows(rows, X.n, X.p, X.N)


def yukawa_chain(ring: JacobianRing, K: GradedSubspace,
                 budget: int | None = None) -> YukawaChainReport:
    """Evaluate every step of the hyperplane chain with exact dimensions.

    Failing steps are reported, not fatal."""
    X = ring.X
    d, N, n, p = X.d, X.N, X.n, X.p
    if N != d + 2:
        raise ValueError("chain needs Calabi-Yau degree N = d+2")
    if K.degree != d + 2 or K.codim != 1:
        raise ValueError("K must be a hyperplane of S^(d+2)")
    _require_smooth(ring)
    if not K.contains(ring.jacobian_piece(N)):
        raise ValueError("K must contain the degree-N piece of the Jacobian ideal")

    steps: list[ChainStep] = []

    Kp = colon_by_linear_forms(K)
    steps.append(ChainStep("colon_codim", f"<= {d + 2}", Kp.codim,
                           Kp.codim <= d + 2))

    bpf = bpf_check(Kp, budget=budget)
    steps.append(ChainStep("colon_bpf", "verified",
                           f"verified at degree {bpf.degree}" if bpf else "unknown",
                           bool(bpf)))

    full_2d4 = dim_graded(n, 2 * d + 4)
    span = product_span(GradedSubspace.full(n, p, d + 3), Kp, budget)
    steps.append(ChainStep("span_full_times_colon", f"dim {full_2d4}", span.dim,
                           span.dim == full_2d4))

    K2 = product_span(K, K, budget)
    steps.append(ChainStep("square_full", f"dim {full_2d4}", K2.dim,
                           K2.dim == full_2d4))

    Kd = power_span(K, d, budget)
    full_top = dim_graded(n, d * (d + 2))
    steps.append(ChainStep("power_full", f"dim {full_top}", Kd.dim,
                           Kd.dim == full_top))

    image = ring.reduce(Kd.basis, X.socle_degree)
    nonzero = bool(image.any())
    steps.append(ChainStep("socle_image_nonzero", "nonzero",
                           "nonzero" if nonzero else "zero", nonzero))

    return YukawaChainReport(d=d, N=N, steps=tuple(steps))
