"""Jacobian ideals and rings of degree-N forms in n = d+2 variables,
smoothness certification through the Artinian-Gorenstein socle test, and
primitive Hodge numbers via the residue identification.

Forms whose partial derivatives are all monomials (Fermat, notably) take a
combinatorial path: the degree-k piece of the ideal is a span of monomials,
so dimensions reduce to counting a union of shifted monomial sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .modp import check_budget, matmul_gfp, rref_gfp
from .polynomials import (
    Polynomial,
    dim_graded,
    monomial_array,
    monomial_exponents,
    monomial_index,
)
from .spaces import GradedSubspace


class NotSmoothError(ValueError):
    """Operation requires a smooth-certified hypersurface."""


@dataclass(frozen=True)
class Hypersurface:
    """A degree-N form in d+2 variables, cutting out a fiber of dimension d."""

    f: Polynomial
    d: int
    N: int

    def __post_init__(self):
        if self.d < 0 or self.N < 1:
            raise ValueError("need d >= 0 and N >= 1")
        if self.f.n != self.d + 2:
            raise ValueError(f"f must live in {self.d + 2} variables")
        if self.f.is_zero() or not self.f.is_homogeneous() or self.f.degree() != self.N:
            raise ValueError(f"f must be nonzero homogeneous of degree {self.N}")
        p = self.f.p
        if self.N % p == 0 or (self.N - 1) % p == 0:
            raise ValueError(
                f"modulus {p} divides N or N-1; differentiation degenerates"
            )

    @property
    def n(self) -> int:
        return self.d + 2

    @property
    def p(self) -> int:
        return self.f.p

    @property
    def socle_degree(self) -> int:
        return (self.d + 2) * (self.N - 2)


def fermat(d: int, N: int, p: int) -> Hypersurface:
    n = d + 2
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = N
        terms[tuple(e)] = 1
    return Hypersurface(Polynomial(n, p, terms), d, N)


def random_smooth(
    d: int,
    N: int,
    p: int,
    rng: np.random.Generator,
    sparse_terms: int = 4,
    max_tries: int = 60,
) -> Hypersurface:
    """Fermat plus a random sparse perturbation, retried until the socle
    certificate passes."""
    n = d + 2
    monos = monomial_exponents(n, N)
    for _ in range(max_tries):
        terms = {}
        for i in range(n):
            e = [0] * n
            e[i] = N
            terms[tuple(e)] = 1
        for _ in range(sparse_terms):
            m = monos[int(rng.integers(len(monos)))]
            terms[m] = (terms.get(m, 0) + int(rng.integers(1, p))) % p
        try:
            X = Hypersurface(Polynomial(n, p, terms), d, N)
        except ValueError:
            continue
        if JacobianRing(X).smoothness_certificate().smooth:
            return X
    raise RuntimeError(f"no smooth form found in {max_tries} tries at (d={d}, N={N})")


def jacobian_generators(X: Hypersurface) -> list[Polynomial]:
    """The d+2 partial derivatives of f, homogeneous of degree N-1 (or zero)."""
    return [X.f.partial(i) for i in range(X.n)]


@dataclass(frozen=True)
class SmoothnessCertificate:
    smooth: bool
    reason: str | None = None


@dataclass(frozen=True)
class HodgeVector:
    """Entries (p, q, h) of a weight-w Hodge decomposition; p+q = weight."""

    weight: int
    entries: tuple[tuple[int, int, int], ...]

    def numbers(self) -> list[int]:
        """h^(w,0), h^(w-1,1), ..., h^(0,w) in order of decreasing p."""
        by_p = {p: h for p, q, h in self.entries}
        return [by_p.get(p, 0) for p in range(self.weight, -1, -1)]


def hodge_level(H: HodgeVector) -> int:
    nonzero = [(p, q) for p, q, h in H.entries if h != 0]
    if not nonzero:
        raise ValueError("Hodge level of the zero vector is undefined")
    return max(p - q for p, q in nonzero)


class _DegreeData:
    """Per-degree reduction data: pivot monomials of J^k and the complement
    monomials representing the quotient piece."""

    __slots__ = ("pivots", "complement", "rref")

    def __init__(self, pivots: np.ndarray, complement: np.ndarray, rref: np.ndarray | None):
        self.pivots = pivots          # sorted monomial indices spanning J^k leads
        self.complement = complement  # sorted monomial indices of the quotient basis
        self.rref = rref              # RREF rows of J^k; None on the monomial path


class JacobianRing:
    """Cached Hilbert data and quotient bases of R = S/J for one form."""

    def __init__(self, X: Hypersurface, budget: int | None = None):
        self.X = X
        self.budget = budget
        self.partials = [g for g in jacobian_generators(X) if not g.is_zero()]
        if not self.partials:
            raise ValueError("all partial derivatives vanish")
        self.monomial_path = all(g.is_monomial() for g in self.partials)
        self._cache: dict[int, _DegreeData] = {}

    # -- degree pieces -------------------------------------------------------

    def _degree_data(self, k: int) -> _DegreeData:
        if k in self._cache:
            return self._cache[k]
        X = self.X
        n, p, N = X.n, X.p, X.N
        D = dim_graded(n, k)
        if k < N - 1:
            data = _DegreeData(
                np.zeros(0, dtype=np.int64), np.arange(D, dtype=np.int64), None
            )
        elif self.monomial_path:
            idx = monomial_index(n, k)
            shift = monomial_array(n, k - (N - 1))
            hit: set[int] = set()
            for g in self.partials:
                (ge,) = g.terms.keys()
                ge = np.array(ge, dtype=np.int64)
                for row in shift + ge:
                    hit.add(idx[tuple(int(x) for x in row)])
            piv = np.array(sorted(hit), dtype=np.int64)
            mask = np.ones(D, dtype=bool)
            mask[piv] = False
            data = _DegreeData(piv, np.nonzero(mask)[0].astype(np.int64), None)
        else:
            mons = monomial_exponents(n, k - (N - 1))
            rows_count = len(mons) * len(self.partials)
            check_budget(rows_count, D, self.budget)
            rows = np.zeros((rows_count, D), dtype=np.int64)
            r = 0
            idx = monomial_index(n, k)
            for g in self.partials:
                for m in mons:
                    for gm, c in g.terms.items():
                        rows[r, idx[tuple(x + y for x, y in zip(m, gm))]] = c
                    r += 1
            R, piv = rref_gfp(rows, p)
            piv = np.array(piv, dtype=np.int64)
            mask = np.ones(D, dtype=bool)
            mask[piv] = False
            data = _DegreeData(piv, np.nonzero(mask)[0].astype(np.int64), R)
        self._cache[k] = data
        return data

    def jacobian_piece(self, k: int) -> GradedSubspace:
        """Row-reduced basis of J^k inside S^k."""
        if k < 0:
            raise ValueError("k must be >= 0")
        data = self._degree_data(k)
        n, p = self.X.n, self.X.p
        if data.rref is not None:
            return GradedSubspace(n, p, k, data.rref, tuple(int(c) for c in data.pivots))
        D = dim_graded(n, k)
        check_budget(len(data.pivots), D, self.budget)
        return GradedSubspace.span_of_monomials(data.pivots, n, p, k)

    def hilbert(self, k: int) -> int:
        """dim R^k = dim S^k - dim J^k."""
        if k < 0:
            return 0
        data = self._degree_data(k)
        return len(data.complement)

    def quotient_basis(self, k: int) -> np.ndarray:
        """Monomial indices of the canonical complement basis of R^k."""
        return self._degree_data(k).complement

    def reduce(self, V: np.ndarray, k: int) -> np.ndarray:
        """Coordinates of row vectors of S^k on the R^k complement basis."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        data = self._degree_data(k)
        p = self.X.p
        if data.rref is None or len(data.pivots) == 0:
            return V[:, data.complement] % p
        red = (V - matmul_gfp(V[:, data.pivots], data.rref, p)) % p
        return red[:, data.complement]

    # -- certification and Hodge data ---------------------------------------

    def smoothness_certificate(self) -> SmoothnessCertificate:
        sigma = self.X.socle_degree
        if sigma < 0:
            return SmoothnessCertificate(False, "socle degree negative (N < 2)")
        top = self.hilbert(sigma)
        if top != 1:
            return SmoothnessCertificate(False, f"dim R^sigma = {top}, expected 1")
        above = self.hilbert(sigma + 1)
        if above != 0:
            return SmoothnessCertificate(False, f"dim R^(sigma+1) = {above}, expected 0")
        return SmoothnessCertificate(True)

    def socle_index(self) -> int:
        """Monomial index of the 1-dimensional socle basis of R^sigma."""
        cert = self.smoothness_certificate()
        if not cert.smooth:
            raise NotSmoothError(cert.reason or "not certified smooth")
        return int(self.quotient_basis(self.X.socle_degree)[0])


def hilbert_R(X: Hypersurface, k: int, budget: int | None = None) -> int:
    return JacobianRing(X, budget).hilbert(k)


def hodge_numbers_prim(X: Hypersurface, ring: JacobianRing | None = None) -> HodgeVector:
    """Primitive Hodge numbers h^(d-p,p) = dim R^(N(p+1)-d-2) for p = 0..d."""
    ring = ring or JacobianRing(X)
    cert = ring.smoothness_certificate()
    if not cert.smooth:
        raise NotSmoothError(cert.reason or "not certified smooth")
    entries = []
    for p in range(X.d + 1):
        h = ring.hilbert(X.N * (p + 1) - X.d - 2)
        entries.append((X.d - p, p, h))
    return HodgeVector(weight=X.d, entries=tuple(entries))
