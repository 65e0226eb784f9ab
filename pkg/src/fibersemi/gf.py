"""Exact linear algebra over small prime fields GF(p).

Vectors are row tuples and endomorphisms act on the right (v -> v.M), so
composing maps left to right is plain matrix multiplication.  Subspaces are
identified by their reduced row-echelon basis, which makes equality, hashing
and set membership exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

SUPPORTED_PRIMES = (2, 3, 5, 7)

SUBSPACE_ENUM_LIMIT = 4096  # max p**n
ENDO_ENUM_LIMIT = 1 << 20   # max p**(n*n)


class GuardExceeded(ValueError):
    """Requested enumeration is beyond the desk-scale guard."""


def check_field(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported field GF({p}); p must be one of {SUPPORTED_PRIMES}")
    return p


# ---------------------------------------------------------------------------
# matrices as tuples of row tuples

def mat_mul(a, b, p):
    """Product of matrices a (m x k) and b (k x n) over GF(p)."""
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt)
        for row in a
    )

def mat_transpose(a):
    return tuple(zip(*a))

def vec_mat(v, a, p):
    """Row vector times matrix over GF(p)."""
    return tuple(sum(x * y for x, y in zip(v, col)) % p for col in zip(*a))

def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

def zero_matrix(m, n):
    return tuple((0,) * n for _ in range(m))


def rref(rows, width, p):
    """Canonical reduced row-echelon form.

    Returns (basis, pivots): the nonzero rows with strictly increasing unit
    pivots, every pivot column zero elsewhere.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def mat_rank(rows, width, p):
    return len(rref(rows, width, p)[0])


def mat_inverse(a, p):
    """Inverse of a square matrix over GF(p), or None if singular."""
    n = len(a)
    if n == 0:
        return ()
    aug = [list(ra) + list(rb) for ra, rb in zip(a, identity_matrix(n))]
    red, piv = rref(aug, 2 * n, p)
    if tuple(piv[:n]) != tuple(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in red[:n])


def solve_homogeneous(rows, width, p):
    """Canonical basis of {x in GF(p)^width : rows . x^T = 0}."""
    red, pivots = rref(rows, width, p)
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-red[i][f]) % p
        basis.append(tuple(v))
    return rref(basis, width, p)[0]


def express_in_basis(v, rows, p):
    """Coefficients t with t . rows = v, or None if v is outside the span."""
    if not rows:
        return () if all(x % p == 0 for x in v) else None
    width = len(v)
    aug = [list(col) + [x] for col, x in zip(zip(*rows), v)]
    red, pivots = rref(aug, len(rows) + 1, p)
    if len(rows) in pivots:
        return None
    t = [0] * len(rows)
    for i, c in enumerate(pivots):
        t[c] = red[i][-1]
    return tuple(t)


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(p)^n held as its canonical RREF basis."""
    p: int
    n: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def contains(self, v) -> bool:
        return self.coords(v) is not None

    def coords(self, v):
        """Coefficients of v over the canonical basis, or None.

        RREF pivot columns are unit columns, so candidate coefficients are
        read off at the pivot positions and then checked.
        """
        if len(v) != self.n:
            raise ValueError(f"vector length {len(v)} != ambient dim {self.n}")
        c = tuple(v[j] % self.p for j in self.pivots)
        w = [0] * self.n
        for coeff, row in zip(c, self.basis):
            for j, x in enumerate(row):
                w[j] = (w[j] + coeff * x) % self.p
        return c if tuple(w) == tuple(x % self.p for x in v) else None

    def from_coords(self, c):
        w = [0] * self.n
        for coeff, row in zip(c, self.basis):
            for j, x in enumerate(row):
                w[j] = (w[j] + coeff * x) % self.p
        return tuple(w)

    def vectors(self):
        """All p^dim vectors, in lexicographic coefficient order."""
        for c in itertools.product(range(self.p), repeat=self.dim):
            yield self.from_coords(c)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sort_key(self):
        return (self.dim, self.basis)

    def to_json(self):
        return {"p": self.p, "n": self.n, "rows": [list(r) for r in self.basis]}

    @staticmethod
    def from_json(d):
        return subspace_span([tuple(r) for r in d["rows"]], d["n"], d["p"])


def subspace_span(vectors, ambient_dim, p) -> Subspace:
    """Canonical subspace spanned by the given row vectors."""
    check_field(p)
    for v in vectors:
        if len(v) != ambient_dim:
            raise ValueError(f"vector {v} has length {len(v)}, expected {ambient_dim}")
    basis, _ = rref(vectors, ambient_dim, p)
    return Subspace(p, ambient_dim, basis)


def zero_subspace(p, n) -> Subspace:
    return Subspace(p, n, ())

def full_space(p, n) -> Subspace:
    return Subspace(p, n, identity_matrix(n))


def complement(a: Subspace) -> Subspace:
    """Deterministic complement in the full space.

    Extends the RREF basis of a with the standard basis vectors at the
    non-pivot positions, in increasing index order.
    """
    piv = set(a.pivots)
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(a.n))
        for i in range(a.n) if i not in piv
    )
    return Subspace(a.p, a.n, rows)


def complement_in(a: Subspace, b: Subspace) -> Subspace:
    """Deterministic complement of a inside b (requires a <= b).

    Applies the pivot-completion rule in b-coordinates, so for b the full
    space this is exactly complement(a).
    """
    coords = []
    for v in a.basis:
        c = b.coords(v)
        if c is None:
            raise ValueError("complement_in: first subspace not contained in second")
        coords.append(c)
    red, pivots = rref(coords, b.dim, a.p)
    piv = set(pivots)
    rows = [b.basis[j] for j in range(b.dim) if j not in piv]
    basis, _ = rref(rows, a.n, a.p)
    return Subspace(a.p, a.n, basis)


def annihilator(a: Subspace) -> Subspace:
    """Functionals vanishing on a, as a subspace in dual-basis coordinates.

    The same computation sends a subspace of the dual back into V, which is
    the double-dual identification.
    """
    basis = solve_homogeneous(a.basis, a.n, a.p)
    return Subspace(a.p, a.n, basis)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return subspace_span(a.basis + b.basis, a.n, a.p)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection via the left kernel of the stacked bases."""
    stacked = a.basis + b.basis
    if not stacked:
        return zero_subspace(a.p, a.n)
    kern = solve_homogeneous(mat_transpose(stacked), len(stacked), a.p)
    vecs = []
    for k in kern:
        v = [0] * a.n
        for coeff, row in zip(k[: a.dim], a.basis):
            for j, x in enumerate(row):
                v[j] = (v[j] + coeff * x) % a.p
        vecs.append(tuple(v))
    return subspace_span(vecs, a.n, a.p)


def is_direct_sum(a: Subspace, b: Subspace) -> bool:
    """Whether a + b = V with a and b meeting only in 0."""
    if a.dim + b.dim != a.n:
        return False
    return mat_rank(a.basis + b.basis, a.n, a.p) == a.n


@lru_cache(maxsize=None)
def enumerate_subspaces(p, n, proper_only=False):
    """All subspaces of GF(p)^n in canonical order (dimension, then basis).

    proper_only drops the full space but keeps the zero subspace.
    """
    check_field(p)
    if p ** n > SUBSPACE_ENUM_LIMIT:
        raise GuardExceeded(f"p^n = {p ** n} exceeds subspace guard {SUBSPACE_ENUM_LIMIT}")
    out = []
    top = n if proper_only else n + 1
    for k in range(0, top):
        for pivots in itertools.combinations(range(n), k):
            free = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, n)
                if j not in pivots
            ]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = 1
                for (i, j), x in zip(free, vals):
                    rows[i][j] = x
                out.append(Subspace(p, n, tuple(tuple(r) for r in rows)))
    out.sort(key=Subspace.sort_key)
    return tuple(out)


def gaussian_binomial(n, k, p):
    """Number of k-dimensional subspaces of GF(p)^n."""
    num = den = 1
    for i in range(k):
        num *= p ** n - p ** i
        den *= p ** k - p ** i
    return num // den


# ---------------------------------------------------------------------------
# endomorphisms

@dataclass(frozen=True)
class Endo:
    """An n x n matrix over GF(p) acting on row vectors on the right."""
    p: int
    n: int
    rows: tuple

    def __str__(self):
        return "/".join("".join(str(x) for x in row) for row in self.rows)

    def apply(self, v):
        return vec_mat(v, self.rows, self.p)

    def compose(self, other: "Endo") -> "Endo":
        """self then other; the matrix product rows(self) . rows(other)."""
        return Endo(self.p, self.n, mat_mul(self.rows, other.rows, self.p))

    def __mul__(self, other):
        return self.compose(other)

    @property
    def rank(self) -> int:
        return mat_rank(self.rows, self.n, self.p)

    def is_invertible(self) -> bool:
        return self.rank == self.n

    def inverse(self) -> "Endo":
        inv = mat_inverse(self.rows, self.p)
        if inv is None:
            raise ValueError("endomorphism is singular")
        return Endo(self.p, self.n, inv)

    def image(self) -> Subspace:
        return subspace_span(self.rows, self.n, self.p)

    def kernel(self) -> Subspace:
        """Left kernel {v : v.M = 0}."""
        basis = solve_homogeneous(mat_transpose(self.rows), self.n, self.p)
        return Subspace(self.p, self.n, basis)

    def sort_key(self):
        return self.rows

    def to_json(self):
        return {"p": self.p, "n": self.n, "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json(d):
        return Endo(d["p"], d["n"], tuple(tuple(r) for r in d["rows"]))


def endo(rows, p) -> Endo:
    rows = tuple(tuple(x % p for x in r) for r in rows)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("endomorphism matrix must be square")
    return Endo(p, n, rows)


def identity_endo(p, n) -> Endo:
    return Endo(p, n, identity_matrix(n))

def zero_endo(p, n) -> Endo:
    return Endo(p, n, zero_matrix(n, n))


def image_and_kernel(alpha: Endo):
    """(row space of M, left-action kernel {v : v.M = 0})."""
    return alpha.image(), alpha.kernel()


def transpose(alpha: Endo) -> Endo:
    """The same matrix data read as an endomorphism of the dual space."""
    return Endo(alpha.p, alpha.n, mat_transpose(alpha.rows))


@lru_cache(maxsize=None)
def enumerate_endos(p, n, singular_only=False):
    """All n x n matrices over GF(p), lexicographic by entries."""
    check_field(p)
    if p ** (n * n) > ENDO_ENUM_LIMIT:
        raise GuardExceeded(f"p^(n^2) = {p ** (n * n)} exceeds endomorphism guard {ENDO_ENUM_LIMIT}")
    out = []
    for entries in itertools.product(range(p), repeat=n * n):
        rows = tuple(entries[i * n:(i + 1) * n] for i in range(n))
        e = Endo(p, n, rows)
        if singular_only and e.rank == n:
            continue
        out.append(e)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_automorphisms(p, n):
    """All invertible n x n matrices over GF(p), lexicographic by entries."""
    return tuple(e for e in enumerate_endos(p, n) if e.rank == n)


def singular_count(p, n):
    """Closed form p^(n^2) - prod_i (p^n - p^i)."""
    gl = 1
    for i in range(n):
        gl *= p ** n - p ** i
    return p ** (n * n) - gl


# ---------------------------------------------------------------------------
# linear maps between subspaces

@dataclass(frozen=True)
class LinearMap:
    """A linear map dom -> cod, stored over the canonical bases."""
    dom: Subspace
    cod: Subspace
    matrix: tuple  # dim(dom) x dim(cod)

    @property
    def p(self):
        return self.dom.p

    def apply(self, v):
        c = self.dom.coords(v)
        if c is None:
            raise ValueError(f"vector {v} not in domain")
        return self.cod.from_coords(vec_mat(c, self.matrix, self.p) if self.matrix else ())

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self then other (domains must chain)."""
        if self.cod != other.dom:
            raise ValueError("maps do not compose: codomain != next domain")
        if self.cod.dim == 0:
            m = zero_matrix(self.dom.dim, other.cod.dim)
        else:
            m = mat_mul(self.matrix, other.matrix, self.p)
        return LinearMap(self.dom, other.cod, m)

    @property
    def rank(self):
        return mat_rank(self.matrix, self.cod.dim, self.p)

    def is_iso(self) -> bool:
        return self.dom.dim == self.cod.dim and self.rank == self.dom.dim

    def is_epi(self) -> bool:
        return self.rank == self.cod.dim

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def inverse(self) -> "LinearMap":
        inv = mat_inverse(self.matrix, self.p)
        if inv is None or self.dom.dim != self.cod.dim:
            raise ValueError("linear map is not an isomorphism")
        return LinearMap(self.cod, self.dom, inv)

    def image_subspace(self) -> Subspace:
        vecs = [self.cod.from_coords(row) for row in self.matrix]
        return subspace_span(vecs, self.cod.n, self.p)

    def kernel_subspace(self) -> Subspace:
        coords = solve_homogeneous(mat_transpose(self.matrix), self.dom.dim, self.p) \
            if self.matrix else ()
        vecs = [self.dom.from_coords(c) for c in coords]
        if self.cod.dim == 0:
            vecs = list(self.dom.basis)
        return subspace_span(vecs, self.dom.n, self.p)

    def to_json(self):
        return {
            "dom": self.dom.to_json(),
            "cod": self.cod.to_json(),
            "matrix": [list(r) for r in self.matrix],
        }


def linear_map(dom: Subspace, cod: Subspace, images) -> LinearMap:
    """Map sending the canonical basis of dom to the given ambient vectors."""
    rows = []
    for img in images:
        c = cod.coords(img)
        if c is None:
            raise ValueError(f"image vector {img} not contained in codomain")
        rows.append(c)
    return LinearMap(dom, cod, tuple(rows))


def restriction(alpha: Endo, dom: Subspace, cod: Subspace) -> LinearMap:
    """alpha restricted to dom, landing in cod."""
    return linear_map(dom, cod, [alpha.apply(v) for v in dom.basis])


def inclusion_map(a: Subspace, b: Subspace) -> LinearMap:
    if not b.contains_subspace(a):
        raise ValueError("inclusion requires containment")
    return linear_map(a, b, list(a.basis))


def identity_map(a: Subspace) -> LinearMap:
    return LinearMap(a, a, identity_matrix(a.dim))


def zero_map(a: Subspace, b: Subspace) -> LinearMap:
    return LinearMap(a, b, zero_matrix(a.dim, b.dim))


def all_linear_maps(dom: Subspace, cod: Subspace):
    """Every linear map dom -> cod, lexicographic by matrix entries."""
    p = dom.p
    size = dom.dim * cod.dim
    for entries in itertools.product(range(p), repeat=size):
        m = tuple(entries[i * cod.dim:(i + 1) * cod.dim] for i in range(dom.dim))
        yield LinearMap(dom, cod, m)
