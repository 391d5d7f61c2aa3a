"""Integer matrices: Smith/Hermite normal forms, kernels and lattice membership.

Matrices are plain lists of rows of Python ints.  The Smith normal form with
transforms is implemented here directly; the large eliminations used by the
class-lattice oracle go through FLINT (python-flint), whose ``rref``/``hnf``/
``snf`` are exact over the integers.
"""
from __future__ import annotations

from typing import Sequence

import flint

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [() for _ in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def to_flint(m: Sequence[Sequence[int]], ncols: int | None = None) -> flint.fmpz_mat:
    rows = len(m)
    cols = ncols if ncols is not None else (len(m[0]) if rows else 0)
    return flint.fmpz_mat(rows, cols, [int(x) for row in m for x in row])


def from_flint(m: flint.fmpz_mat) -> Matrix:
    return [[int(x) for x in row] for row in m.tolist()]


# -- Smith normal form -------------------------------------------------------

def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``U * m * V == S`` diagonal, ``S[i][i] | S[i+1][i+1]``
    and ``U``, ``V`` unimodular."""
    rows, cols = shape(m)
    s = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row dst += k * row src
        s[dst] = [a + k * b for a, b in zip(s[dst], s[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for r in s:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(s[i][j]), i, j) for i in range(t, rows)
                       for j in range(t, cols) if s[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = s[t][t]
            clean = True
            for i in range(t + 1, rows):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    if s[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    if s[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if s[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return u, s, v


def diagonal(s: Matrix) -> list[int]:
    return [s[i][i] for i in range(min(shape(s)))]


def is_smith_form(s: Matrix) -> bool:
    rows, cols = shape(s)
    for i in range(rows):
        for j in range(cols):
            if i != j and s[i][j]:
                return False
    d = diagonal(s)
    for a, b in zip(d, d[1:]):
        if a < 0 or b < 0:
            return False
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


def invariant_factors(m: Matrix, ncols: int | None = None) -> list[int]:
    """Nonzero diagonal entries of the Smith form (FLINT)."""
    fm = to_flint(m, ncols)
    if fm.nrows() == 0 or fm.ncols() == 0:
        return []
    snf = fm.snf()
    out = []
    for i in range(min(fm.nrows(), fm.ncols())):
        x = int(snf[i, i])
        if x:
            out.append(abs(x))
    return out


# -- kernels and echelon lattices ------------------------------------------

def rank(m: Matrix, ncols: int | None = None) -> int:
    fm = to_flint(m, ncols)
    if fm.nrows() == 0 or fm.ncols() == 0:
        return 0
    return fm.rank()


def kernel_basis(m: Matrix, ncols: int | None = None) -> Matrix:
    """A Z-basis of ``{u in Z^ncols : m u = 0}``.

    The integer kernel depends only on the rational row space.  When the
    reduced row echelon form is integral the free columns give the basis
    directly; otherwise a unimodular HNF transform of the transpose is used.
    """
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return identity(cols)
    fm = to_flint(m, cols)
    r, den, rk = fm.rref()
    if abs(int(den)) == 1:
        sign = int(den)
        rows = from_flint(r)[:rk]
        pivots = []
        for row in rows:
            pivots.append(next(j for j, x in enumerate(row) if x))
        pivset = set(pivots)
        basis = []
        for f in range(cols):
            if f in pivset:
                continue
            vec = [0] * cols
            vec[f] = 1
            for row, p in zip(rows, pivots):
                if row[f]:
                    vec[p] = -row[f] * sign
            basis.append(vec)
        return basis
    h, t = fm.transpose().hnf(transform=True)
    t = from_flint(t)
    return t[rk:]


def hermite_rows(m: Matrix, ncols: int | None = None) -> Matrix:
    """Nonzero rows of the row Hermite normal form (FLINT)."""
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return []
    h = from_flint(to_flint(m, cols).hnf())
    return [row for row in h if any(row)]


class EchelonLattice:
    """A sublattice of Z^N held as a triangular basis.

    By default pivots are the first nonzero entries, strictly increasing, as
    in a Hermite form.  With ``reverse=True`` pivots are the last nonzero
    entries instead, which is the shape of a kernel basis read off a reduced
    echelon form.  ``coordinates`` solves for integer coefficients.
    """

    def __init__(self, basis: Matrix, ambient: int, reverse: bool = False):
        self.ambient = ambient
        self.reverse = reverse
        self.basis = [list(r) for r in basis]
        if reverse:
            self.basis.sort(key=lambda r: -_last_nonzero(r))
        self._rows = [r[::-1] for r in self.basis] if reverse else self.basis
        self.pivots = [next(j for j, x in enumerate(r) if x) for r in self._rows]
        if any(b <= a for a, b in zip(self.pivots, self.pivots[1:])):
            raise ValueError("basis is not triangular")
        # free-column shape: pivot entries 1 and zero at every other pivot
        # column, so coordinates can be read off directly
        self._free = all(r[p] == 1 for r, p in zip(self._rows, self.pivots)) and all(
            not r[p] for i, r in enumerate(self._rows)
            for k, p in enumerate(self.pivots) if k != i)

    @classmethod
    def from_generators(cls, gens: Matrix, ambient: int) -> "EchelonLattice":
        """Use ``gens`` as is when they are already triangular on their last
        entries (hence independent); otherwise take the Hermite form."""
        tails = [_last_nonzero(r) for r in gens]
        if gens and -1 not in tails and len(set(tails)) == len(tails):
            return cls(gens, ambient, reverse=True)
        return cls(hermite_rows(gens, ambient), ambient)

    def invariant_factors(self) -> list[int]:
        """Smith invariants of the basis.

        The basis is triangular on its pivot columns, so that minor is the
        product of the pivots; when every pivot is a unit all invariants are 1
        and no Smith form is needed.
        """
        if all(abs(r[p]) == 1 for r, p in zip(self._rows, self.pivots)):
            return [1] * self.rank
        return invariant_factors(self.basis, self.ambient)

    def is_saturated(self) -> bool:
        """True when the row lattice is pure in Z^ambient."""
        return all(f == 1 for f in self.invariant_factors())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, vec: Sequence[int]) -> list[int] | None:
        if len(vec) != self.ambient:
            raise ValueError("vector has the wrong length")
        rest = list(vec)[::-1] if self.reverse else list(vec)
        coords = []
        for row, p in zip(self._rows, self.pivots):
            if any(rest[:p]):
                return None
            a = rest[p]
            if a % row[p]:
                return None
            q = a // row[p]
            coords.append(q)
            if q:
                for j in range(p, self.ambient):
                    if row[j]:
                        rest[j] -= q * row[j]
        if any(rest):
            return None
        return coords

    def __contains__(self, vec: Sequence[int]) -> bool:
        return self.coordinates(vec) is not None

    def coordinates_many(self, vecs: Matrix) -> list[list[int] | None]:
        """Coordinates of several vectors at once (None for non-members)."""
        if not vecs or not self.basis:
            return [self.coordinates(v) for v in vecs]
        cols = [self.ambient - 1 - p for p in self.pivots] if self.reverse else self.pivots
        coords = [[v[c] for c in cols] for v in vecs]
        if not self._free:
            # the basis restricted to its pivot columns is triangular, so
            # solve there and let the product below reject non-members
            square = to_flint([[row[c] for c in cols] for row in self.basis], self.rank)
            num, den = square.transpose().solve(to_flint(coords, self.rank).transpose()).numer_denom()
            den = int(den)
            coords = [[x // den for x in row] if all(x % den == 0 for x in row) else None
                      for row in from_flint(num.transpose())]
            keep = [i for i, c in enumerate(coords) if c is not None]
            if len(keep) < len(vecs):
                found = self.coordinates_many([vecs[i] for i in keep]) if keep else []
                out: list[list[int] | None] = [None] * len(vecs)
                for i, c in zip(keep, found):
                    out[i] = c
                return out
        back = from_flint(to_flint(coords, self.rank) * to_flint(self.basis, self.ambient))
        return [c if list(b) == list(v) else None for c, b, v in zip(coords, back, vecs)]

    def combine(self, coords: Sequence[int]) -> list[int]:
        out = [0] * self.ambient
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        out[j] += c * x
        return out


def _last_nonzero(row: Sequence[int]) -> int:
    for j in range(len(row) - 1, -1, -1):
        if row[j]:
            return j
    return -1


# -- lattices spanned by many generators -----------------------------------

def saturation(gens: Matrix, ambient: int) -> EchelonLattice:
    """``span_Q(gens) ∩ Z^ambient``, read off two integer kernels."""
    perp = kernel_basis(gens, ambient)
    basis = kernel_basis(perp, ambient) if perp else identity(ambient)
    return EchelonLattice.from_generators(basis, ambient)


def generates_all(coords: Matrix, r: int) -> bool:
    """Do the rows of ``coords`` generate all of Z^r?

    Take r independent rows; their determinant is a multiple of the index,
    so only its prime factors p need checking, by the rank of coords mod p.
    """
    if r == 0:
        return True
    m = to_flint(coords, r)
    if m.nrows() < r:
        return False
    red, _, rk = m.transpose().rref()
    if rk < r:
        return False
    red = from_flint(red)
    rows = [next(j for j, x in enumerate(row) if x) for row in red[:rk]]
    det = abs(int(to_flint([coords[i] for i in rows], r).det()))
    if det == 1:
        return True
    return all(flint.nmod_mat(coords, p).rank() == r for p, _ in flint.fmpz(det).factor())


def span_lattice(gens: Matrix, ambient: int) -> EchelonLattice:
    """The lattice generated by ``gens``.

    A Hermite form of a tall rank-deficient matrix is slow, so first try the
    saturation and keep it when the generators already reach all of it.
    """
    if not gens:
        return EchelonLattice([], ambient)
    sat = saturation(gens, ambient)
    coords = sat.coordinates_many(gens)
    if all(c is not None for c in coords) and generates_all(coords, sat.rank):
        return sat
    return EchelonLattice.from_generators(gens, ambient)

