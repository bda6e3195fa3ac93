"""Exact integer linear algebra: normal forms, lattices, and finitely
generated abelian groups.

Everything here is computed over Python's arbitrary-precision integers (and
``fractions.Fraction`` where a rational solve is unavoidable), so results are
exact and canonical:

* matrices are immutable row-major integer matrices (:class:`IntMatrix`);
* lattices are stored in column Hermite normal form, so two equal sublattices
  of ``Z^n`` have identical representations;
* finitely generated abelian groups are stored as invariant factors
  ``d_1 | d_2 | ... | d_k`` plus a free rank, so isomorphism is equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return IntMatrix(nrows, ncols, data)

    @staticmethod
    def from_columns(cols, nrows: int | None = None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("need nrows for an empty column list")
            nrows = len(cols[0])
        for c in cols:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return IntMatrix(nrows, len(cols), rows)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(nrows: int, ncols: int) -> "IntMatrix":
        return IntMatrix(nrows, ncols, tuple(tuple(0 for _ in range(ncols)) for _ in range(nrows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        ot = other.transpose()
        rows = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in ot.entries)
            for r in self.entries
        )
        return IntMatrix(self.rows, other.cols, rows)

    def mul_vector(self, v) -> tuple:
        if self.cols != len(v):
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in sum")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def neg(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-a for a in r) for r in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(r + s for r, s in zip(self.entries, other.entries)))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_lists(self) -> list:
        return [list(row) for row in self.entries]


def _content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hermite_normal_form(m: IntMatrix):
    """Column Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``h = m * u``: columns in
    echelon order (pivot rows strictly increasing), pivots positive, and in a
    pivot row every entry to the left of the pivot reduced into ``[0, pivot)``.
    Zero columns are pushed to the right, so the nonzero columns are a
    canonical basis of the column span.
    """
    h = [list(col) for col in m.transpose().entries]  # work on columns
    u = [[1 if i == j else 0 for j in range(m.cols)] for i in range(m.cols)]

    def col_sub(dst: int, src: int, q: int) -> None:
        if q == 0:
            return
        h[dst] = [a - q * b for a, b in zip(h[dst], h[src])]
        u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    def col_neg(j: int) -> None:
        h[j] = [-a for a in h[j]]
        u[j] = [-a for a in u[j]]

    pivot_col = 0
    for row in range(m.rows):
        if pivot_col >= len(h):
            break
        # gcd-eliminate row entries across the trailing columns into pivot_col
        while True:
            live = [j for j in range(pivot_col, len(h)) if h[j][row] != 0]
            if not live:
                break
            jmin = min(live, key=lambda j: abs(h[j][row]))
            h[pivot_col], h[jmin] = h[jmin], h[pivot_col]
            u[pivot_col], u[jmin] = u[jmin], u[pivot_col]
            done = True
            for j in range(pivot_col + 1, len(h)):
                if h[j][row] != 0:
                    col_sub(j, pivot_col, h[j][row] // h[pivot_col][row])
                    if h[j][row] != 0:
                        done = False
            if done:
                break
        if h[pivot_col][row] != 0:
            if h[pivot_col][row] < 0:
                col_neg(pivot_col)
            p = h[pivot_col][row]
            for j in range(pivot_col):
                col_sub(j, pivot_col, h[j][row] // p)
            pivot_col += 1

    hm = IntMatrix.from_columns(h, m.rows) if h else IntMatrix.zero(m.rows, 0)
    um = IntMatrix.from_columns(u, m.cols) if u else IntMatrix.zero(m.cols, 0)
    return hm, um


def smith_normal_form(m: IntMatrix):
    """Smith normal form: returns ``(s, u, v)`` with ``s = u*m*v`` diagonal,
    ``u, v`` unimodular, and nonnegative diagonal in a divisibility chain.

    Pivots are chosen with minimal absolute value to control entry growth;
    the output is canonical independently of that strategy.
    """
    a = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_sub(dst, src, q):
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_sub(dst, src, q):
        if q:
            for i in range(nr):
                a[i][dst] -= q * a[i][src]
            for i in range(nc):
                v[i][dst] -= q * v[i][src]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(nr):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(nc):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while True:
        pivots = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j] != 0]
        if not pivots:
            break
        _, pi, pj = min(pivots)
        row_swap(t, pi)
        col_swap(t, pj)
        clean = True
        for i in range(t + 1, nr):
            if a[i][t]:
                row_sub(i, t, a[i][t] // a[t][t])
                if a[i][t]:
                    clean = False
        for j in range(t + 1, nc):
            if a[t][j]:
                col_sub(j, t, a[t][j] // a[t][t])
                if a[t][j]:
                    clean = False
        if not clean:
            continue
        # pivot must divide the remaining block for the chain to come out right
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    s = IntMatrix.from_rows(a) if a else IntMatrix.zero(nr, nc)
    um = IntMatrix.from_rows(u) if u else IntMatrix.identity(0)
    vm = IntMatrix.from_rows(v) if v else IntMatrix.identity(0)
    return s, um, vm


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel ``{x : m*x = 0}``, columns in HNF."""
    s, _, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(s.rows, s.cols)) if s[i, i] != 0)
    cols = [v.column(j) for j in range(rank, m.cols)]
    if not cols:
        return IntMatrix.zero(m.cols, 0)
    h, _ = hermite_normal_form(IntMatrix.from_columns(cols, m.cols))
    keep = [c for c in h.columns() if any(x != 0 for x in c)]
    return IntMatrix.from_columns(keep, m.cols) if keep else IntMatrix.zero(m.cols, 0)


def solve(m: IntMatrix, b) -> tuple | None:
    """One integer solution of ``m*x = b``, or ``None`` if there is none."""
    s, u, v = smith_normal_form(m)
    ub = u.mul_vector(tuple(b))
    y = [0] * m.cols
    r = min(s.rows, s.cols)
    for i in range(s.rows):
        d = s[i, i] if i < r else 0
        if d == 0:
            if i < len(ub) and ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return v.mul_vector(tuple(y))


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of ``Z^ambient_rank`` with basis columns in column HNF."""

    ambient_rank: int
    basis: IntMatrix

    @staticmethod
    def from_columns(ambient_rank: int, cols) -> "Lattice":
        cols = [tuple(c) for c in cols]
        if not cols:
            return Lattice(ambient_rank, IntMatrix.zero(ambient_rank, 0))
        m = IntMatrix.from_columns(cols, ambient_rank)
        h, _ = hermite_normal_form(m)
        keep = [c for c in h.columns() if any(x != 0 for x in c)]
        basis = IntMatrix.from_columns(keep, ambient_rank) if keep else IntMatrix.zero(ambient_rank, 0)
        return Lattice(ambient_rank, basis)

    @staticmethod
    def full(ambient_rank: int) -> "Lattice":
        return Lattice(ambient_rank, IntMatrix.identity(ambient_rank))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def contains(self, v) -> bool:
        return solve(self.basis, tuple(v)) is not None

    def coordinates(self, v) -> tuple | None:
        return solve(self.basis, tuple(v))

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(c) for c in other.basis.columns())

    def sum(self, other: "Lattice") -> "Lattice":
        return Lattice.from_columns(self.ambient_rank,
                                    self.basis.columns() + other.basis.columns())

    def intersection(self, other: "Lattice") -> "Lattice":
        if self.rank == 0 or other.rank == 0:
            return Lattice.from_columns(self.ambient_rank, [])
        stacked = self.basis.hstack(other.basis.neg())
        k = kernel_basis(stacked)
        cols = [self.basis.mul_vector(k.column(j)[: self.rank]) for j in range(k.cols)]
        return Lattice.from_columns(self.ambient_rank, cols)

    def index_in(self, other: "Lattice") -> int | None:
        """Index ``[other : self]``; ``None`` when infinite."""
        if not other.contains_lattice(self):
            raise ValueError("not a sublattice")
        if self.rank < other.rank:
            return None
        coords = [other.coordinates(c) for c in self.basis.columns()]
        m = IntMatrix.from_columns(coords, other.rank)
        return abs(m.det())


def saturation(l: Lattice) -> Lattice:
    """Largest sublattice of the ambient with the same rational span as ``l``."""
    if l.rank == 0:
        return l
    perp = kernel_basis(l.basis.transpose())          # functionals vanishing on l
    if perp.cols == 0:
        return Lattice.full(l.ambient_rank)
    sat = kernel_basis(perp.transpose())              # everything they vanish on
    return Lattice.from_columns(l.ambient_rank, sat.columns())


def solve_congruence_sublattice(ambient_rank: int, conditions) -> Lattice:
    """Sublattice ``{v in Z^n : f*v = 0 mod m for every (f, m) in conditions}``.

    Modulus 0 encodes an exact vanishing condition (the paper's non-locally
    projective case delta(C/S) = 0), modulus 1 a vacuous one.
    """
    conditions = [(tuple(f), int(m)) for f, m in conditions]
    for f, m in conditions:
        if len(f) != ambient_rank:
            raise ValueError("functional length does not match ambient rank")
        if m < 0:
            raise ValueError("modulus must be nonnegative")
    if not conditions:
        return Lattice.full(ambient_rank)
    k = len(conditions)
    rows = []
    for i, (f, m) in enumerate(conditions):
        rows.append(tuple(f) + tuple(-m if j == i else 0 for j in range(k)))
    ker = kernel_basis(IntMatrix.from_rows(rows))
    cols = [ker.column(j)[:ambient_rank] for j in range(ker.cols)]
    return Lattice.from_columns(ambient_rank, cols)


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FGAbelianGroup:
    """Canonical form ``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | ... | d_k``.

    Two groups are isomorphic iff the two fields are equal.
    """

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @staticmethod
    def trivial() -> "FGAbelianGroup":
        return FGAbelianGroup(0, ())

    @staticmethod
    def free(rank: int) -> "FGAbelianGroup":
        return FGAbelianGroup(rank, ())

    @staticmethod
    def cyclic(n: int) -> "FGAbelianGroup":
        n = abs(n)
        if n == 0:
            return FGAbelianGroup(1, ())
        if n == 1:
            return FGAbelianGroup(0, ())
        return FGAbelianGroup(0, (n,))

    @staticmethod
    def direct_sum(*parts) -> "FGAbelianGroup":
        free = sum(p.free_rank for p in parts)
        factors = [d for p in parts for d in p.torsion]
        return _canonical_from_factors(free, factors)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    def relation_matrix(self) -> IntMatrix:
        """Relations in the generator ordering: free generators first."""
        n = self.ngens
        cols = []
        for t, d in enumerate(self.torsion):
            col = [0] * n
            col[self.free_rank + t] = d
            cols.append(col)
        return IntMatrix.from_columns(cols, n) if cols else IntMatrix.zero(n, 0)


def _canonical_from_factors(free_rank: int, factors) -> FGAbelianGroup:
    """Canonicalize an arbitrary list of cyclic orders into invariant factors."""
    primary: dict = {}
    for d in factors:
        d = abs(d)
        if d in (0, 1):
            if d == 0:
                free_rank += 1
            continue
        n = d
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                primary.setdefault(p, []).append(p ** e)
            p += 1
        if n > 1:
            primary.setdefault(n, []).append(n)
    chains: list = []
    for p, powers in primary.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            if i == len(chains):
                chains.append(1)
            chains[i] *= q
    chains.sort()
    return FGAbelianGroup(free_rank, tuple(c for c in chains if c > 1))


def group_from_relations(rank: int, relations: IntMatrix) -> FGAbelianGroup:
    """Canonical form of ``Z^rank`` modulo the column span of ``relations``."""
    if relations.rows != rank:
        raise ValueError("relation matrix has wrong number of rows")
    if relations.cols == 0:
        return FGAbelianGroup.free(rank)
    s, _, _ = smith_normal_form(relations)
    diags = [s[i, i] for i in range(min(s.rows, s.cols))]
    nonzero = [d for d in diags if d != 0]
    free = rank - len(nonzero)
    return _canonical_from_factors(free, nonzero)


def quotient_group(ambient: Lattice, sub: Lattice) -> FGAbelianGroup:
    """Canonical form of ``ambient / sub`` for a sublattice ``sub``."""
    coords = []
    for c in sub.basis.columns():
        x = ambient.coordinates(c)
        if x is None:
            raise ValueError("not a sublattice of the ambient")
        coords.append(x)
    rels = IntMatrix.from_columns(coords, ambient.rank) if coords else IntMatrix.zero(ambient.rank, 0)
    return group_from_relations(ambient.rank, rels)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between groups in canonical form, as a matrix on generators.

    Generator ordering matches :meth:`FGAbelianGroup.relation_matrix`: free
    generators first, then torsion generators in invariant-factor order.
    """

    source: FGAbelianGroup
    target: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.ngens or self.matrix.cols != self.source.ngens:
            raise ValueError("matrix shape does not match generator counts")
        # image of each source relation must lie in the target relation lattice
        for t, d in enumerate(self.source.torsion):
            col = self.matrix.column(self.source.free_rank + t)
            for i, x in enumerate(col):
                scaled = d * x
                if i < self.target.free_rank:
                    if scaled != 0:
                        raise ValueError("matrix does not respect torsion")
                else:
                    e = self.target.torsion[i - self.target.free_rank]
                    if scaled % e:
                        raise ValueError("matrix does not respect torsion")


def cokernel(f: GroupHom) -> FGAbelianGroup:
    """Canonical ``target / im(f)``: stack f with the target relations, take SNF."""
    stacked = f.matrix.hstack(f.target.relation_matrix())
    return group_from_relations(f.target.ngens, stacked)


# ---------------------------------------------------------------------------
# presented groups (quotients of Z^rank), used for NS and cokernel machinery


@dataclass(frozen=True)
class Presentation:
    """Abelian group presented as ``Z^rank`` modulo the columns of ``relations``."""

    rank: int
    relations: IntMatrix

    @staticmethod
    def free(rank: int) -> "Presentation":
        return Presentation(rank, IntMatrix.zero(rank, 0))

    @staticmethod
    def of_quotient(rank: int, relation_cols) -> "Presentation":
        cols = [tuple(c) for c in relation_cols]
        m = IntMatrix.from_columns(cols, rank) if cols else IntMatrix.zero(rank, 0)
        return Presentation(rank, m)

    def group(self) -> FGAbelianGroup:
        return group_from_relations(self.rank, self.relations)

    def relation_lattice(self) -> Lattice:
        return Lattice.from_columns(self.rank, self.relations.columns())

    def is_zero(self, v) -> bool:
        return self.relation_lattice().contains(tuple(v))

    def subgroup_key(self, generator_cols) -> IntMatrix:
        """Canonical key of the subgroup generated by the given coset reps:
        HNF basis of (generators + relations), comparable across computations."""
        lat = Lattice.from_columns(self.rank, list(generator_cols) + self.relations.columns())
        return lat.basis


def preimage_lattice(m: IntMatrix, target: Presentation) -> Lattice:
    """Lattice ``{v : m*v lies in the relation lattice of target}``."""
    if m.rows != target.rank:
        raise ValueError("codomain mismatch")
    rel = target.relations
    if rel.cols == 0:
        return Lattice.from_columns(m.cols, kernel_basis(m).columns())
    stacked = m.hstack(rel.neg())
    ker = kernel_basis(stacked)
    cols = [ker.column(j)[: m.cols] for j in range(ker.cols)]
    return Lattice.from_columns(m.cols, cols)


def hom_kernel(m: IntMatrix, source: Presentation, target: Presentation):
    """Kernel of the hom ``source -> target`` induced by ``m``.

    Returns ``(pres, embed)``: a presentation of the kernel and the matrix
    embedding its generators into the source coordinates.
    """
    pre = preimage_lattice(m, target)
    gens = pre.sum(source.relation_lattice())
    embed = gens.basis
    rel_cols = []
    for c in source.relations.columns():
        x = solve(embed, c)
        if x is None:
            raise ArithmeticError("source relations must lie in the kernel generators")
        rel_cols.append(x)
    pres = Presentation.of_quotient(embed.cols, rel_cols)
    return pres, embed


def hom_cokernel(m: IntMatrix, target: Presentation) -> FGAbelianGroup:
    stacked = m.hstack(target.relations)
    return group_from_relations(target.rank, stacked)


# ---------------------------------------------------------------------------
# exact rational helpers


def rational_inverse(m: IntMatrix):
    """Inverse of a nonsingular integer matrix, as rows of Fractions."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [[Fraction(m[i, j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def rational_solve(m: IntMatrix, b):
    """Unique rational solution of ``m*x = b`` for injective ``m`` (full column
    rank); returns a tuple of Fractions or raises if inconsistent."""
    nr, nc = m.rows, m.cols
    a = [[Fraction(m[i, j]) for j in range(nc)] + [Fraction(b[i])] for i in range(nr)]
    row = 0
    pivots = []
    for col in range(nc):
        piv = next((r for r in range(row, nr) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        a[row] = [x / p for x in a[row]]
        for r in range(nr):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == nr:
            break
    x = [Fraction(0)] * nc
    for r, col in enumerate(pivots):
        x[col] = a[r][nc]
    for r in range(nr):
        lhs = sum(Fraction(m[r, j]) * x[j] for j in range(nc))
        if lhs != b[r]:
            raise ValueError("inconsistent rational system")
    return tuple(x)
