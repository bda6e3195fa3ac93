"""Weyl-invariant symmetric bilinear form lattices and Neron-Severi groups.

Forms are handled in exact Sym^2 coordinates: a symmetric form on ``Z^n`` is
the vector of its Gram entries ``b_ij`` over pairs ``i <= j``.  Invariance is
imposed only at the simple reflections (they generate the Weyl group), so no
Weyl group is ever enumerated; rational extensions across finite-index
inclusions are handled with exact fractions and turned into congruence
conditions on the Sym^2 coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact_algebra import (
    FGAbelianGroup,
    IntMatrix,
    Lattice,
    Presentation,
    hom_kernel,
    kernel_basis,
    preimage_lattice,
    rational_inverse,
    solve,
)
from .root_datum import (
    Pi1Element,
    ReductiveGroupData,
    SimpleType,
    cartan_matrix,
    coroot_lengths,
    cross_diagram,
    generic_lift,
    pi1_presentation,
)


# ---------------------------------------------------------------------------
# Sym^2 coordinates


def sym2_pairs(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i, n)]


def sym2_dim(n: int) -> int:
    return n * (n + 1) // 2


def gram_to_coords(gram: IntMatrix) -> tuple:
    n = gram.rows
    return tuple(gram[i, j] for i, j in sym2_pairs(n))


def coords_to_gram(n: int, coords) -> IntMatrix:
    coords = list(coords)
    g = [[0] * n for _ in range(n)]
    for (i, j), c in zip(sym2_pairs(n), coords):
        g[i][j] = c
        g[j][i] = c
    return IntMatrix.from_rows(g)


def sym2_action(s: IntMatrix) -> IntMatrix:
    """Matrix of ``G -> S^T G S`` on Sym^2 coordinates."""
    n = s.rows
    pairs = sym2_pairs(n)
    cols = []
    for (i, j) in pairs:
        e = [[0] * n for _ in range(n)]
        e[i][j] += 1
        e[j][i] += 1
        if i == j:
            e[i][j] = 1  # unit diagonal coordinate
        m = s.transpose().mul(IntMatrix.from_rows(e)).mul(s)
        cols.append(gram_to_coords(m))
    return IntMatrix.from_columns(cols, len(pairs))


# ---------------------------------------------------------------------------
# forms and form lattices


@dataclass(frozen=True)
class BilinearForm:
    """Integer symmetric bilinear form, stored by its Gram matrix."""

    gram: IntMatrix

    def __post_init__(self):
        if self.gram != self.gram.transpose():
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank_space(self) -> int:
        return self.gram.rows

    def value(self, x, y) -> int:
        return sum(xi * v for xi, v in zip(tuple(x), self.gram.mul_vector(tuple(y))))

    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.gram.rows))

    def pair_with(self, d) -> tuple:
        """The character b(d, -) as a vector in the dual basis."""
        return self.gram.mul_vector(tuple(d))

    def restrict(self, basis: IntMatrix) -> "BilinearForm":
        """Gram matrix on a sublattice given by basis columns."""
        return BilinearForm(basis.transpose().mul(self.gram).mul(basis))

    def coords(self) -> tuple:
        return gram_to_coords(self.gram)


@dataclass(frozen=True)
class FormLattice:
    """Z-basis of a lattice of symmetric forms, canonical in Sym^2 coordinates."""

    ambient_rank: int
    basis_forms: tuple

    @staticmethod
    def from_coord_columns(n: int, cols) -> "FormLattice":
        lat = Lattice.from_columns(sym2_dim(n), cols)
        forms = tuple(BilinearForm(coords_to_gram(n, c)) for c in lat.basis.columns())
        return FormLattice(n, forms)

    @property
    def rank(self) -> int:
        return len(self.basis_forms)

    def coord_matrix(self) -> IntMatrix:
        if not self.basis_forms:
            return IntMatrix.zero(sym2_dim(self.ambient_rank), 0)
        return IntMatrix.from_columns([f.coords() for f in self.basis_forms],
                                      sym2_dim(self.ambient_rank))

    def lattice(self) -> Lattice:
        return Lattice.from_columns(sym2_dim(self.ambient_rank),
                                    self.coord_matrix().columns())

    def contains_form(self, f: BilinearForm) -> bool:
        return self.lattice().contains(f.coords())

    def contains(self, other: "FormLattice") -> bool:
        return self.lattice().contains_lattice(other.lattice())

    def form_from_coeffs(self, coeffs) -> BilinearForm:
        n = self.ambient_rank
        total = [ [0]*n for _ in range(n)]
        for c, f in zip(coeffs, self.basis_forms):
            for i in range(n):
                for j in range(n):
                    total[i][j] += c * f.gram[i, j]
        return BilinearForm(IntMatrix.from_rows(total))


def _invariant_coord_columns(n: int, reflections) -> list:
    """Kernel of the reflection constraints on Sym^2 coordinates."""
    if not reflections:
        return IntMatrix.identity(sym2_dim(n)).columns()
    nsym = sym2_dim(n)
    rows = []
    for s in reflections:
        phi = sym2_action(s)
        for r in range(nsym):
            row = list(phi.row(r))
            row[r] -= 1
            rows.append(tuple(row))
    ker = kernel_basis(IntMatrix.from_rows(rows))
    return ker.columns()


def _restrict_by_congruences(n: int, coord_cols, conditions) -> list:
    """Cut a form lattice (coordinate columns) by congruence conditions given
    as (functional on Sym^2 coords, modulus)."""
    if not coord_cols:
        return []
    k = IntMatrix.from_columns(coord_cols, sym2_dim(n))
    from .exact_algebra import solve_congruence_sublattice

    comp = []
    for func, mod in conditions:
        comp.append((tuple(sum(f * k[r, c] for r, f in enumerate(func))
                           for c in range(k.cols)), mod))
    coeff_lat = solve_congruence_sublattice(k.cols, comp)
    return [k.mul_vector(c) for c in coeff_lat.basis.columns()]


def _diagonal_even_conditions(n: int) -> list:
    conds = []
    for i in range(n):
        func = [0] * sym2_dim(n)
        func[sym2_pairs(n).index((i, i))] = 1
        conds.append((tuple(func), 2))
    return conds


def _value_functional(n: int, u, w=None) -> tuple:
    """Functional on Sym^2 coordinates computing b(u, w) (w defaults to u)."""
    w = u if w is None else w
    func = []
    for (i, j) in sym2_pairs(n):
        if i == j:
            func.append(u[i] * w[i])
        else:
            func.append(u[i] * w[j] + u[j] * w[i])
    return tuple(func)


# ---------------------------------------------------------------------------
# the form lattices of the theory


def invariant_sym_forms(g: ReductiveGroupData) -> FormLattice:
    """All Weyl-invariant symmetric forms on Lambda(T_G)."""
    n = g.cochar_rank
    refl = [g.reflection(i) for i in range(g.ss_rank)]
    return FormLattice.from_coord_columns(n, _invariant_coord_columns(n, refl))


def even_invariant_forms(g: ReductiveGroupData) -> FormLattice:
    """Invariant symmetric forms with even diagonal (b(x,x) in 2Z)."""
    n = g.cochar_rank
    refl = [g.reflection(i) for i in range(g.ss_rank)]
    cols = _invariant_coord_columns(n, refl)
    return FormLattice.from_coord_columns(
        n, _restrict_by_congruences(n, cols, _diagonal_even_conditions(n))
    )


def basic_inner_product(t: SimpleType) -> BilinearForm:
    """The minimal Weyl-invariant even form on the coroot lattice of the
    simply connected group of type t, normalized so short coroots have square
    length 2; Gram matrix on the simple coroots."""
    c = cartan_matrix(t)
    ell = coroot_lengths(t)
    n = t.rank
    gram = [[c[i, j] * ell[i] for j in range(n)] for i in range(n)]
    return BilinearForm(IntMatrix.from_rows(gram))


def _sc_reflections(g: ReductiveGroupData) -> list:
    """Simple reflections on the coroot lattice, in simple-coroot coordinates."""
    m = g.ss_rank
    c = g.simple_roots.transpose().mul(g.simple_coroots)
    out = []
    for i in range(m):
        rows = [
            tuple((1 if r == j else 0) - (c[i, j] if r == i else 0) for j in range(m))
            for r in range(m)
        ]
        out.append(IntMatrix.from_rows(rows))
    return out


def sc_even_forms(g: ReductiveGroupData) -> FormLattice:
    """(Sym^2 of the weight lattice)^W: even invariant forms on the coroot
    lattice of G^sc, in simple-coroot coordinates."""
    m = g.ss_rank
    cols = _invariant_coord_columns(m, _sc_reflections(g))
    return FormLattice.from_coord_columns(
        m, _restrict_by_congruences(m, cols, _diagonal_even_conditions(m))
    )


def _derived_reflections(g: ReductiveGroupData, d_basis: IntMatrix) -> list:
    """Simple reflections written in the basis of Lambda(T_D(G))."""
    out = []
    for i in range(g.ss_rank):
        s = g.reflection(i)
        cols = []
        for j in range(d_basis.cols):
            x = solve(d_basis, s.mul_vector(d_basis.column(j)))
            if x is None:
                raise ArithmeticError("derived lattice is not reflection stable")
            cols.append(x)
        out.append(IntMatrix.from_columns(cols, d_basis.cols))
    return out


def conditional_form_lattice(g: ReductiveGroupData) -> FormLattice:
    """Invariant even forms on Lambda(T_D(G)) whose rational extension is
    integral on Lambda(T_D(G)) x Lambda(T_Gss); Gram matrices are on the
    basis of Lambda(T_D(G))."""
    cd = cross_diagram(g)
    m = cd.derived_lattice.rank
    if m == 0:
        return FormLattice(0, ())
    d_basis = cd.derived_lattice.basis
    cols = _invariant_coord_columns(m, _derived_reflections(g, d_basis))
    conditions = list(_diagonal_even_conditions(m))

    # integrality of b against Lambda(T_Gss): express the ss basis rationally
    # in the images of the derived basis vectors (the Gram's own basis), both
    # inside the adjoint coweight lattice
    a_d = IntMatrix.from_columns(
        [g.adjoint_coordinates(c) for c in d_basis.columns()], m
    )
    a_ss = cd.ss_in_adjoint.basis
    inv = rational_inverse(a_d)
    p = [[sum(inv[r][t] * a_ss[t, b] for t in range(m)) for b in range(m)]
         for r in range(m)]
    denom = 1
    for row in p:
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    if denom > 1:
        pairs = sym2_pairs(m)
        for a in range(m):
            for b in range(m):
                func = []
                for (i, j) in pairs:
                    val = Fraction(0)
                    if a == i:
                        val += p[j][b]
                    if a == j and i != j:
                        val += p[i][b]
                    func.append(int(val * denom))
                if any(func):
                    conditions.append((tuple(func), denom))
    return FormLattice.from_coord_columns(m, _restrict_by_congruences(m, cols, conditions))


def d_even_forms(g: ReductiveGroupData) -> FormLattice:
    """Invariant symmetric forms on Lambda(T_G) whose restriction to the
    derived lattice is even."""
    n = g.cochar_rank
    refl = [g.reflection(i) for i in range(g.ss_rank)]
    cols = _invariant_coord_columns(n, refl)
    cd = cross_diagram(g)
    conditions = [
        (_value_functional(n, u), 2) for u in cd.derived_lattice.basis.columns()
    ]
    return FormLattice.from_coord_columns(n, _restrict_by_congruences(n, cols, conditions))


# ---------------------------------------------------------------------------
# Neron-Severi groups


@dataclass(frozen=True)
class NSGroup:
    """A Neron-Severi group with its canonical presentation and certificates.

    ``members`` columns generate the subgroup inside the ambient coordinate
    space (character coordinates first, then form-lattice coefficients);
    ``relations`` are the ambient's identifications.  ``key`` is the HNF basis
    of members + relations, so two computations of the same subgroup compare
    equal no matter which lift of delta was used.
    """

    kind: str
    group: FGAbelianGroup
    generators: tuple               # (chi tuple | None, BilinearForm)
    chi_rank: int
    form_basis: FormLattice
    members: IntMatrix
    relations: IntMatrix
    key: IntMatrix
    lift: tuple
    certificates: IntMatrix | None = None   # bun_p1: unique (chi, b) witnesses


def _subgroup_presentation(ambient: Presentation, generator_cols):
    gens = Lattice.from_columns(ambient.rank,
                                list(generator_cols) + ambient.relations.columns())
    embed = gens.basis
    rel_cols = []
    for c in ambient.relations.columns():
        x = solve(embed, c)
        if x is None:
            raise ArithmeticError("ambient relations must lie in the subgroup")
        rel_cols.append(x)
    pres = Presentation.of_quotient(embed.cols, rel_cols)
    return pres, embed


def _canonical_generator_columns(pres: Presentation) -> list:
    """Generator columns of Z^rank matching the canonical decomposition of the
    presented group: free generators first, then torsion by invariant factor."""
    from .exact_algebra import smith_normal_form

    rank = pres.rank
    if pres.relations.cols == 0:
        return IntMatrix.identity(rank).columns()
    s, u, _ = smith_normal_form(pres.relations)
    uinv = IntMatrix.from_rows([[int(x) for x in row] for row in rational_inverse(u)])
    diags = [s[i, i] for i in range(min(rank, pres.relations.cols))]
    free_idx = [i for i in range(rank) if i >= len(diags) or diags[i] == 0]
    tors_idx = sorted((i for i in range(len(diags)) if diags[i] >= 2),
                      key=lambda i: diags[i])
    return [uinv.column(i) for i in free_idx + tors_idx]


def _root_relations(g: ReductiveGroupData, extra_rank: int) -> IntMatrix:
    """Columns (root, 0) in Z^{n + extra_rank}."""
    n = g.cochar_rank
    cols = [tuple(c) + (0,) * extra_rank for c in g.simple_roots.columns()]
    return (IntMatrix.from_columns(cols, n + extra_rank)
            if cols else IntMatrix.zero(n + extra_rank, 0))


def _derived_quotient(g: ReductiveGroupData):
    """Lambda^*(T_D)/Lambda^*(T_Gad) as a presentation, with the restriction
    matrix Lambda^*(T_G) -> Lambda^*(T_D)."""
    cd = cross_diagram(g)
    b_d = cd.derived_lattice.basis
    res = b_d.transpose()                                    # n -> m_D
    root_restr = [res.mul_vector(c) for c in g.simple_roots.columns()]
    target = Presentation.of_quotient(b_d.cols, root_restr)
    return cd, res, target


def _default_lift(g: ReductiveGroupData, delta: Pi1Element, lift, generic: bool):
    if lift is not None:
        d = tuple(int(x) for x in lift)
        if Pi1Element.from_cocharacter(g, d).coords != delta.coords:
            raise ValueError("lift does not represent delta")
        return d
    if generic:
        return generic_lift(g, delta)
    return pi1_presentation(g).lift(delta.coords)


def ns_bun(g: ReductiveGroupData, delta: Pi1Element, lift=None) -> NSGroup:
    """NS(Bun_G^delta): pairs ([chi], b) in Lambda^*(T_G)/Lambda^*(T_Gad) x
    (D-even invariant forms) with [chi|_D] = [b(d x -)|_D]; independent of the
    chosen lift d of delta."""
    d = _default_lift(g, delta, lift, generic=False)
    n = g.cochar_rank
    forms = d_even_forms(g)
    f = forms.rank
    cd, res, target = _derived_quotient(g)
    cols = [res.mul_vector(tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    for bf in forms.basis_forms:
        cols.append(tuple(-x for x in res.mul_vector(bf.pair_with(d))))
    m = IntMatrix.from_columns(cols, target.rank) if cols else IntMatrix.zero(target.rank, 0)
    source = Presentation(n + f, _root_relations(g, f))
    pres, embed = hom_kernel(m, source, target)
    gens = []
    for gcol in _canonical_generator_columns(pres):
        col = embed.mul_vector(gcol)
        chi = col[:n]
        form = forms.form_from_coeffs(col[n:])
        # certificate check: the defining compatibility holds exactly
        diff = res.mul_vector(tuple(a - b for a, b in zip(chi, form.pair_with(d))))
        if not target.is_zero(diff):
            raise ArithmeticError("NS generator fails the compatibility condition")
        gens.append((chi, form))
    return NSGroup(
        kind="bun",
        group=pres.group(),
        generators=tuple(gens),
        chi_rank=n,
        form_basis=forms,
        members=embed,
        relations=source.relations,
        key=source.subgroup_key(embed.columns()),
        lift=d,
    )


def ns_rigidified(g: ReductiveGroupData, delta: Pi1Element, lift=None) -> NSGroup:
    """NS of the rigidification: D-even invariant forms b on Lambda(T_G) with
    b(d x -) restricting to zero in Lambda^*(T_D)/Lambda^*(T_Gad)."""
    d = _default_lift(g, delta, lift, generic=False)
    forms = d_even_forms(g)
    _, res, target = _derived_quotient(g)
    cols = [res.mul_vector(bf.pair_with(d)) for bf in forms.basis_forms]
    m = (IntMatrix.from_columns(cols, target.rank)
         if cols else IntMatrix.zero(target.rank, 0))
    sub = preimage_lattice(m, target)
    gens = []
    member_cols = []
    n = g.cochar_rank
    for j in range(sub.rank):
        coeffs = sub.basis.column(j)
        form = forms.form_from_coeffs(coeffs)
        diff = res.mul_vector(form.pair_with(d))
        if not target.is_zero(diff):
            raise ArithmeticError("rigidified NS generator fails condition (zero weight)")
        gens.append((None, form))
        member_cols.append((0,) * n + tuple(coeffs))
    members = (IntMatrix.from_columns(member_cols, n + forms.rank)
               if member_cols else IntMatrix.zero(n + forms.rank, 0))
    return NSGroup(
        kind="rigidified",
        group=FGAbelianGroup.free(sub.rank),
        generators=tuple(gens),
        chi_rank=n,
        form_basis=forms,
        members=members,
        relations=IntMatrix.zero(n + forms.rank, 0),
        key=sub.basis,
        lift=d,
    )


def ns_bun_p1(g: ReductiveGroupData, delta: Pi1Element, lift=None) -> NSGroup:
    """NS Bun_G^delta(P^1): pairs (l, b) with l in Lambda^*(Z(G)) and b an
    even invariant form on the coroot lattice such that l + b(d^ss, -) comes
    from an integral character of T_G.

    The condition is membership of the pair in the image of the injection
    Lambda^*(T_G) -> Lambda^*(Z(G)) + Lambda^*(T_Gsc)_Q, chi -> ([chi], chi^ss);
    the integral chi certifying a member is unique and is stored with it.
    """
    d = _default_lift(g, delta, lift, generic=True)
    n, mm = g.cochar_rank, g.ss_rank
    forms = sc_even_forms(g)
    s = forms.rank
    if mm:
        c = g.simple_roots.transpose().mul(g.simple_coroots)
        cinv = rational_inverse(c)
        d_ad = g.adjoint_coordinates(d)
        v = [sum(cinv[r][t] * d_ad[t] for t in range(mm)) for r in range(mm)]
        denom = 1
        for x in v:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        rows = []
        at = g.simple_coroots.transpose()   # chi -> (chi(a_j^vee))_j
        for j in range(mm):
            row = [denom * at[j, i] for i in range(n)]
            for k, bf in enumerate(forms.basis_forms):
                val = sum(Fraction(bf.gram[j, t]) * v[t] for t in range(mm))
                row.append(int(-denom * val))
            rows.append(tuple(row))
        members_lat = Lattice.from_columns(n + s, kernel_basis(IntMatrix.from_rows(rows)).columns())
    else:
        members_lat = Lattice.full(n + s)
    source = Presentation(n + s, _root_relations(g, s))
    pres, embed = _subgroup_presentation(source, members_lat.basis.columns())
    gens = []
    for gcol in _canonical_generator_columns(pres):
        col = embed.mul_vector(gcol)
        gens.append((col[:n], forms.form_from_coeffs(col[n:])))
    return NSGroup(
        kind="bun_p1",
        group=pres.group(),
        generators=tuple(gens),
        chi_rank=n,
        form_basis=forms,
        members=embed,
        relations=source.relations,
        key=source.subgroup_key(embed.columns()),
        lift=d,
        certificates=members_lat.basis,
    )
