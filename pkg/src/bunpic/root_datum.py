"""Root data of reductive groups: named constructions, fundamental groups,
and the lattice cross diagram relating G to D(G), G^ab, G^ss, G^sc, G^ad.

Conventions, fixed once for determinism:

* a group is stored by its cocharacter lattice ``Z^n`` together with the
  simple coroots (columns, in that basis) and the simple roots (columns, in
  the dual basis), so ``root_i . coroot_j`` is the Cartan entry
  ``<alpha_i, alpha_j^vee>``;
* simply connected factors use the simple coroots as basis (coroots = I,
  roots = C^T), adjoint factors use the fundamental coweights (coroots = C,
  roots = I);
* GL(n) uses the standard ``Z^n``; Spin/SO/PSO use the standard orthogonal
  conventions with D-rank >= 3.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact_algebra import (
    FGAbelianGroup,
    IntMatrix,
    Lattice,
    group_from_relations,
    kernel_basis,
    rational_inverse,
    saturation,
    smith_normal_form,
    solve,
)


class InvalidSpec(ValueError):
    """Malformed group name or invalid rank in a named construction."""


class ParseError(ValueError):
    """Syntax error in a group spec string; carries position and expectation."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotInLattice(ValueError):
    """Vector claimed to lie in a lattice does not."""


# ---------------------------------------------------------------------------
# simple types and Cartan data


_FAMILY_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}


@dataclass(frozen=True)
class SimpleType:
    """Irreducible Dynkin type, e.g. A3, D4, E8."""

    family: str
    rank: int

    def __post_init__(self):
        fam = self.family
        if fam not in _FAMILY_MIN_RANK:
            raise InvalidSpec(f"unknown family {fam!r}")
        if self.rank < _FAMILY_MIN_RANK[fam]:
            raise InvalidSpec(f"{fam}{self.rank}: rank too small")
        if fam == "E" and self.rank not in (6, 7, 8):
            raise InvalidSpec("E only exists in ranks 6, 7, 8")
        if fam == "F" and self.rank != 4:
            raise InvalidSpec("F only exists in rank 4")
        if fam == "G" and self.rank != 2:
            raise InvalidSpec("G only exists in rank 2")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @staticmethod
    def parse(s: str) -> "SimpleType":
        m = re.fullmatch(r"([A-G])(\d+)", s.strip())
        if not m:
            raise InvalidSpec(f"cannot parse simple type {s!r}")
        return SimpleType(m.group(1), int(m.group(2)))


def cartan_matrix(t: SimpleType) -> IntMatrix:
    """Cartan matrix with entries C[i][j] = <alpha_i, alpha_j^vee>."""
    n = t.rank
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    fam = t.family
    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B" and n >= 2:
            c[n - 2][n - 1] = -2          # long alpha_{n-1} against short coroot
        if fam == "C" and n >= 2:
            c[n - 1][n - 2] = -2          # long alpha_n against short coroots
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        # Bourbaki: chain 1-3-4-5-6(-7)(-8), node 2 hangs off node 4.
        bonds = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            bonds.append((5, 6))
        if n == 8:
            bonds.append((6, 7))
        for i, j in bonds:
            bond(i, j)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, cij=-2, cji=-1)
        bond(2, 3)
    elif fam == "G":
        bond(0, 1, cij=-1, cji=-3)        # alpha_1 short, alpha_2 long
    return IntMatrix.from_rows(c)


def coroot_lengths(t: SimpleType) -> tuple:
    """Half square-lengths b(a_i^vee, a_i^vee)/2 of the simple coroots for the
    basic inner product (short coroots normalized to square length 2)."""
    n = t.rank
    if t.family == "B":
        return tuple([1] * (n - 1) + [2])
    if t.family == "C":
        return tuple([2] * (n - 1) + [1])
    if t.family == "F":
        return (1, 1, 2, 2)
    if t.family == "G":
        return (3, 1)
    return tuple([1] * n)


# ---------------------------------------------------------------------------
# reductive group data


@dataclass(frozen=True)
class ReductiveGroupData:
    """Root datum of a (split) reductive group.

    ``simple_coroots`` columns live in the cocharacter lattice ``Z^n``; the
    ``simple_roots`` columns live in the dual basis, so that
    ``simple_roots.column(i) . simple_coroots.column(j)`` is the Cartan entry.
    """

    cochar_rank: int
    simple_coroots: IntMatrix
    simple_roots: IntMatrix
    factor_types: tuple
    label: str = ""

    def __post_init__(self):
        n = self.cochar_rank
        m = sum(t.rank for t in self.factor_types)
        if self.simple_coroots.cols != m or self.simple_roots.cols != m:
            raise InvalidSpec("number of coroots must equal the sum of factor ranks")
        if self.simple_coroots.rows != n or self.simple_roots.rows != n:
            raise InvalidSpec("coroot/root coordinates must have cochar_rank entries")
        if m > n:
            raise InvalidSpec("semisimple rank exceeds cocharacter rank")
        # pairing must reproduce the block Cartan matrix
        expected = _block_cartan(self.factor_types)
        pairing = self.simple_roots.transpose().mul(self.simple_coroots)
        if pairing != expected:
            raise InvalidSpec("pairing of roots and coroots is not the Cartan matrix")
        if m and kernel_basis(self.simple_coroots).cols:
            raise InvalidSpec("coroots must be linearly independent")

    @property
    def ss_rank(self) -> int:
        return self.simple_coroots.cols

    @property
    def is_torus(self) -> bool:
        return self.ss_rank == 0

    @property
    def is_semisimple(self) -> bool:
        return self.ss_rank == self.cochar_rank

    def factor_blocks(self) -> list:
        """Index ranges of the simple factors inside 1..ss_rank."""
        blocks = []
        start = 0
        for t in self.factor_types:
            blocks.append(range(start, start + t.rank))
            start += t.rank
        return blocks

    def reflection(self, i: int) -> IntMatrix:
        """Simple reflection s_i on the cocharacter lattice:
        x -> x - <alpha_i, x> alpha_i^vee."""
        n = self.cochar_rank
        a = self.simple_roots.column(i)
        av = self.simple_coroots.column(i)
        rows = [
            tuple((1 if r == c else 0) - av[r] * a[c] for c in range(n))
            for r in range(n)
        ]
        return IntMatrix.from_rows(rows)

    def coroot_lattice(self) -> Lattice:
        return Lattice.from_columns(self.cochar_rank, self.simple_coroots.columns())

    def root_lattice_dual(self) -> Lattice:
        """Z-span of the roots inside the character lattice; this is the
        character lattice of the adjoint torus."""
        return Lattice.from_columns(self.cochar_rank, self.simple_roots.columns())

    def adjoint_coordinates(self, v) -> tuple:
        """Image of a cocharacter in Lambda(T_Gad) = Z^ss_rank, written in the
        fundamental-coweight basis: the vector of pairings <alpha_i, v>."""
        return self.simple_roots.transpose().mul_vector(tuple(v))

    def __str__(self):
        return self.label or "*".join(str(t) for t in self.factor_types) or f"T({self.cochar_rank})"


def _block_cartan(types) -> IntMatrix:
    m = sum(t.rank for t in types)
    rows = [[0] * m for _ in range(m)]
    ofs = 0
    for t in types:
        c = cartan_matrix(t)
        for i in range(t.rank):
            for j in range(t.rank):
                rows[ofs + i][ofs + j] = c[i, j]
        ofs += t.rank
    return IntMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# named constructions


def _sc_datum(types, label) -> ReductiveGroupData:
    m = sum(t.rank for t in types)
    return ReductiveGroupData(
        cochar_rank=m,
        simple_coroots=IntMatrix.identity(m),
        simple_roots=_block_cartan(types).transpose(),
        factor_types=tuple(types),
        label=label,
    )


def _adjoint_datum(types, label) -> ReductiveGroupData:
    m = sum(t.rank for t in types)
    return ReductiveGroupData(
        cochar_rank=m,
        simple_coroots=_block_cartan(types),
        simple_roots=IntMatrix.identity(m),
        factor_types=tuple(types),
        label=label,
    )


@dataclass(frozen=True)
class GroupFactor:
    name: str
    param: int | None = None

    def __str__(self):
        return self.name if self.param is None else f"{self.name}({self.param})"


@dataclass(frozen=True)
class GroupSpec:
    """Parsed product of named factors; printing reparses to an equal value."""

    factors: tuple

    def __str__(self):
        return "*".join(str(f) for f in self.factors)


_PARAM_NAMES = {"SL", "GL", "PGL", "Sp", "PSp", "Spin", "SO", "PSO", "T"}
_EXC_NAMES = {"E6sc", "E6ad", "E7sc", "E7ad", "E8", "F4", "G2"}


def parse_group_spec(s: str) -> GroupSpec:
    """Parse ``FACTOR ("*" FACTOR)*`` where FACTOR is NAME(INT) or an
    exceptional name; whitespace insensitive. Rank constraints are validated."""
    text = s
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_factor() -> GroupFactor:
        nonlocal pos
        skip_ws()
        m = re.match(r"[A-Za-z]\w*", text[pos:])
        if not m:
            raise ParseError("expected a group name", pos)
        name = m.group(0)
        pos += len(name)
        if name in _EXC_NAMES:
            return GroupFactor(name)
        if name not in _PARAM_NAMES:
            raise ParseError(f"unknown group name {name!r}", pos - len(name))
        skip_ws()
        if pos >= len(text) or text[pos] != "(":
            raise ParseError(f"{name} requires a parenthesized rank", pos)
        pos += 1
        skip_ws()
        m = re.match(r"\d+", text[pos:])
        if not m:
            raise ParseError("expected an integer rank", pos)
        param = int(m.group(0))
        pos += len(m.group(0))
        skip_ws()
        if pos >= len(text) or text[pos] != ")":
            raise ParseError("expected ')'", pos)
        pos += 1
        _validate_factor(name, param, pos)
        return GroupFactor(name, param)

    factors = [parse_factor()]
    skip_ws()
    while pos < len(text):
        if text[pos] != "*":
            raise ParseError("expected '*' between factors", pos)
        pos += 1
        factors.append(parse_factor())
        skip_ws()
    return GroupSpec(tuple(factors))


def _validate_factor(name: str, param: int, pos: int) -> None:
    ok = {
        "SL": param >= 2,
        "GL": param >= 1,
        "PGL": param >= 2,
        "Sp": param >= 4 and param % 2 == 0,
        "PSp": param >= 4 and param % 2 == 0,
        "Spin": param >= 5,   # Spin(4) = D2 stays out of the named grammar
        "SO": param >= 5,
        "PSO": param >= 6 and param % 2 == 0,
        "T": param >= 1,
    }[name]
    if not ok:
        raise ParseError(f"invalid rank {param} for {name}", pos)


def _factor_datum(f: GroupFactor) -> ReductiveGroupData:
    name, p = f.name, f.param
    if name == "T":
        return ReductiveGroupData(p, IntMatrix.zero(p, 0), IntMatrix.zero(p, 0), (), label=str(f))
    if name == "SL":
        return _sc_datum([SimpleType("A", p - 1)], str(f))
    if name == "PGL":
        return _adjoint_datum([SimpleType("A", p - 1)], str(f))
    if name == "GL":
        if p == 1:
            return ReductiveGroupData(1, IntMatrix.zero(1, 0), IntMatrix.zero(1, 0), (), label=str(f))
        cols = [[0] * p for _ in range(p - 1)]
        for i in range(p - 1):
            cols[i][i] = 1
            cols[i][i + 1] = -1
        mat = IntMatrix.from_columns(cols, p)
        return ReductiveGroupData(p, mat, mat, (SimpleType("A", p - 1),), label=str(f))
    if name == "Sp":
        return _sc_datum([SimpleType("C", p // 2)], str(f))
    if name == "PSp":
        return _adjoint_datum([SimpleType("C", p // 2)], str(f))
    if name == "Spin":
        t = SimpleType("B", (p - 1) // 2) if p % 2 else SimpleType("D", p // 2)
        return _sc_datum([t], str(f))
    if name == "SO":
        if p % 2:
            return _adjoint_datum([SimpleType("B", (p - 1) // 2)], str(f))
        n = p // 2
        # Lambda(T) = Z^n, coroots e_i - e_{i+1} and e_{n-1} + e_n; index 2
        # between the coroot lattice and Z^n realizes pi_1(SO) = Z/2.
        cols = []
        for i in range(n - 1):
            col = [0] * n
            col[i], col[i + 1] = 1, -1
            cols.append(col)
        last = [0] * n
        last[n - 2] = last[n - 1] = 1
        cols.append(last)
        mat = IntMatrix.from_columns(cols, n)
        return ReductiveGroupData(n, mat, mat, (SimpleType("D", n),), label=str(f))
    if name == "PSO":
        return _adjoint_datum([SimpleType("D", p // 2)], str(f))
    if name in ("E6sc", "E7sc"):
        return _sc_datum([SimpleType("E", int(name[1]))], name)
    if name in ("E6ad", "E7ad"):
        return _adjoint_datum([SimpleType("E", int(name[1]))], name)
    if name == "E8":
        return _sc_datum([SimpleType("E", 8)], name)
    if name == "F4":
        return _sc_datum([SimpleType("F", 4)], name)
    if name == "G2":
        return _sc_datum([SimpleType("G", 2)], name)
    raise InvalidSpec(f"unknown factor {name!r}")


def product(*groups: ReductiveGroupData, label: str = "") -> ReductiveGroupData:
    """Block-diagonal product of root data."""
    n = sum(g.cochar_rank for g in groups)
    m = sum(g.ss_rank for g in groups)
    coroots = [[0] * m for _ in range(n)]
    roots = [[0] * m for _ in range(n)]
    r_ofs = 0
    c_ofs = 0
    for g in groups:
        for i in range(g.cochar_rank):
            for j in range(g.ss_rank):
                coroots[r_ofs + i][c_ofs + j] = g.simple_coroots[i, j]
                roots[r_ofs + i][c_ofs + j] = g.simple_roots[i, j]
        r_ofs += g.cochar_rank
        c_ofs += g.ss_rank
    types = tuple(t for g in groups for t in g.factor_types)
    return ReductiveGroupData(
        n,
        IntMatrix(n, m, tuple(tuple(r) for r in coroots)),
        IntMatrix(n, m, tuple(tuple(r) for r in roots)),
        types,
        label=label or "*".join(str(g) for g in groups),
    )


def build_group(spec) -> ReductiveGroupData:
    """Build the named reductive group; ``spec`` is a GroupSpec or a string."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    data = [_factor_datum(f) for f in spec.factors]
    if len(data) == 1:
        return data[0]
    return product(*data, label=str(spec))


def group_from_json(obj) -> ReductiveGroupData:
    """Raw root-datum import: {"cochar_rank": n, "simple_coroots": [[..]],
    "simple_roots": [[..]], "factor_types": ["A3", ...]}; vectors are columns."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = int(obj["cochar_rank"])
    coroots = [tuple(c) for c in obj["simple_coroots"]]
    roots = [tuple(c) for c in obj["simple_roots"]]
    types = tuple(SimpleType.parse(t) for t in obj["factor_types"])
    cor = IntMatrix.from_columns(coroots, n) if coroots else IntMatrix.zero(n, 0)
    roo = IntMatrix.from_columns(roots, n) if roots else IntMatrix.zero(n, 0)
    return ReductiveGroupData(n, cor, roo, types, label=obj.get("label", ""))


def group_to_json(g: ReductiveGroupData) -> dict:
    return {
        "cochar_rank": g.cochar_rank,
        "simple_coroots": [list(c) for c in g.simple_coroots.columns()],
        "simple_roots": [list(c) for c in g.simple_roots.columns()],
        "factor_types": [str(t) for t in g.factor_types],
        "label": g.label,
    }


# ---------------------------------------------------------------------------
# fundamental group


@dataclass(frozen=True)
class Pi1Presentation:
    """pi_1(G) = Lambda(T_G)/Lambda_coroots with a fixed generator system:
    free generators first, then torsion generators in invariant-factor order."""

    group: FGAbelianGroup
    gens: IntMatrix            # cochar_rank x ngens, generator lifts as columns
    _proj: IntMatrix = field(repr=False)   # ngens x cochar_rank, coordinate map
    _orders: tuple = field(repr=False)     # 0 for free, d for torsion

    def coords(self, v) -> tuple:
        raw = self._proj.mul_vector(tuple(v))
        return tuple(x % d if d else x for x, d in zip(raw, self._orders))

    def lift(self, coords) -> tuple:
        coords = tuple(coords)
        if len(coords) != self.group.ngens:
            raise ValueError(
                f"delta needs {self.group.ngens} coordinates for pi1 = {self.group.describe()}"
            )
        return self.gens.mul_vector(coords)

    def reduce(self, coords) -> tuple:
        return tuple(x % d if d else x for x, d in zip(coords, self._orders))


def pi1_presentation(g: ReductiveGroupData) -> Pi1Presentation:
    n = g.cochar_rank
    a = g.simple_coroots
    s, u, _ = smith_normal_form(a) if a.cols else (IntMatrix.zero(n, 0), IntMatrix.identity(n), None)
    diags = [s[i, i] for i in range(min(n, a.cols))]
    uinv = IntMatrix.from_rows(
        [[int(x) for x in row] for row in rational_inverse(u)]
    ) if n else IntMatrix.identity(0)
    free_idx = [i for i in range(n) if i >= len(diags) or diags[i] == 0]
    tors_idx = [i for i in range(len(diags)) if diags[i] >= 2]
    tors_idx.sort(key=lambda i: diags[i])
    order_idx = free_idx + tors_idx
    gens = IntMatrix.from_columns([uinv.column(i) for i in order_idx], n) if order_idx else IntMatrix.zero(n, 0)
    proj = IntMatrix.from_rows([u.row(i) for i in order_idx]) if order_idx else IntMatrix.zero(0, n)
    orders = tuple([0] * len(free_idx) + [diags[i] for i in tors_idx])
    group = FGAbelianGroup(len(free_idx), tuple(diags[i] for i in tors_idx))
    return Pi1Presentation(group, gens, proj, orders)


def fundamental_group(g: ReductiveGroupData) -> FGAbelianGroup:
    """Canonical form of pi_1(G) = Lambda(T_G)/Lambda_coroots."""
    return group_from_relations(g.cochar_rank, g.simple_coroots)


@dataclass(frozen=True)
class Pi1Element:
    """Class in pi_1(G), stored as coordinates in the canonical generators."""

    group: ReductiveGroupData
    coords: tuple

    @staticmethod
    def from_coords(g: ReductiveGroupData, coords) -> "Pi1Element":
        p = pi1_presentation(g)
        c = tuple(int(x) for x in coords)
        if len(c) != p.group.ngens:
            raise ValueError(
                f"delta needs {p.group.ngens} coordinates for pi1 = {p.group.describe()}"
            )
        return Pi1Element(g, p.reduce(c))

    @staticmethod
    def zero(g: ReductiveGroupData) -> "Pi1Element":
        p = pi1_presentation(g)
        return Pi1Element(g, tuple(0 for _ in range(p.group.ngens)))

    @staticmethod
    def from_cocharacter(g: ReductiveGroupData, d) -> "Pi1Element":
        p = pi1_presentation(g)
        return Pi1Element(g, p.coords(d))

    def lift(self) -> tuple:
        return pi1_presentation(self.group).lift(self.coords)


# ---------------------------------------------------------------------------
# cross diagram


@dataclass(frozen=True)
class CrossDiagram:
    """Lattice-level cross diagram of a reductive group.

    All semisimple-side lattices are presented inside Lambda(T_Gad) = Z^m in
    fundamental-coweight coordinates; the map from Lambda(T_G) to it is
    ``adjoint_coordinates`` (pairing with the simple roots), whose kernel is
    the radical lattice.
    """

    group: ReductiveGroupData
    derived_lattice: Lattice          # Lambda(T_D(G)) inside Lambda(T_G)
    radical_lattice: Lattice          # Lambda(T_R(G)) inside Lambda(T_G)
    ab_rank: int                      # rank of Lambda(G^ab)
    ab_projection: IntMatrix          # Lambda(T_G) ->> Lambda(G^ab) = Z^ab_rank
    ab_section: IntMatrix             # fixed splitting Lambda(G^ab) -> Lambda(T_G)
    sc_in_adjoint: Lattice            # coroot lattice inside Z^m
    derived_in_adjoint: Lattice       # image of Lambda(T_D) in Z^m
    ss_in_adjoint: Lattice            # image of Lambda(T_G) in Z^m
    adjoint_rank: int                 # m

    def chain_holds(self) -> bool:
        return (
            self.derived_in_adjoint.contains_lattice(self.sc_in_adjoint)
            and self.ss_in_adjoint.contains_lattice(self.derived_in_adjoint)
            and Lattice.full(self.adjoint_rank).contains_lattice(self.ss_in_adjoint)
        )


def cross_diagram(g: ReductiveGroupData) -> CrossDiagram:
    n, m = g.cochar_rank, g.ss_rank
    coroot = g.coroot_lattice()
    derived = saturation(coroot)
    radical = Lattice.from_columns(n, kernel_basis(g.simple_roots.transpose()).columns()) \
        if m else Lattice.full(n)
    rt = g.simple_roots.transpose()
    sc_ad = Lattice.from_columns(m, [g.adjoint_coordinates(c) for c in g.simple_coroots.columns()]) \
        if m else Lattice.from_columns(0, [])
    der_ad = Lattice.from_columns(m, [g.adjoint_coordinates(c) for c in derived.basis.columns()]) \
        if m else Lattice.from_columns(0, [])
    ss_ad = Lattice.from_columns(m, [rt.mul_vector(v) for v in IntMatrix.identity(n).columns()]) \
        if m else Lattice.from_columns(0, [])

    # split off Lambda(G^ab): complete the (saturated) derived lattice to a
    # basis of Z^n via SNF and project to the complementary coordinates
    if derived.rank:
        s, u, v = smith_normal_form(derived.basis)
        uinv_rows = rational_inverse(u)
        uinv = IntMatrix.from_rows([[int(x) for x in row] for row in uinv_rows])
        comp_idx = list(range(derived.rank, n))
        proj = IntMatrix.from_rows([u.row(i) for i in comp_idx]) if comp_idx else IntMatrix.zero(0, n)
        section = IntMatrix.from_columns([uinv.column(i) for i in comp_idx], n) \
            if comp_idx else IntMatrix.zero(n, 0)
    else:
        proj = IntMatrix.identity(n)
        section = IntMatrix.identity(n)
    return CrossDiagram(
        group=g,
        derived_lattice=derived,
        radical_lattice=radical,
        ab_rank=n - derived.rank,
        ab_projection=proj,
        ab_section=section,
        sc_in_adjoint=sc_ad,
        derived_in_adjoint=der_ad,
        ss_in_adjoint=ss_ad,
        adjoint_rank=m,
    )


# ---------------------------------------------------------------------------
# generic cocharacters and divisibility


def is_generic(g: ReductiveGroupData, d) -> bool:
    """True iff the image of d in Lambda(T_Gad) is nonzero on every simple factor."""
    ad = g.adjoint_coordinates(d)
    return all(any(ad[i] for i in block) for block in g.factor_blocks())


def generic_lift(g: ReductiveGroupData, delta: Pi1Element) -> tuple:
    """A cocharacter lifting delta whose class is generic (adds coroots from
    each simple factor whose adjoint component vanishes)."""
    d = list(delta.lift())
    for block in g.factor_blocks():
        ad = g.adjoint_coordinates(d)
        if not any(ad[i] for i in block):
            coroot = g.simple_coroots.column(block[0])
            d = [x + y for x, y in zip(d, coroot)]
    return tuple(d)


def divisibility(d, l: Lattice) -> int:
    """Largest m >= 0 with d = m * (primitive vector of the lattice); 0 iff d = 0."""
    d = tuple(d)
    if all(x == 0 for x in d):
        return 0
    coords = l.coordinates(d)
    if coords is None:
        raise NotInLattice(f"{d} is not in the lattice")
    g = 0
    for x in coords:
        g = gcd(g, abs(x))
    return g


# ---------------------------------------------------------------------------
# full-center torus cover (realizes the golden-table groups)


def with_central_torus(g_sc: ReductiveGroupData, label: str = ""):
    """Glue a torus to a simply connected group along its full center.

    Returns ``(G, gens)`` where G is reductive with D(G) = g_sc and
    G^ss = G^ad, and ``gens[j]`` is a cocharacter of G whose pi_1-class maps
    to the j-th invariant-factor generator of pi_1(G^ad).  This realizes, for
    each simply connected type, every central class as delta^ss of an honest
    group (the A_n instance of the construction is GL_n).
    """
    if not g_sc.is_semisimple or g_sc.coroot_lattice() != Lattice.full(g_sc.cochar_rank):
        raise InvalidSpec("with_central_torus expects a simply connected group")
    m = g_sc.cochar_rank
    c = g_sc.simple_roots.transpose().mul(g_sc.simple_coroots)  # Cartan matrix
    s, u, _ = smith_normal_form(c)
    nontrivial = [i for i in range(m) if s[i, i] >= 2]
    k = len(nontrivial)
    uinv = IntMatrix.from_rows([[int(x) for x in row] for row in rational_inverse(u)])
    cinv = rational_inverse(c)

    # generators of Lambda(T_G) in Q^{m+k}: coroots, torus units, and the
    # glue vectors (w_j, e_j/d_j) with w_j a coweight generating the j-th
    # cyclic piece of pi_1(G^ad)
    gens_q = []
    for i in range(m):
        gens_q.append([Fraction(int(i == r)) for r in range(m)] + [Fraction(0)] * k)
    for j in range(k):
        gens_q.append([Fraction(0)] * m + [Fraction(int(j == r)) for r in range(k)])
    glue = []
    for j, idx in enumerate(nontrivial):
        y = uinv.column(idx)
        w = [sum(cinv[r][t] * y[t] for t in range(m)) for r in range(m)]
        vec = w + [Fraction(int(j == r), s[nontrivial[r], nontrivial[r]]) for r in range(k)]
        glue.append(vec)
        gens_q.append(vec)

    denom = 1
    for v in gens_q:
        for x in v:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    cols = [[int(x * denom) for x in v] for v in gens_q]
    basis = Lattice.from_columns(m + k, cols).basis  # basis of denom * Lambda

    def to_new_coords(vec_q):
        scaled = [x * denom for x in vec_q]
        target = [int(x) for x in scaled]
        x = solve(basis, tuple(target))
        if x is None:
            raise ArithmeticError("vector not in the glued lattice")
        return x

    new_coroots = IntMatrix.from_columns(
        [to_new_coords([Fraction(int(i == r)) for r in range(m)] + [Fraction(0)] * k)
         for i in range(m)],
        m + k,
    )
    # roots become functionals on the new basis: old root paired with basis columns
    root_rows = []
    for i in range(m):
        old = list(g_sc.simple_roots.column(i)) + [0] * k
        vals = []
        for j in range(m + k):
            col = basis.column(j)
            num = sum(o * x for o, x in zip(old, col))
            if num % denom:
                raise ArithmeticError("root not integral on the glued lattice")
            vals.append(num // denom)
        root_rows.append(vals)
    new_roots = IntMatrix.from_columns(root_rows, m + k)
    group = ReductiveGroupData(
        m + k, new_coroots, new_roots, g_sc.factor_types,
        label=label or f"({g_sc}xT{k})/Z",
    )
    gen_cochars = [tuple(to_new_coords(v)) for v in glue]
    return group, gen_cochars
