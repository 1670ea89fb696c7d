"""Exact algebraic semantics: Frobenius algebras and term evaluation.

Algebras are finite dimensional over the rationals, given by structure
constants.  The checkers verify associativity, the Frobenius data (a
central copairing and a functional with the reproducing normalization),
symmetry (trace-likeness / bicentrality) and separability (existence of a
central element with multiplication one, decided by an exact linear
system).  `evaluate` runs a two-cell term as a movie of strand events and
produces the exact linear map between the tensor spaces of the boundary
1-manifolds: births insert the unit, deaths apply the functional, the two
saddles insert the copairing or multiply, cusp and crossing cells reroute.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import termcore as tc
from ._diagram import (DiagramError, MovieListener, MovieState, run_movie,
                       transfer_components)
from .presentations import Presentation


class AlgebraError(Exception):
    pass


Q = Fraction


def _vec(n, entries=()):
    v = [Q(0)] * n
    for i, c in entries:
        v[i] += c
    return tuple(v)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def solve_exact(rows: List[Sequence[Fraction]], rhs: List[Fraction]):
    """Solve rows . x = rhs exactly.

    Returns (solution, None) for some solution, or (None, certificate):
    the certificate y satisfies y.rows = 0 and y.rhs != 0.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [list(rows[i]) + [Q(0)] * m + [rhs[i]] for i in range(m)]
    for i in range(m):
        aug[i][n + i] = Q(1)
    piv_rows = []
    r = 0
    for c in range(n):
        p = None
        for i in range(r, m):
            if aug[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_rows.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(m):
        if all(aug[i][c] == 0 for c in range(n)) and aug[i][-1] != 0:
            cert = [aug[i][n + j] / aug[i][-1] for j in range(m)]
            return None, tuple(cert)
    x = [Q(0)] * n
    for i, c in piv_rows:
        x[c] = aug[i][-1]
    return tuple(x), None


def nullspace(rows: List[Sequence[Fraction]], n: int):
    """Basis of {x : rows . x = 0} for vectors of length n."""
    m = len(rows)
    aug = [list(r) for r in rows]
    piv = []
    r = 0
    for c in range(n):
        p = None
        for i in range(r, m):
            if aug[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    basis = []
    piv_set = set(piv)
    for c in range(n):
        if c in piv_set:
            continue
        v = [Q(0)] * n
        v[c] = Q(1)
        for i, pc in enumerate(piv):
            v[pc] = -aug[i][c]
        basis.append(tuple(v))
    return basis


def row_space_projector(vectors: List[Sequence[Fraction]], n: int):
    """Row echelon basis and pivot columns of the span of `vectors`."""
    rows = [list(v) for v in vectors]
    ech = []
    piv = []
    for v in rows:
        v = list(v)
        for pcol, pvec in zip(piv, ech):
            if v[pcol] != 0:
                f = v[pcol]
                v = [a - f * b for a, b in zip(v, pvec)]
        lead = next((c for c in range(n) if v[c] != 0), None)
        if lead is None:
            continue
        v = [a / v[lead] for a in v]
        ech.append(v)
        piv.append(lead)
    order = sorted(range(len(piv)), key=lambda k: piv[k])
    return [tuple(ech[k]) for k in order], [piv[k] for k in order]


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

@dataclass
class FrobAlgebra:
    """Finite-dimensional rational algebra with optional Frobenius data.

    mult[i][j] is the coordinate vector of basis_i . basis_j; `e` is the
    matrix of the copairing sum_ij e[i][j] basis_i (x) basis_j; `lam` the
    functional; `star` an optional involutive anti-automorphism given by
    images of basis vectors.
    """

    name: str
    dim: int
    mult: tuple
    unit: tuple
    lam: Optional[tuple] = None
    e: Optional[tuple] = None
    star: Optional[tuple] = None
    basis_names: Optional[tuple] = None

    # -- arithmetic -----------------------------------------------------

    def mul(self, u, v):
        n = self.dim
        out = [Q(0)] * n
        for i in range(n):
            if u[i] == 0:
                continue
            for j in range(n):
                if v[j] == 0:
                    continue
                c = u[i] * v[j]
                row = self.mult[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] += c * row[k]
        return tuple(out)

    def lam_of(self, v):
        if self.lam is None:
            raise AlgebraError("algebra %s has no functional" % self.name)
        return sum(a * b for a, b in zip(self.lam, v))

    def star_of(self, v):
        if self.star is None:
            raise AlgebraError("algebra %s has no star structure" % self.name)
        n = self.dim
        out = [Q(0)] * n
        for i in range(n):
            if v[i] != 0:
                for k in range(n):
                    out[k] += v[i] * self.star[i][k]
        return tuple(out)

    def e_pairs(self):
        if self.e is None:
            raise AlgebraError("algebra %s has no copairing" % self.name)
        n = self.dim
        pairs = []
        for i in range(n):
            for j in range(n):
                if self.e[i][j] != 0:
                    pairs.append((self.e[i][j], _vec(n, [(i, Q(1))]),
                                  _vec(n, [(j, Q(1))])))
        return pairs

    def basis_vec(self, i):
        return _vec(self.dim, [(i, Q(1))])

    def handle_element(self):
        n = self.dim
        out = [Q(0)] * n
        for c, x, y in self.e_pairs():
            xy = self.mul(x, y)
            for k in range(n):
                out[k] += c * xy[k]
        return tuple(out)

    def label(self, i):
        if self.basis_names:
            return self.basis_names[i]
        return "b%d" % i


# -- reports ----------------------------------------------------------------

@dataclass
class Report:
    checks: List[tuple] = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(n, d) for n, ok, d in self.checks if not ok]

    def __str__(self):
        return "\n".join("%s %s%s" % ("PASS" if ok else "FAIL", n,
                                      (" (%s)" % d) if d and not ok else "")
                         for n, ok, d in self.checks)


def check_algebra(A: FrobAlgebra) -> Report:
    rep = Report()
    n = A.dim
    assoc_ok, witness = True, ""
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = A.basis_vec(i), A.basis_vec(j), A.basis_vec(k)
                if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
                    assoc_ok, witness = False, "(%d,%d,%d)" % (i, j, k)
                    break
    rep.add("associative", assoc_ok, witness)
    unit_ok = all(A.mul(A.unit, A.basis_vec(i)) == A.basis_vec(i)
                  and A.mul(A.basis_vec(i), A.unit) == A.basis_vec(i)
                  for i in range(n))
    rep.add("unital", unit_ok)
    return rep


def _e_central_defect(A, w):
    """sum (w.x_i)(x)y_i - sum x_i(x)(y_i.w) as an n*n matrix."""
    n = A.dim
    out = [[Q(0)] * n for _ in range(n)]
    for c, x, y in A.e_pairs():
        wx = A.mul(w, x)
        yw = A.mul(y, w)
        for a in range(n):
            for b in range(n):
                out[a][b] += c * (wx[a] * y[b] - x[a] * yw[b])
    return out


def check_frobenius(A: FrobAlgebra) -> Report:
    rep = check_algebra(A)
    n = A.dim
    central_ok, wit = True, ""
    for k in range(n):
        defect = _e_central_defect(A, A.basis_vec(k))
        if any(defect[a][b] != 0 for a in range(n) for b in range(n)):
            central_ok, wit = False, "w=%s" % A.label(k)
            break
    rep.add("e-central", central_ok, wit)
    left = [Q(0)] * n
    right = [Q(0)] * n
    for c, x, y in A.e_pairs():
        lx = A.lam_of(x)
        ly = A.lam_of(y)
        for k in range(n):
            left[k] += c * lx * y[k]
            right[k] += c * x[k] * ly
    rep.add("normalization-left", tuple(left) == A.unit)
    rep.add("normalization-right", tuple(right) == A.unit)
    snake_ok = True
    for k in range(n):
        v = A.basis_vec(k)
        s1 = [Q(0)] * n
        s2 = [Q(0)] * n
        for c, x, y in A.e_pairs():
            # (id (x) b)(e (x) id): v -> sum x_i b(y_i, v)
            b1 = A.lam_of(A.mul(y, v))
            b2 = A.lam_of(A.mul(v, x))
            for t in range(n):
                s1[t] += c * x[t] * b1
                s2[t] += c * y[t] * b2
        if tuple(s1) != v or tuple(s2) != v:
            snake_ok = False
            break
    rep.add("snake", snake_ok)
    return rep


def check_symmetric(A: FrobAlgebra) -> Report:
    rep = check_frobenius(A)
    n = A.dim
    trace_ok, wit = True, ""
    for i in range(n):
        for j in range(n):
            x, y = A.basis_vec(i), A.basis_vec(j)
            if A.lam_of(A.mul(x, y)) != A.lam_of(A.mul(y, x)):
                trace_ok, wit = False, "(%s,%s)" % (A.label(i), A.label(j))
                break
    rep.add("trace-like", trace_ok, wit)
    bicentral_ok = True
    for wi in range(n):
        for zi in range(n):
            w, z = A.basis_vec(wi), A.basis_vec(zi)
            lhs = [[Q(0)] * n for _ in range(n)]
            for c, x, y in A.e_pairs():
                wxz = A.mul(A.mul(w, x), z)
                zyw = A.mul(A.mul(z, y), w)
                for a in range(n):
                    for b in range(n):
                        lhs[a][b] += c * (wxz[a] * y[b] - x[a] * zyw[b])
            if any(lhs[a][b] != 0 for a in range(n) for b in range(n)):
                bicentral_ok = False
                break
    rep.add("e-bicentral", bicentral_ok)
    if A.star is not None:
        inv_ok = all(A.star_of(A.star_of(A.basis_vec(i))) == A.basis_vec(i)
                     for i in range(n))
        anti_ok = all(
            A.star_of(A.mul(A.basis_vec(i), A.basis_vec(j)))
            == A.mul(A.star_of(A.basis_vec(j)), A.star_of(A.basis_vec(i)))
            for i in range(n) for j in range(n))
        rep.add("star-involution", inv_ok)
        rep.add("star-antihom", anti_ok)
    return rep


@dataclass(frozen=True)
class SeparabilityResult:
    separable: bool
    witness: Optional[tuple] = None        # n*n matrix of the idempotent
    certificate: Optional[tuple] = None    # Farkas vector for infeasibility

    def __bool__(self):
        return self.separable


def check_separable(A: FrobAlgebra) -> SeparabilityResult:
    """Solve for a central element z in A(x)A with mu(z) = 1 exactly."""
    n = A.dim
    nn = n * n
    rows, rhs = [], []
    # centrality: for each w_k and coordinate (a,b):
    #   sum_ij z_ij [ (w x_i)_a (x_j)_b - (x_i)_a (x_j w)_b ] = 0
    for k in range(n):
        wk = A.basis_vec(k)
        wrow = [[None] * n for _ in range(n)]
        for i in range(n):
            wrow[i] = A.mul(wk, A.basis_vec(i))
        vrow = [A.mul(A.basis_vec(j), wk) for j in range(n)]
        for a in range(n):
            for b in range(n):
                row = [Q(0)] * nn
                for i in range(n):
                    for j in range(n):
                        coef = wrow[i][a] * (Q(1) if j == b else Q(0))
                        coef -= (Q(1) if i == a else Q(0)) * vrow[j][b]
                        if coef:
                            row[i * n + j] = coef
                if any(row):
                    rows.append(row)
                    rhs.append(Q(0))
    # normalization: sum_ij z_ij (x_i x_j)_a = unit_a
    for a in range(n):
        row = [Q(0)] * nn
        for i in range(n):
            for j in range(n):
                row[i * n + j] = A.mul(A.basis_vec(i), A.basis_vec(j))[a]
        rows.append(row)
        rhs.append(A.unit[a])
    sol, cert = solve_exact(rows, rhs)
    if sol is None:
        return SeparabilityResult(False, None, cert)
    witness = tuple(tuple(sol[i * n + j] for j in range(n)) for i in range(n))
    return SeparabilityResult(True, witness, None)


# ---------------------------------------------------------------------------
# center, cocenter and the circle maps
# ---------------------------------------------------------------------------

def center(A: FrobAlgebra) -> List[tuple]:
    n = A.dim
    rows = []
    for k in range(n):
        wk = A.basis_vec(k)
        for a in range(n):
            row = []
            for i in range(n):
                xi = A.basis_vec(i)
                row.append(A.mul(wk, xi)[a] - A.mul(xi, wk)[a])
            rows.append(row)
    return nullspace(rows, n)


@dataclass
class Cocenter:
    """Basis data of A/[A,A]: representatives and the projection matrix."""

    reps: List[tuple]          # representative vectors in A
    project: List[tuple]       # rows: quotient coords of each basis vector

    @property
    def dim(self):
        return len(self.reps)

    def project_vec(self, v):
        return tuple(sum(r[i] * v[i] for i in range(len(v)))
                     for r in self.project)


def cocenter(A: FrobAlgebra) -> Cocenter:
    n = A.dim
    comms = []
    for i in range(n):
        for j in range(n):
            x, y = A.basis_vec(i), A.basis_vec(j)
            c = tuple(a - b for a, b in zip(A.mul(x, y), A.mul(y, x)))
            if any(c):
                comms.append(c)
    ech, piv = row_space_projector(comms, n)
    free = [c for c in range(n) if c not in piv]
    reps = [_vec(n, [(c, Q(1))]) for c in free]
    # projection: subtract the echelon rows at pivot coordinates
    proj_rows = []
    for fpos, c in enumerate(free):
        row = [Q(0)] * n
        row[c] = Q(1)
        proj_rows.append(row)
    # express each basis vector: e_k = sum (ech corrections) + free part
    # compute quotient coordinates by reducing e_k modulo the row space
    project = [[Q(0)] * n for _ in range(len(free))]
    for k in range(n):
        v = [Q(0)] * n
        v[k] = Q(1)
        for pcol, pvec in zip(piv, ech):
            if v[pcol] != 0:
                f = v[pcol]
                v = [a - f * b for a, b in zip(v, pvec)]
        for fpos, c in enumerate(free):
            project[fpos][k] = v[c]
    return Cocenter(reps, [tuple(r) for r in project])


@dataclass
class CircleMaps:
    """u: A/[A,A] -> z(A) and v: z(A) -> A/[A,A], as exact matrices."""

    center_basis: List[tuple]
    cocenter: Cocenter
    u: List[tuple]     # columns: images of cocenter reps in center coords
    v: List[tuple]     # columns: images of center basis in cocenter coords
    mutually_inverse: bool


def _solve_h_inverse(A):
    H = A.handle_element()
    n = A.dim
    rows = [[A.mul(A.basis_vec(j), H)[a] for j in range(n)] for a in range(n)]
    sol, _ = solve_exact(rows, list(A.unit))
    if sol is None:
        return None
    # verify (H may be a zero divisor even when the system is solvable)
    if A.mul(sol, H) != A.unit or A.mul(H, sol) != A.unit:
        return None
    return sol


def circle_maps(A: FrobAlgebra) -> CircleMaps:
    zb = center(A)
    cc = cocenter(A)
    n = A.dim

    def u_raw(x):
        out = [Q(0)] * n
        for c, xi, yi in A.e_pairs():
            t = A.mul(A.mul(xi, x), yi)
            for k in range(n):
                out[k] += c * t[k]
        return tuple(out)

    # u on cocenter representatives, in center coordinates
    u_cols = []
    for rep in cc.reps:
        img = u_raw(rep)
        rows = [[zb[j][a] for j in range(len(zb))] for a in range(n)]
        sol, cert = solve_exact(rows, list(img))
        if sol is None:
            raise AlgebraError("u image left the center")
        u_cols.append(tuple(sol))
    hinv = _solve_h_inverse(A)
    v_cols = []
    for c in zb:
        w = A.mul(hinv, c) if hinv is not None else c
        v_cols.append(cc.project_vec(w))
    # check mutual inversion
    dim_c, dim_v = len(zb), cc.dim
    inverse = (dim_c == dim_v)
    if inverse:
        for i in range(dim_v):
            acc = [Q(0)] * dim_v
            for j in range(dim_c):
                for k in range(dim_v):
                    acc[k] += u_cols[i][j] * v_cols[j][k]
            if tuple(acc) != tuple(Q(1) if k == i else Q(0)
                                   for k in range(dim_v)):
                inverse = False
                break
    if inverse:
        for i in range(dim_c):
            acc = [Q(0)] * dim_c
            for j in range(dim_v):
                for k in range(dim_c):
                    acc[k] += v_cols[i][j] * u_cols[j][k]
            if tuple(acc) != tuple(Q(1) if k == i else Q(0)
                                   for k in range(dim_c)):
                inverse = False
                break
    return CircleMaps(zb, cc, u_cols, v_cols, inverse)


def closed_value(A: FrobAlgebra, genus: int) -> Fraction:
    """lambda(H^genus): the closed surface oracle."""
    H = A.handle_element()
    acc = A.unit
    for _ in range(genus):
        acc = A.mul(acc, H)
    return A.lam_of(acc)


# ---------------------------------------------------------------------------
# evaluation of two-cell terms
# ---------------------------------------------------------------------------

@dataclass
class Assignment:
    algebra: FrobAlgebra
    presentation: Presentation
    cusp_factor: tuple = None

    def tag(self, name):
        return self.presentation.two_gen_tags.get(name)


def standard_assignment(A: FrobAlgebra, p: Presentation) -> Assignment:
    """The generator assignment: unit/functional disks, copairing saddle.

    Requires symmetric Frobenius data; the unoriented presentation also
    requires an involutive star anti-automorphism for its crossing cells.
    Cusp cells evaluate to multiplication by the trace of the best adjoint
    witness available: one for separable algebras (where a normalized
    central witness exists), the handle element otherwise, so that the
    cusp inversion relations hold exactly when the algebra is separable.
    """
    rep = check_symmetric(A)
    if not rep.ok:
        raise AlgebraError("algebra %s is not symmetric Frobenius:\n%s"
                           % (A.name, rep))
    if any(t == "sym" for t in p.two_gen_tags.values()) and A.star is None:
        raise AlgebraError(
            "presentation %s needs a star structure on %s" % (p.name, A.name))
    sep = check_separable(A)
    factor = A.unit if sep.separable else A.handle_element()
    return Assignment(A, p, cusp_factor=factor)


@dataclass
class TwoCellValue:
    """Exact matrix between the boundary tensor spaces of a term.

    Rows index the target space basis, columns the source space basis;
    each space is a tensor power of the algebra, one factor per connected
    component of the corresponding boundary 1-manifold.
    """

    source_components: int
    target_components: int
    dim: int
    matrix: tuple

    @property
    def is_scalar(self):
        return self.source_components == 0 and self.target_components == 0

    @property
    def scalar(self):
        return self.matrix[0][0]

    def __eq__(self, other):
        return (isinstance(other, TwoCellValue)
                and self.source_components == other.source_components
                and self.target_components == other.target_components
                and self.matrix == other.matrix)

    def render(self):
        if self.is_scalar:
            return str(self.scalar)
        return "\n".join(" ".join(str(x) for x in row) for row in self.matrix)


def _comp_order(state):
    """Components of the current diagram in sentence-intrinsic order.

    Ordered by first boundary-port position, then by the leftmost leaf of
    the sentence tree touching the component; identical for any two movies
    ending at the same sentence.
    """
    from ._diagram import _leaf_nodes
    diagram = state.diagram
    comps = diagram.components()
    port_pos = {}
    for pos, end in enumerate(list(state.root.src_ports)
                              + list(state.root.tgt_ports)):
        if end is not None:
            port_pos.setdefault(end[0], pos)
    leaf_pos = {}
    for i, node in enumerate(_leaf_nodes(state.root)):
        for k, a in enumerate(node.arc_ids):
            leaf_pos[a] = (i, k)
    def key(comp):
        ppos = min((port_pos[a] for a in comp if a in port_pos),
                   default=10 ** 9)
        lpos = min(leaf_pos.get(a, (10 ** 9, 0)) for a in comp)
        return (ppos, lpos)
    return sorted(comps, key=key)


class _EvalListener(MovieListener):
    def __init__(self, assignment, initial_values):
        self.A = assignment.algebra
        self.asg = assignment
        self.initial = initial_values
        self.configs = None

    def begin(self, state):
        order = _comp_order(state)
        vals = {}
        for comp, v in zip(order, self.initial):
            vals[comp] = v
        if len(order) != len(self.initial):
            raise AlgebraError("source component mismatch")
        self.configs = [(Q(1), vals)]

    # -- events ---------------------------------------------------------

    def event(self, state, ev, before_comps):
        cell = ev.cell
        name = cell.name if isinstance(cell, tc.Gen2) else None
        tag = self.asg.tag(name) if name else None
        after_comps = state.diagram.components()
        if tag == "cap":
            new_comp = self._comp_of(after_comps, ev.new_arcs[0])
            if set(new_comp) != set(ev.new_arcs):
                raise AlgebraError("birth did not create an isolated circle")
            self.configs = [(c, {**vals, new_comp: self.A.unit})
                            for c, vals in self.configs]
            return
        if tag == "cup":
            old_comp = self._comp_of(before_comps, ev.old_arcs[0])
            if set(old_comp) != set(ev.old_arcs):
                raise AlgebraError("death did not consume an isolated circle")
            out = []
            for c, vals in self.configs:
                v = vals[old_comp]
                vals = {k: w for k, w in vals.items() if k != old_comp}
                out.append((c * self.A.lam_of(v), vals))
            self.configs = out
            return
        if tag in ("split", "merge"):
            self._saddle(tag, state, ev, before_comps, after_comps)
            return
        # structural cells, cusp cells and crossing cells reroute strands
        mapping = transfer_components(before_comps, after_comps, ev)
        out = []
        for c, vals in self.configs:
            out.append((c, {mapping.get(k, k): v for k, v in vals.items()}))
        self.configs = out
        if tag == "cusp":
            touched = self._comp_of(before_comps, ev.old_arcs[0]) \
                if ev.old_arcs else None
            target = (mapping[touched] if touched is not None
                      else self._comp_of(after_comps, ev.new_arcs[0]))
            f = self.asg.cusp_factor
            self.configs = [
                (c, {**vals, target: self.A.mul(vals[target], f)})
                for c, vals in self.configs]

    def _comp_of(self, comps, arc):
        for comp in comps:
            if arc in comp:
                return comp
        raise AlgebraError("arc missing from components")

    def _saddle(self, tag, state, ev, before_comps, after_comps):
        A = self.A
        if tag == "split":
            # source I_{pt pt}: two strands; target coev o ev: cup then cap
            o0, o1 = ev.old_arcs[0], ev.old_arcs[1]
            cup_arc, cap_arc = ev.new_arcs[0], ev.new_arcs[1]
        else:
            # source coev o ev: arcs [ev(cup-shaped), coev(cap-shaped)]
            o0, o1 = ev.old_arcs[0], ev.old_arcs[1]
            cup_arc, cap_arc = ev.new_arcs[0], ev.new_arcs[1]
        b0 = self._comp_of(before_comps, o0)
        b1 = self._comp_of(before_comps, o1)
        a0 = self._comp_of(after_comps, cup_arc)
        a1 = self._comp_of(after_comps, cap_arc)
        out = []
        if b0 != b1 and a0 != a1:
            # open rerouting: two strands re-paired without fusing; the
            # copairing is threaded between the halves
            for c, vals in self.configs:
                u, v = vals[b0], vals[b1]
                base = {k: w for k, w in vals.items() if k not in (b0, b1)}
                for ce, x, y in A.e_pairs():
                    nv = dict(base)
                    nv[a0] = A.mul(u, x)
                    nv[a1] = A.mul(y, v)
                    out.append((c * ce, nv))
        elif b0 != b1:
            # two components fuse into one
            if tag == "merge":
                for c, vals in self.configs:
                    u, v = vals[b0], vals[b1]
                    vals = {k: w for k, w in vals.items()
                            if k not in (b0, b1)}
                    vals[a0] = A.mul(u, v)
                    out.append((c, vals))
            else:
                for c, vals in self.configs:
                    u, v = vals[b0], vals[b1]
                    base = {k: w for k, w in vals.items()
                            if k not in (b0, b1)}
                    for ce, x, y in A.e_pairs():
                        nv = dict(base)
                        nv[a0] = A.mul(A.mul(A.mul(u, x), v), y)
                        out.append((c * ce, nv))
        elif a0 != a1:
            # one component splits in two
            for c, vals in self.configs:
                v = vals[b0]
                base = {k: w for k, w in vals.items() if k != b0}
                for ce, x, y in A.e_pairs():
                    nv = dict(base)
                    nv[a0] = A.mul(v, x)
                    nv[a1] = y
                    out.append((c * ce, nv))
        else:
            # non-orientable surgery: same component before and after
            if A.star is None:
                raise AlgebraError(
                    "non-orientable saddle needs a star structure")
            for c, vals in self.configs:
                v = vals[b0]
                base = {k: w for k, w in vals.items() if k != b0}
                if tag == "merge":
                    nv = dict(base)
                    nv[a0] = A.star_of(v)
                    out.append((c, nv))
                else:
                    for ce, x, y in A.e_pairs():
                        nv = dict(base)
                        nv[a0] = A.mul(A.mul(x, A.star_of(v)), y)
                        out.append((c * ce, nv))
        self.configs = out


def evaluate(term: tc.TwoCellTerm, assignment: Assignment) -> TwoCellValue:
    """Exact linear map of a two-cell term under a generator assignment."""
    p = assignment.presentation
    A = assignment.algebra
    report = tc.validate(term, p.data)
    if not report.ok:
        raise AlgebraError("invalid term:\n%s" % report)
    src = tc.two_cell_source(term, p.data)
    probe = MovieState(src, p.arc_patterns)
    src_comps = _comp_order(probe)
    k = len(src_comps)
    n = A.dim
    ncols = n ** k
    columns = []
    m = None
    for col in range(ncols):
        idx = []
        rem = col
        for _ in range(k):
            idx.append(rem % n)
            rem //= n
        idx.reverse()
        init = [A.basis_vec(i) for i in idx]
        listener = _EvalListener(assignment, init)
        state = run_movie(term, p.arc_patterns, listener, p.data)
        tgt_comps = _comp_order(state)
        m = len(tgt_comps)
        nrows = n ** m
        colvec = [Q(0)] * nrows
        for c, vals in listener.configs:
            if c == 0:
                continue
            # expand the pure tensor over the basis
            terms = [(c, 0)]
            for comp in tgt_comps:
                v = vals[comp]
                nxt = []
                for coeff, pos in terms:
                    for i in range(n):
                        if v[i] != 0:
                            nxt.append((coeff * v[i], pos * n + i))
                terms = nxt
            for coeff, pos in terms:
                colvec[pos] += coeff
        columns.append(colvec)
    nrows = n ** (m if m is not None else 0)
    matrix = tuple(tuple(columns[c][r] for c in range(ncols))
                   for r in range(nrows))
    return TwoCellValue(k, m if m is not None else 0, n, matrix)


@dataclass
class VerifyReport:
    results: List[tuple] = field(default_factory=list)

    @property
    def ok(self):
        return all(ok for _, ok in self.results)

    def failures(self):
        return [n for n, ok in self.results if not ok]

    def __str__(self):
        return "\n".join("%s %s" % ("PASS" if ok else "FAIL", n)
                         for n, ok in self.results)


def verify_presentation(A: FrobAlgebra, p: Presentation) -> VerifyReport:
    """Exact matrix equality of both sides of every relation."""
    asg = standard_assignment(A, p)
    rep = VerifyReport()
    for rel in p.relations:
        lv = evaluate(rel.lhs, asg)
        rv = evaluate(rel.rhs, asg)
        rep.results.append((rel.name, lv == rv))
    return rep


# ---------------------------------------------------------------------------
# built-in algebras and the algebra file format
# ---------------------------------------------------------------------------

def _dense(n, entries):
    m = [[Q(0)] * n for _ in range(n)]
    for (i, j), c in entries.items():
        m[i][j] = Q(c)
    return tuple(tuple(r) for r in m)


def algebra_q() -> FrobAlgebra:
    return FrobAlgebra(
        name="Q", dim=1,
        mult=((( Q(1),),),),
        unit=(Q(1),), lam=(Q(1),), e=((Q(1),),), star=((Q(1),),),
        basis_names=("1",))


def algebra_qq() -> FrobAlgebra:
    """Q x Q with coordinatewise product, lam = sum of coordinates."""
    n = 2
    mult = tuple(tuple(_vec(n, [(i, Q(1))]) if i == j else _vec(n)
                       for j in range(n)) for i in range(n))
    return FrobAlgebra(
        name="QxQ", dim=2, mult=mult, unit=(Q(1), Q(1)),
        lam=(Q(1), Q(1)), e=_dense(2, {(0, 0): 1, (1, 1): 1}),
        star=((Q(1), Q(0)), (Q(0), Q(1))),
        basis_names=("u1", "u2"))


def algebra_m2q() -> FrobAlgebra:
    """2x2 matrices with the trace form; basis E11, E12, E21, E22."""
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    n = 4
    mult = [[None] * n for _ in range(n)]
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                mult[i][j] = _vec(n, [(idx[(a, d)], Q(1))])
            else:
                mult[i][j] = _vec(n)
    e = {}
    for (a, b), i in idx.items():
        e[(i, idx[(b, a)])] = 1
    star = [[Q(0)] * n for _ in range(n)]
    for (a, b), i in idx.items():
        star[i][idx[(b, a)]] = Q(1)   # transpose
    return FrobAlgebra(
        name="M2Q", dim=4, mult=tuple(tuple(r) for r in mult),
        unit=_vec(4, [(0, Q(1)), (3, Q(1))]),
        lam=(Q(1), Q(0), Q(0), Q(1)),
        e=_dense(4, e), star=tuple(tuple(r) for r in star),
        basis_names=("E11", "E12", "E21", "E22"))


def algebra_qz2() -> FrobAlgebra:
    """Group algebra Q[Z/2] = Q[s]/(s^2-1) with lam(a+bs) = a."""
    n = 2
    mult = (
        (_vec(n, [(0, Q(1))]), _vec(n, [(1, Q(1))])),
        (_vec(n, [(1, Q(1))]), _vec(n, [(0, Q(1))])),
    )
    return FrobAlgebra(
        name="QZ2", dim=2, mult=mult, unit=(Q(1), Q(0)),
        lam=(Q(1), Q(0)), e=_dense(2, {(0, 0): 1, (1, 1): 1}),
        star=((Q(1), Q(0)), (Q(0), Q(1))),
        basis_names=("1", "s"))


def algebra_qx2() -> FrobAlgebra:
    """Q[x]/(x^2) with lam(a+bx) = b: symmetric Frobenius, not separable."""
    n = 2
    mult = (
        (_vec(n, [(0, Q(1))]), _vec(n, [(1, Q(1))])),
        (_vec(n, [(1, Q(1))]), _vec(n)),
    )
    return FrobAlgebra(
        name="Qx2", dim=2, mult=mult, unit=(Q(1), Q(0)),
        lam=(Q(0), Q(1)), e=_dense(2, {(0, 1): 1, (1, 0): 1}),
        star=((Q(1), Q(0)), (Q(0), Q(1))),
        basis_names=("1", "x"))


BUILTIN_ALGEBRAS = {
    "Q": algebra_q,
    "QxQ": algebra_qq,
    "M2Q": algebra_m2q,
    "QZ2": algebra_qz2,
    "Qx2": algebra_qx2,
}


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def parse_algebra_file(text: str, name: str = "algebra") -> FrobAlgebra:
    """Parse the plain-text algebra format.

    Lines (1-based indices)::

        dim n
        mult i j -> k:q k:q ...
        unit k:q ...
        lambda k:q ...
        e i,j:q ...
        star i -> k:q ...

    Unlisted structure constants are zero.
    """
    dim = None
    mult = None
    unit = None
    lam = None
    e = None
    star = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key != "dim" and dim is None:
                raise ValueError("dim must come first")
            if key == "dim":
                dim = int(parts[1])
                mult = [[_vec(dim) for _ in range(dim)] for _ in range(dim)]
            elif key == "mult":
                i, j = int(parts[1]) - 1, int(parts[2]) - 1
                if parts[3] != "->":
                    raise ValueError("expected ->")
                entries = []
                for tok in parts[4:]:
                    k, q = tok.split(":")
                    entries.append((int(k) - 1, parse_rational(q)))
                mult[i][j] = _vec(dim, entries)
            elif key == "unit":
                entries = []
                for tok in parts[1:]:
                    k, q = tok.split(":")
                    entries.append((int(k) - 1, parse_rational(q)))
                unit = _vec(dim, entries)
            elif key == "lambda":
                entries = []
                for tok in parts[1:]:
                    k, q = tok.split(":")
                    entries.append((int(k) - 1, parse_rational(q)))
                lam = _vec(dim, entries)
            elif key == "e":
                e = [[Q(0)] * dim for _ in range(dim)]
                for tok in parts[1:]:
                    ij, q = tok.split(":")
                    i, j = ij.split(",")
                    e[int(i) - 1][int(j) - 1] = parse_rational(q)
                e = tuple(tuple(r) for r in e)
            elif key == "star":
                if star is None:
                    star = [[Q(0)] * dim for _ in range(dim)]
                i = int(parts[1]) - 1
                if parts[2] != "->":
                    raise ValueError("expected ->")
                for tok in parts[3:]:
                    k, q = tok.split(":")
                    star[i][int(k) - 1] = parse_rational(q)
            else:
                raise ValueError("unknown directive %r" % key)
        except (IndexError, ValueError) as exc:
            raise AlgebraError("line %d: %s" % (lineno, exc))
    if dim is None or unit is None:
        raise AlgebraError("missing dim or unit")
    return FrobAlgebra(
        name=name, dim=dim,
        mult=tuple(tuple(row) for row in mult),
        unit=unit, lam=lam, e=e,
        star=tuple(tuple(r) for r in star) if star is not None else None)


def render_algebra_file(A: FrobAlgebra) -> str:
    lines = ["dim %d" % A.dim]
    for i in range(A.dim):
        for j in range(A.dim):
            row = A.mult[i][j]
            ent = ["%d:%s" % (k + 1, row[k]) for k in range(A.dim) if row[k]]
            if ent:
                lines.append("mult %d %d -> %s" % (i + 1, j + 1, " ".join(ent)))
    lines.append("unit %s" % " ".join(
        "%d:%s" % (k + 1, A.unit[k]) for k in range(A.dim) if A.unit[k]))
    if A.lam is not None:
        lines.append("lambda %s" % " ".join(
            "%d:%s" % (k + 1, A.lam[k]) for k in range(A.dim) if A.lam[k]))
    if A.e is not None:
        ent = ["%d,%d:%s" % (i + 1, j + 1, A.e[i][j])
               for i in range(A.dim) for j in range(A.dim) if A.e[i][j]]
        lines.append("e %s" % " ".join(ent))
    if A.star is not None:
        for i in range(A.dim):
            ent = ["%d:%s" % (k + 1, A.star[i][k])
                   for k in range(A.dim) if A.star[i][k]]
            lines.append("star %d -> %s" % (i + 1, " ".join(ent)))
    return "\n".join(lines) + "\n"
