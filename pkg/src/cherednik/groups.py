"""Finite reflection groups: element enumeration, reflections with roots and
coroots, hyperplane orbits, shipped irreducible representations, coinvariant
algebras, and the fake-degree labels used to name characters."""

from __future__ import annotations

import os
from fractions import Fraction

from .linalg import ExactMatrix
from .multipoly import MultiPoly, buchberger, normal_form, standard_monomials
from .scalars import QQ, FieldError, PolyRing, Scalar, cyclotomic_field, \
    parse_scalar


class GroupDataError(Exception):
    pass


# -- small dense matrix helpers on tuples of tuples of Scalars --------------

def mat_mul(spec, a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    zero = spec.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    s = s + a[i][t] * b[t][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_identity(spec, n):
    one, zero = spec.one(), spec.zero()
    return tuple(tuple(one if i == j else zero for j in range(n))
                 for i in range(n))


def mat_inv(spec, a):
    n = len(a)
    m = ExactMatrix(spec, n, 2 * n)
    for i in range(n):
        for j in range(n):
            if not a[i][j].is_zero():
                m.entries[(i, j)] = a[i][j]
        m.entries[(i, n + i)] = spec.one()
    r, pivots = m.rref()
    if pivots != list(range(n)):
        raise FieldError("matrix is singular")
    return tuple(tuple(r[(i, n + j)] for j in range(n)) for i in range(n))


def mat_transpose(a):
    return tuple(zip(*a))


def mat_sub_identity(spec, a):
    """id - a"""
    n = len(a)
    one = spec.one()
    return tuple(tuple((one - a[i][j]) if i == j else -a[i][j]
                       for j in range(n)) for i in range(n))


def mat_det(spec, a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    m = ExactMatrix(spec, n, n,
                    {(i, j): a[i][j] for i in range(n) for j in range(n)})
    r, pivots = m.rref()
    if len(pivots) < n:
        return spec.zero()
    # rref loses the determinant; expand instead for the (rare) n > 3 case
    det = spec.zero()
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in a[1:])
        t = a[0][j] * mat_det(spec, minor)
        det = det + t if j % 2 == 0 else det - t
    return det


def _normalize_covector(row):
    """Scale so the first nonzero coordinate is one (canonical key)."""
    for v in row:
        if not v.is_zero():
            inv = v.spec.one() / v
            return tuple(x * inv for x in row)
    raise FieldError("zero covector")


class Reflection:
    """A group element with codimension-one fixed space."""

    __slots__ = ("element", "matrix", "root", "coroot", "eps", "det",
                 "hyperplane", "orbit", "triple", "conj_class", "refl_class",
                 "_pair_denominator")

    def __init__(self, element, matrix, spec):
        self.element = element
        self.matrix = matrix
        diff = mat_sub_identity(spec, matrix)
        n = len(matrix)
        root = None
        for j in range(n):
            col = tuple(diff[i][j] for i in range(n))
            if any(not v.is_zero() for v in col):
                root = col
                break
        coroot = None
        for i in range(n):
            row = diff[i]
            if any(not v.is_zero() for v in row):
                coroot = row
                break
        self.root = root          # element of V (image of id - s)
        self.coroot = coroot      # covector cutting out the fixed hyperplane
        denom = sum((c * r for c, r in zip(coroot, root)), spec.zero())
        if denom.is_zero():
            raise GroupDataError(
                "non-diagonalizable reflection: root pairs to zero with its "
                "coroot")
        self._pair_denominator = denom
        # nontrivial eigenvalue: s(root) = eps * root
        img = tuple(sum((matrix[i][j] * root[j] for j in range(n)),
                        spec.zero()) for i in range(n))
        for i in range(n):
            if not root[i].is_zero():
                self.eps = img[i] / root[i]
                break
        self.det = mat_det(spec, matrix)
        self.hyperplane = None
        self.orbit = None
        self.triple = None
        self.conj_class = None
        self.refl_class = None

    def pairing(self, i, j):
        """(y_i, x_j)_s for basis vectors."""
        return self.coroot[i] * self.root[j] / self._pair_denominator


def cartan_pairing(y, x, s: Reflection) -> Scalar:
    """(y, x)_s = <y, coroot><root, x> / <root, coroot> for y in V, x in V*
    given by coordinate tuples."""
    spec = s.eps.spec
    a = sum((c * v for c, v in zip(s.coroot, y)), spec.zero())
    b = sum((r * v for r, v in zip(s.root, x)), spec.zero())
    return a * b / s._pair_denominator


class HyperplaneOrbit:
    __slots__ = ("index", "e", "hyperplanes")

    def __init__(self, index, e, hyperplanes):
        self.index = index
        self.e = e
        self.hyperplanes = hyperplanes


class Irrep:
    """Shipped irreducible representation; matrices indexed by generator."""

    __slots__ = ("group", "gen_matrices", "dim", "label", "b_invariant",
                 "fake_degree", "_element_matrices")

    def __init__(self, group, gen_matrices, label=None):
        self.group = group
        self.gen_matrices = gen_matrices
        self.dim = len(gen_matrices[0])
        self.label = label
        self.b_invariant = None
        self.fake_degree = None
        self._element_matrices = None

    def matrix(self, element_index):
        if self._element_matrices is None:
            self._build()
        return self._element_matrices[element_index]

    def _build(self):
        G = self.group
        spec = G.spec
        mats = [None] * len(G.elements)
        mats[G.identity] = mat_identity(spec, self.dim)
        for idx in G.bfs_order:
            if mats[idx] is not None:
                continue
            parent, gi = G.parent_edge[idx]
            mats[idx] = mat_mul(spec, mats[parent], self.gen_matrices[gi])
        self._element_matrices = mats

    def character(self):
        """Character value on each conjugacy class."""
        G = self.group
        out = []
        for cls in G.conj_classes:
            m = self.matrix(cls[0])
            tr = G.spec.zero()
            for i in range(self.dim):
                tr = tr + m[i][i]
            out.append(tr)
        return out

    def conjugated(self, basis):
        """Irrep in a new basis; basis columns are the new basis vectors."""
        spec = self.group.spec
        binv = mat_inv(spec, basis)
        mats = [mat_mul(spec, binv, mat_mul(spec, m, basis))
                for m in self.gen_matrices]
        return Irrep(self.group, mats, self.label)


class CoinvariantAlgebra:
    """K[V]_G (side 'V', variables x) or K[V*]_G (side 'V*', variables y)."""

    def __init__(self, group, side):
        self.group = group
        self.side = side
        self.spec = group.spec
        self.n = group.n
        invs = group.fundamental_invariants(side)
        self.invariants = invs
        self.groebner = buchberger(invs, "lex")
        self.monomials = standard_monomials(self.groebner)
        self.index = {e: i for i, e in enumerate(self.monomials)}
        self.dim = len(self.monomials)
        self.degrees = [sum(e) for e in self.monomials]
        # images of the variables must be standard monomials
        for i in range(self.n):
            e = tuple(1 if j == i else 0 for j in range(self.n))
            if e not in self.index:
                raise GroupDataError(
                    "a variable is not a standard monomial of the "
                    "coinvariant algebra")
        self._nf_cache = {}
        self._action_cache = {}

    def nf(self, poly: MultiPoly):
        return normal_form(poly, self.groebner)

    def nf_coeffs(self, poly: MultiPoly):
        """Coefficient dict monomial-index -> Scalar of the normal form."""
        nf = self.nf(poly)
        return {self.index[e]: c for e, c in nf.terms.items()}

    def multiply(self, e1, e2):
        """Structure constants: product of two basis monomials."""
        key = (e1, e2)
        hit = self._nf_cache.get(key)
        if hit is None:
            p = MultiPoly(self.spec, self.n,
                          {tuple(a + b for a, b in zip(e1, e2)):
                           self.spec.one()})
            hit = self.nf_coeffs(p)
            self._nf_cache[key] = hit
        return hit

    def act(self, element_index, mono):
        """Normal form of g . monomial, as index -> Scalar."""
        key = (element_index, mono)
        hit = self._action_cache.get(key)
        if hit is None:
            imgs = self.group.variable_images(element_index, self.side)
            p = MultiPoly(self.spec, self.n, {mono: self.spec.one()})
            hit = self.nf_coeffs(p.substitute(imgs))
            self._action_cache[key] = hit
        return hit

    def structure_constants(self):
        for e1 in self.monomials:
            for e2 in self.monomials:
                yield from self.multiply(e1, e2).values()


class ReflectionGroup:
    def __init__(self, spec, gen_matrices, name="G", irrep_data=None,
                 param_types=None, invariants_text=None):
        self.spec = spec
        self.name = name
        self.gens = [tuple(tuple(v for v in row) for row in m)
                     for m in gen_matrices]
        self.n = len(self.gens[0])
        self._enumerate()
        self._conjugacy_classes()
        self._find_reflections()
        self.param_types = param_types or {}
        self._invariants_text = invariants_text or {}
        self._invariants = {}
        self._coinvariants = {}
        self._dual_mats = None
        self.irreps = []
        if irrep_data:
            for label, mats in irrep_data:
                self.irreps.append(Irrep(self, mats, label))
            self._validate_irreps()
            self._diagonalize_irreps()
            self._assign_labels()

    # -- enumeration ---------------------------------------------------------
    def _enumerate(self, limit=20000):
        spec = self.spec
        ident = mat_identity(spec, self.n)
        self.elements = [ident]
        index = {ident: 0}
        self.parent_edge = {0: None}
        self.bfs_order = [0]
        queue = [0]
        while queue:
            i = queue.pop(0)
            for gi, g in enumerate(self.gens):
                m = mat_mul(spec, self.elements[i], g)
                j = index.get(m)
                if j is None:
                    j = len(self.elements)
                    if j >= limit:
                        raise GroupDataError("group enumeration exceeded "
                                             f"{limit} elements")
                    self.elements.append(m)
                    index[m] = j
                    self.parent_edge[j] = (i, gi)
                    self.bfs_order.append(j)
                    queue.append(j)
        self.element_index = index
        self.order = len(self.elements)
        self.identity = 0
        self.mult = [[index[mat_mul(spec, a, b)] for b in self.elements]
                     for a in self.elements]
        self.inverse = [None] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.mult[i][j] == 0:
                    self.inverse[i] = j
                    break

    def _conjugacy_classes(self):
        seen = [False] * self.order
        self.conj_classes = []
        self.class_of = [None] * self.order
        for i in range(self.order):
            if seen[i]:
                continue
            cls = set()
            for g in range(self.order):
                h = self.mult[self.mult[g][i]][self.inverse[g]]
                cls.add(h)
            cls = sorted(cls)
            ci = len(self.conj_classes)
            for h in cls:
                seen[h] = True
                self.class_of[h] = ci
            self.conj_classes.append(cls)

    # -- reflections ---------------------------------------------------------
    def _find_reflections(self):
        spec = self.spec
        refs = []
        for i in self.bfs_order:
            if i == self.identity:
                continue
            m = self.elements[i]
            diff = mat_sub_identity(spec, m)
            em = ExactMatrix(spec, self.n, self.n,
                             {(a, b): diff[a][b] for a in range(self.n)
                              for b in range(self.n)})
            if em.rank() == 1:
                refs.append(Reflection(i, m, spec))
        if not refs:
            raise GroupDataError("group has no reflections")

        # hyperplanes keyed by normalized coroot
        hyper_keys = []
        hyper_index = {}
        for r in refs:
            key = _normalize_covector(r.coroot)
            if key not in hyper_index:
                hyper_index[key] = len(hyper_keys)
                hyper_keys.append(key)
            r.hyperplane = hyper_index[key]

        # orbits of hyperplanes under the dual action
        orbit_of = [None] * len(hyper_keys)
        orbits = []
        for h, key in enumerate(hyper_keys):
            if orbit_of[h] is not None:
                continue
            oi = len(orbits)
            members = set()
            for g in range(self.order):
                ginv = self.elements[self.inverse[g]]
                moved = _normalize_covector(
                    tuple(sum((key[a] * ginv[a][b] for a in range(self.n)),
                              self.spec.zero()) for b in range(self.n)))
                hh = hyper_index.get(moved)
                if hh is not None:
                    members.add(hh)
            members = sorted(members, key=lambda x: x)
            for hh in members:
                orbit_of[hh] = oi
            orbits.append(members)

        # orbit order fixed by first appearance of a reflection
        orbit_order = []
        for r in refs:
            oi = orbit_of[r.hyperplane]
            if oi not in orbit_order:
                orbit_order.append(oi)
        remap = {old: new for new, old in enumerate(orbit_order)}

        # nested library: orbit > hyperplane > reflection, in appearance order
        self.reflections = []
        self.hyperplane_orbits = []
        refl_class_order = []
        for new_oi, old_oi in enumerate(orbit_order):
            hyper_in_orbit = []
            for r in refs:
                if orbit_of[r.hyperplane] == old_oi \
                        and r.hyperplane not in hyper_in_orbit:
                    hyper_in_orbit.append(r.hyperplane)
            e_orders = set()
            for jj, h in enumerate(hyper_in_orbit):
                members = [r for r in refs if r.hyperplane == h]
                e_orders.add(len(members) + 1)
                for kk, r in enumerate(members):
                    r.orbit = new_oi
                    r.triple = (new_oi + 1, jj + 1, kk + 1)
                    r.conj_class = self.class_of[r.element]
                    if r.conj_class not in refl_class_order:
                        refl_class_order.append(r.conj_class)
                    r.refl_class = refl_class_order.index(r.conj_class)
                    self.reflections.append(r)
            if len(e_orders) != 1:
                raise GroupDataError("stabilizer order is not constant "
                                     "along a hyperplane orbit")
            self.hyperplane_orbits.append(
                HyperplaneOrbit(new_oi, e_orders.pop(), hyper_in_orbit))
        self.reflection_classes = refl_class_order
        self.num_reflection_classes = len(refl_class_order)

        # the group must be generated by its reflections
        gen_set = {self.identity}
        frontier = [self.identity]
        ref_idx = [r.element for r in self.reflections]
        while frontier:
            nxt = []
            for a in frontier:
                for r in ref_idx:
                    c = self.mult[a][r]
                    if c not in gen_set:
                        gen_set.add(c)
                        nxt.append(c)
            frontier = nxt
        if len(gen_set) != self.order:
            raise GroupDataError("group is not generated by its reflections")

    # -- actions ---------------------------------------------------------------
    def dual_matrix(self, element_index):
        """Action on V* in the dual basis: inverse transpose."""
        if self._dual_mats is None:
            self._dual_mats = [None] * self.order
        m = self._dual_mats[element_index]
        if m is None:
            inv = self.elements[self.inverse[element_index]]
            m = mat_transpose(inv)
            self._dual_mats[element_index] = m
        return m

    def variable_images(self, element_index, side):
        """Images of the coordinate variables under g as MultiPolys.

        side 'V': variables x_i spanning V* (so the dual action applies);
        side 'V*': variables y_i spanning V.
        """
        if side == "V":
            m = self.dual_matrix(element_index)
        else:
            m = self.elements[element_index]
        out = []
        for i in range(self.n):
            terms = {}
            for j in range(self.n):
                c = m[j][i]
                if not c.is_zero():
                    e = tuple(1 if t == j else 0 for t in range(self.n))
                    terms[e] = c
            out.append(MultiPoly(self.spec, self.n, terms))
        return out

    # -- invariant theory --------------------------------------------------------
    def reynolds(self, poly: MultiPoly, side="V") -> MultiPoly:
        total = MultiPoly.zero(self.spec, self.n)
        for g in range(self.order):
            total = total + poly.substitute(self.variable_images(g, side))
        return total.scale(Fraction(1, self.order))

    def fundamental_invariants(self, side="V"):
        if side in self._invariants:
            return self._invariants[side]
        if side in self._invariants_text:
            polys = [self._parse_poly(t) for t in self._invariants_text[side]]
            self._invariants[side] = polys
            return polys
        chosen = []
        degree = 1
        max_degree = 2 * self.order + 2
        while len(chosen) < self.n:
            degree += 1
            if degree > max_degree:
                raise GroupDataError(
                    "failed to find fundamental invariants within the "
                    "degree bound (bad group data?)")
            for mono in _monomials_of_degree(self.n, degree):
                p = MultiPoly(self.spec, self.n, {mono: self.spec.one()})
                inv = self.reynolds(p, side)
                if inv.is_zero():
                    continue
                if _jacobian_independent(chosen + [inv], self.spec, self.n):
                    chosen.append(inv.monic())
                    if len(chosen) == self.n:
                        break
        prod = 1
        for f in chosen:
            prod *= f.total_degree()
        if prod != self.order:
            raise GroupDataError(
                f"fundamental invariant degrees multiply to {prod}, "
                f"expected the group order {self.order}")
        self._invariants[side] = chosen
        return chosen

    def _parse_poly(self, text):
        ring = PolyRing(self.spec, [f"x{i+1}" for i in range(self.n)])
        s = parse_scalar(text, ring)
        terms = {e: Scalar(self.spec, c) for e, c in s.payload}
        return MultiPoly(self.spec, self.n, terms)

    def coinvariant_algebra(self, side="V") -> CoinvariantAlgebra:
        if side not in self._coinvariants:
            self._coinvariants[side] = CoinvariantAlgebra(self, side)
        return self._coinvariants[side]

    # -- characters and labels ---------------------------------------------------
    def _validate_irreps(self):
        spec = self.spec
        for rho in self.irreps:
            # homomorphism property against the multiplication table
            for gi, gmat in enumerate(rho.gen_matrices):
                for h in range(self.order):
                    lhs = mat_mul(spec, rho.matrix(h), gmat)
                    rhs = rho.matrix(self.mult[h][self.element_index[
                        self.gens[gi]]])
                    if lhs != rhs:
                        raise GroupDataError(
                            f"irrep {rho.label}: matrices violate the "
                            "multiplication table")
        # character orthonormality
        chars = [rho.character() for rho in self.irreps]
        sizes = [len(c) for c in self.conj_classes]
        for a, ca in enumerate(chars):
            for b, cb in enumerate(chars):
                s = spec.zero()
                for ci, cls in enumerate(self.conj_classes):
                    rep = cls[0]
                    inv_cls = self.class_of[self.inverse[rep]]
                    s = s + ca[ci] * cb[inv_cls] * sizes[ci]
                expect = self.order if a == b else 0
                if s != spec.scalar(expect):
                    raise GroupDataError(
                        "shipped irreps fail character orthogonality")
        if sum(rho.dim ** 2 for rho in self.irreps) != self.order:
            raise GroupDataError("irrep dimensions do not sum to |G|")

    def _diagonalize_irreps(self):
        """Conjugate each irrep so a diagonal group generator acts
        diagonally (eigenbasis ordered by eigenvalue power, then index)."""
        diag_gen = None
        for gi, g in enumerate(self.gens):
            if all(g[i][j].is_zero() for i in range(self.n)
                   for j in range(self.n) if i != j):
                diag_gen = gi
                break
        if diag_gen is None:
            return
        g_idx = self.element_index[self.gens[diag_gen]]
        m = 1
        cur = g_idx
        while cur != self.identity:
            cur = self.mult[cur][g_idx]
            m += 1
        zeta = None
        # primitive m-th root among the diagonal entries
        candidates = [self.gens[diag_gen][i][i] for i in range(self.n)]
        for c in candidates:
            order = 1
            acc = c
            while not (acc == 1) and order <= m:
                acc = acc * c
                order += 1
            if order == m:
                zeta = c
                break
        if zeta is None and m <= 2:
            zeta = self.spec.scalar(-1) if m == 2 else self.spec.one()
        if zeta is None:
            return
        powers = [self.spec.one()]
        for _ in range(m - 1):
            powers.append(powers[-1] * zeta)

        new_irreps = []
        for rho in self.irreps:
            mat = rho.matrix(g_idx)
            d = rho.dim
            if all(mat[i][j].is_zero() for i in range(d) for j in range(d)
                   if i != j):
                new_irreps.append(rho)
                continue
            cols = []
            for ev in powers:
                em = ExactMatrix(self.spec, d, d,
                                 {(i, j): mat[i][j] - (ev if i == j else 0)
                                  for i in range(d) for j in range(d)})
                ns = em.nullspace()
                for jcol in range(ns.ncols):
                    cols.append(ns.column(jcol))
            if len(cols) != d:
                raise GroupDataError("could not diagonalize an irrep "
                                     "against the diagonal generator")
            basis = tuple(tuple(cols[j].get(i, self.spec.zero())
                                for j in range(d)) for i in range(d))
            new_irreps.append(rho.conjugated(basis))
        self.irreps = new_irreps

    def graded_coinvariant_characters(self):
        """Character of each graded piece of K[V]_G, one row per degree."""
        co = self.coinvariant_algebra("V")
        maxdeg = max(co.degrees)
        by_degree = {}
        for idx, e in enumerate(co.monomials):
            by_degree.setdefault(sum(e), []).append(idx)
        out = []
        for d in range(maxdeg + 1):
            idxs = by_degree.get(d, [])
            row = []
            for cls in self.conj_classes:
                g = cls[0]
                tr = self.spec.zero()
                for i in idxs:
                    tr = tr + co.act(g, co.monomials[i]).get(
                        i, self.spec.zero())
                row.append(tr)
            out.append(row)
        return out

    def fake_degree(self, rho: Irrep):
        """Graded multiplicity of rho in the coinvariant algebra of the
        dual side, as a list of integer coefficients by degree.

        Pairing against chi(g) rather than chi(g^{-1}) computes the
        multiplicities in the coinvariants of V's symmetric algebra, which
        is the convention behind the phi_{d,b} labels this reproduces: it
        puts the reflection representation itself at b = 1."""
        graded = self.graded_coinvariant_characters()
        chi = rho.character()
        sizes = [len(c) for c in self.conj_classes]
        coeffs = []
        for row in graded:
            s = self.spec.zero()
            for ci, cls in enumerate(self.conj_classes):
                s = s + row[ci] * chi[ci] * sizes[ci]
            m = _as_integer(s, self.order)
            coeffs.append(m)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    def _assign_labels(self):
        data = []
        for rho in self.irreps:
            fd = self.fake_degree(rho)
            b = next(i for i, c in enumerate(fd) if c)
            rho.b_invariant = b
            rho.fake_degree = fd
            data.append((rho.dim, b, fd, rho))
        groups = {}
        for dim, b, fd, rho in data:
            groups.setdefault((dim, b), []).append((fd, rho))
        for (dim, b), members in groups.items():
            members.sort(key=lambda t: t[0])
            for tick, (fd, rho) in enumerate(members):
                label = f"phi_{{{dim},{b}}}" + "'" * tick
                if rho.label is None:
                    rho.label = label
                elif rho.label != label:
                    raise GroupDataError(
                        f"stored label {rho.label} disagrees with computed "
                        f"label {label}")

    def irrep_by_label(self, label):
        for rho in self.irreps:
            if rho.label == label:
                return rho
        norm = label.replace("phi_", "").strip("{}").replace("_", ",")
        for rho in self.irreps:
            if rho.label.replace("phi_", "").strip("{}").replace(
                    "_", ",") == norm:
                return rho
        raise GroupDataError(f"no irrep labeled {label}")


def _as_integer(s: Scalar, divisor: int) -> int:
    """Exact value of s / divisor as a Python int (errors otherwise)."""
    v = s / divisor
    payload = v.payload
    spec = v.spec
    if spec.kind == "rationals":
        q = payload
    elif spec.kind == "number-field":
        if any(c != 0 for c in payload[1:]):
            raise GroupDataError("character inner product is not rational")
        q = payload[0]
    else:
        raise GroupDataError("unexpected spec in character arithmetic")
    if q.denominator != 1:
        raise GroupDataError("character inner product is not integral")
    return int(q)


def _monomials_of_degree(n, d):
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def _jacobian_independent(polys, spec, nvars):
    """Algebraic independence via the Jacobian criterion (char 0)."""
    import random as _random
    m = len(polys)
    if m > nvars:
        return False
    partials = [[_partial(p, j) for j in range(nvars)] for p in polys]
    rng = _random.Random(20240901)
    for _ in range(6):
        point = [spec.scalar(rng.randint(-7, 7)) for _ in range(nvars)]
        rows = []
        for prow in partials:
            rows.append([_eval_poly(p, point, spec) for p in prow])
        em = ExactMatrix.from_rows(spec, rows)
        if em.rank() == m:
            return True
    # exact fallback: some m x m minor must be a nonzero polynomial
    import itertools
    for cols in itertools.combinations(range(nvars), m):
        sub = [[partials[i][j] for j in cols] for i in range(m)]
        if not _poly_det(sub, spec, nvars).is_zero():
            return True
    return False


def _partial(p: MultiPoly, j):
    terms = {}
    for e, c in p.terms.items():
        if e[j] == 0:
            continue
        ee = list(e)
        k = ee[j]
        ee[j] -= 1
        ee = tuple(ee)
        add = c * k
        if ee in terms:
            add = terms[ee] + add
        terms[ee] = add
    return MultiPoly(p.spec, p.nvars, terms)


def _eval_poly(p: MultiPoly, point, spec):
    total = spec.zero()
    for e, c in p.terms.items():
        v = c
        for x, k in zip(point, e):
            for _ in range(k):
                v = v * x
        total = total + v
    return total


def _poly_det(mat, spec, nvars):
    m = len(mat)
    if m == 1:
        return mat[0][0]
    out = MultiPoly.zero(spec, nvars)
    for j in range(m):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        t = mat[0][j] * _poly_det(minor, spec, nvars)
        out = out + t if j % 2 == 0 else out - t
    return out


# ---------------------------------------------------------------------------
# group data files

def data_directory():
    env = os.environ.get("CHEREDNIK_GROUP_DB")
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data")


def _parse_field_line(parts):
    if parts[0] == "rationals":
        return QQ
    if parts[0] == "cyclotomic":
        n = int(parts[1])
        name = parts[2] if len(parts) > 2 else None
        return cyclotomic_field(n, name)
    raise GroupDataError(f"unknown field kind {parts[0]!r}")


def load_group_file(path) -> ReflectionGroup:
    """Text grammar (entries use the shared scalar syntax, no spaces inside):

        group <name>
        field rationals | field cyclotomic <n> [genname]
        dim <n>
        generator          -- followed by n rows of n entries
        irrep <label>      -- followed by rows of generator matrices, one
                              'matrix' keyword per generator
        paramtype <name> vars <v1> <v2> ...
        c<i> = <expr>      -- inside a paramtype block
        invariants V | V*  -- optional, one polynomial in x1..xn per line
    """
    with open(path) as fh:
        lines = [ln.rstrip() for ln in fh]
    lines = [ln for ln in lines if ln.strip() and not ln.strip().startswith("#")]
    pos = 0

    def peek():
        return lines[pos] if pos < len(lines) else None

    name = None
    spec = None
    dim = None
    gens = []
    irreps = []
    param_types = {}
    invariants_text = {}

    def read_matrix(nrows):
        nonlocal pos
        rows = []
        for _ in range(nrows):
            entries = lines[pos].split()
            rows.append(tuple(parse_scalar(t, spec) for t in entries))
            pos += 1
        return tuple(rows)

    while pos < len(lines):
        parts = lines[pos].split()
        head = parts[0]
        if head == "group":
            name = parts[1]
            pos += 1
        elif head == "field":
            spec = _parse_field_line(parts[1:])
            pos += 1
        elif head == "dim":
            dim = int(parts[1])
            pos += 1
        elif head == "generator":
            pos += 1
            gens.append(read_matrix(dim))
        elif head == "irrep":
            label = parts[1]
            d = int(parts[2]) if len(parts) > 2 else None
            pos += 1
            mats = []
            for _ in range(len(gens)):
                if lines[pos].split()[0] != "matrix":
                    raise GroupDataError("expected a matrix block")
                rows = int(lines[pos].split()[1]) if len(
                    lines[pos].split()) > 1 else d
                pos += 1
                mats.append(read_matrix(rows))
            irreps.append((label, mats))
        elif head == "paramtype":
            tname = parts[1]
            if parts[2] != "vars":
                raise GroupDataError("paramtype needs a vars list")
            varnames = parts[3:]
            pos += 1
            exprs = {}
            while pos < len(lines) and "=" in lines[pos] \
                    and lines[pos].split()[0].startswith("c"):
                left, right = lines[pos].split("=", 1)
                exprs[int(left.strip()[1:])] = right.strip()
                pos += 1
            param_types[tname] = (tuple(varnames), exprs)
        elif head == "invariants":
            side = parts[1]
            count = int(parts[2])
            pos += 1
            texts = []
            for _ in range(count):
                texts.append(lines[pos].strip())
                pos += 1
            invariants_text[side] = texts
        else:
            raise GroupDataError(f"unknown directive {head!r}")

    return ReflectionGroup(spec, gens, name=name, irrep_data=irreps,
                           param_types=param_types,
                           invariants_text=invariants_text)


_GROUP_CACHE = {}


def load_group(name) -> ReflectionGroup:
    key = (data_directory(), name)
    if key not in _GROUP_CACHE:
        path = os.path.join(data_directory(), f"{name}.grp")
        if not os.path.exists(path):
            raise GroupDataError(f"unknown group {name!r} (no file {path})")
        _GROUP_CACHE[key] = load_group_file(path)
    return _GROUP_CACHE[key]
