"""Concrete modules for the four-generator presentation.

Three realizations are built here:

* finite-dimensional matrix modules -- :func:`make_E` (dimension d+1
  even) and :func:`make_O` (dimension d+1 odd), transcribed column by
  column from their defining basis formulas;
* the infinite-dimensional ladder module with basis m_0, m_1, ... --
  applied lazily to finitely supported vectors by :func:`verma_apply`;
* the Laurent-polynomial realization in one variable z --
  :func:`poly_apply`, together with the basis image map
  :func:`verma_basis_image` that intertwines the two.

Matrices act on column coordinate vectors: the j-th column of a
generator matrix is the coordinate vector of the generator applied to
the j-th basis vector.  Inverse generator matrices are computed by
exact inversion rather than from transcribed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DahaError, ParameterError, TranscriptionError
from .linalg import Matrix, inverse, rank, solve_right
from .params import (
    PARITY_EVEN,
    PARITY_ODD,
    ParamQuadruple,
    seq_phi,
    seq_rho,
)
from .scalar import as_scalar, scalar_pow, scalar_to_str

GEN_NAMES = ("t0", "t1", "t2", "t3")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True)
class Report:
    items: tuple

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def failed(self):
        return [item for item in self.items if not item.passed]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [item.to_json() for item in self.items]}


# ---------------------------------------------------------------------------
# finite-dimensional modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleRep:
    """A finite-dimensional module: four generator matrices, their
    inverses, the parameters used to build it, and a twist counter."""

    dim: int
    t: tuple
    tinv: tuple
    params: ParamQuadruple
    twist: int
    label: str

    def x_matrix(self) -> Matrix:
        return self.t[3] * self.t[0]

    def xinv_matrix(self) -> Matrix:
        return self.tinv[0] * self.tinv[3]

    def y_matrix(self) -> Matrix:
        return self.t[0] * self.t[1]

    def yinv_matrix(self) -> Matrix:
        return self.tinv[1] * self.tinv[0]

    def identity_matrix(self) -> Matrix:
        return Matrix.identity(self.dim, one=self.t[0].entries[0][0] ** 0)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "params": self.params.to_json(),
            "twist": self.twist,
            "t": [m.to_json() for m in self.t],
            "tinv": [m.to_json() for m in self.tinv],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModuleRep":
        t = tuple(Matrix.from_json(m) for m in data["t"])
        tinv = tuple(Matrix.from_json(m) for m in data["tinv"])
        dim = int(data["dim"])
        for m in t + tinv:
            if m.shape != (dim, dim):
                raise DahaError("module JSON has a generator of the wrong shape")
        return cls(
            dim=dim,
            t=t,
            tinv=tinv,
            params=ParamQuadruple.from_json(data["params"]),
            twist=int(data["twist"]) % 4,
            label=data.get("label", ""),
        )


def _columns_to_matrix(dim: int, columns, zero) -> Matrix:
    return Matrix(
        [[columns[j].get(i, zero) for j in range(dim)] for i in range(dim)]
    )


def _finish_module(p: ParamQuadruple, cols_by_gen, label: str) -> ModuleRep:
    dim = p.d + 1
    zero = p.q * 0
    t = tuple(_columns_to_matrix(dim, cols, zero) for cols in cols_by_gen)
    tinv = tuple(inverse(m) for m in t)
    return ModuleRep(dim=dim, t=t, tinv=tinv, params=p, twist=0, label=label)


def make_E(p: ParamQuadruple) -> ModuleRep:
    """The (d+1)-dimensional module of the even-dimensional family."""
    if p.parity != PARITY_EVEN:
        raise ParameterError("make_E needs parity 'even' (d odd, k0^2 = q^{-d-1})")
    q, (k0, k1, k2, k3), d = p.q, p.k, p.d

    t0 = {}
    for j in range(d + 1):
        if j == 0 or j == d:
            t0[j] = {j: k0}
        elif j % 2 == 0:
            c = scalar_pow(q, -j) / k0
            t0[j] = {
                j - 1: c * (1 - scalar_pow(q, j)) * (1 - k0 * k0 * scalar_pow(q, j)),
                j: k0 + 1 / k0 - c,
            }
        else:
            c = scalar_pow(q, -j - 1) / k0
            t0[j] = {j: c, j + 1: -c}

    t1 = {}
    for j in range(d + 1):
        if j == 0:
            t1[j] = {0: k1, 1: 1 / k1}
        elif j % 2 == 0:
            t1[j] = {
                j - 1: -k1 * (1 - scalar_pow(q, j)) * (1 - k0 * k0 * scalar_pow(q, j)),
                j: k1,
                j + 1: 1 / k1,
            }
        else:
            t1[j] = {j: 1 / k1}

    t2 = {}
    for j in range(d + 1):
        if j % 2 == 0:
            c = scalar_pow(q, -j - 1) / (k0 * k1 * k3)
            t2[j] = {j: c, j + 1: -c}
        else:
            a = k0 * k1 * k3 * scalar_pow(q, j)
            t2[j] = {
                j - 1: (a - k2) * (a - 1 / k2) / a,
                j: k2 + 1 / k2 - 1 / a,
            }

    t3 = {}
    for j in range(d + 1):
        if j % 2 == 0:
            t3[j] = {j: k3}
        else:
            a = k0 * k1 * k3 * scalar_pow(q, j)
            col = {j - 1: -(a - k2) * (a - 1 / k2) / k3, j: 1 / k3}
            if j != d:
                col[j + 1] = k3
            t3[j] = col

    label = f"E[q={scalar_to_str(q)}; k={','.join(scalar_to_str(x) for x in p.k)}; d={d}]"
    return _finish_module(p, (t0, t1, t2, t3), label)


def make_O(p: ParamQuadruple) -> ModuleRep:
    """The (d+1)-dimensional module of the odd-dimensional family.

    All index ranges with an empty span are skipped, which makes the
    d = 0 case the four 1x1 matrices (k0), (k1), (k2), (k3).
    """
    if p.parity != PARITY_ODD:
        raise ParameterError(
            "make_O needs parity 'odd' (d even, k0*k1*k2*k3 = q^{-d-1})"
        )
    q, (k0, k1, k2, k3), d = p.q, p.k, p.d

    t0 = {}
    for j in range(d + 1):
        if j == 0:
            t0[j] = {0: k0}
        elif j % 2 == 0:
            c = scalar_pow(q, -j) / k0
            t0[j] = {
                j - 1: c * (1 - scalar_pow(q, j)) * (1 - k0 * k0 * scalar_pow(q, j)),
                j: k0 + 1 / k0 - c,
            }
        else:
            c = scalar_pow(q, -j - 1) / k0
            t0[j] = {j: c, j + 1: -c}

    t1 = {}
    for j in range(d + 1):
        if j == 0:
            t1[j] = {0: k1} if d == 0 else {0: k1, 1: 1 / k1}
        elif j == d:
            t1[j] = {
                d - 1: -k1 * (1 - scalar_pow(q, d)) * (1 - k0 * k0 * scalar_pow(q, d)),
                d: k1,
            }
        elif j % 2 == 0:
            t1[j] = {
                j - 1: -k1 * (1 - scalar_pow(q, j)) * (1 - k0 * k0 * scalar_pow(q, j)),
                j: k1,
                j + 1: 1 / k1,
            }
        else:
            t1[j] = {j: 1 / k1}

    t2 = {}
    for j in range(d + 1):
        if j == d:
            t2[j] = {d: k2}
        elif j % 2 == 0:
            c = k2 * scalar_pow(q, d - j)
            t2[j] = {j: c, j + 1: -c}
        else:
            u = scalar_pow(q, j - d - 1)
            t2[j] = {
                j - 1: -k2 * (1 - u / (k2 * k2)) * (1 - scalar_pow(q, d - j + 1)),
                j: k2 + 1 / k2 - k2 * scalar_pow(q, d - j + 1),
            }

    t3 = {}
    for j in range(d + 1):
        if j % 2 == 0:
            t3[j] = {j: k3}
        else:
            u = scalar_pow(q, j - d - 1)
            t3[j] = {
                j - 1: -(1 - u / (k2 * k2)) * (1 - u) / k3,
                j: 1 / k3,
                j + 1: k3,
            }

    label = f"O[q={scalar_to_str(q)}; k={','.join(scalar_to_str(x) for x in p.k)}; d={d}]"
    return _finish_module(p, (t0, t1, t2, t3), label)


# ---------------------------------------------------------------------------
# relation and ladder verification
# ---------------------------------------------------------------------------

def _diff_detail(diff: Matrix) -> str:
    return "difference " + repr(diff)


def verify_relations(m: ModuleRep) -> Report:
    """Check the defining relations on a module.

    (a) each generator times its stored inverse is the identity, both
    ways; (b) each generator plus its inverse is a scalar matrix (the
    scalar is recorded); (c) the ordered product of the four generators
    is q^{-1} times the identity.  Failures become report entries, not
    exceptions.
    """
    ident = m.identity_matrix()
    items = []
    for i in range(4):
        for tag, prod in (
            (f"{GEN_NAMES[i]}*{GEN_NAMES[i]}^-1 = 1", m.t[i] * m.tinv[i]),
            (f"{GEN_NAMES[i]}^-1*{GEN_NAMES[i]} = 1", m.tinv[i] * m.t[i]),
        ):
            ok = prod == ident
            items.append(
                CheckItem(tag, ok, "" if ok else _diff_detail(prod - ident))
            )
    for i in range(4):
        c = (m.t[i] + m.tinv[i]).scalar_value()
        ok = c is not None
        items.append(
            CheckItem(
                f"{GEN_NAMES[i]}+{GEN_NAMES[i]}^-1 scalar",
                ok,
                f"scalar {scalar_to_str(c)}" if ok else "not a scalar matrix",
            )
        )
    prod = m.t[0] * m.t[1] * m.t[2] * m.t[3]
    expected = ident.scale(1 / m.params.q)
    ok = prod == expected
    items.append(
        CheckItem("t0*t1*t2*t3 = q^-1", ok, "" if ok else _diff_detail(prod - expected))
    )
    return Report(tuple(items))


def central_character(m: ModuleRep):
    """The four scalars by which the central combinations t_i + t_i^{-1} act."""
    out = []
    for i in range(4):
        c = (m.t[i] + m.tinv[i]).scalar_value()
        if c is None:
            raise ParameterError(f"{GEN_NAMES[i]}+{GEN_NAMES[i]}^-1 is not scalar")
        out.append(c)
    return tuple(out)


def _unit_vector(dim: int, i: int, one, zero):
    return tuple(one if j == i else zero for j in range(dim))


def ladder_check(m: ModuleRep, which: str) -> Report:
    """Check the lowering (X = t3*t0) or raising (Y = t0*t1) ladder
    identities on every basis column of an untwisted module."""
    p = m.params
    d = m.dim - 1
    one = p.q ** 0
    zero = p.q * 0
    if which == "X":
        fwd, bwd = m.x_matrix(), m.xinv_matrix()
        coef_base = p.k0 * p.k3
    elif which == "Y":
        fwd, bwd = m.y_matrix(), m.yinv_matrix()
        coef_base = p.k0 * p.k1
    else:
        raise DahaError("which must be 'X' or 'Y'")
    ident = m.identity_matrix()
    items = []
    for i in range(d + 1):
        # X^{(-1)^{i-1}}: the inverse for even i, the element itself for odd i
        op = fwd if i % 2 else bwd
        coef = coef_base * scalar_pow(p.q, 2 * ((i + 1) // 2))
        lhs = (ident - op.scale(coef)).apply(_unit_vector(m.dim, i, one, zero))
        if which == "X":
            if i == 0:
                expect = tuple(zero for _ in range(m.dim))
            else:
                rho = seq_rho(p.q, *p.k, i)
                expect = tuple(
                    rho if j == i - 1 else zero for j in range(m.dim)
                )
        else:
            if i == d:
                expect = tuple(zero for _ in range(m.dim))
            else:
                expect = _unit_vector(m.dim, i + 1, one, zero)
        ok = all(a == b for a, b in zip(lhs, expect))
        items.append(
            CheckItem(
                f"{which}-ladder@{i}",
                ok,
                "" if ok else f"got {[scalar_to_str(x) for x in lhs]}",
            )
        )
    return Report(tuple(items))


def commutation_check(m: ModuleRep) -> Report:
    """Two identities tying X = t3*t0 to the generators and the central
    scalars; they hold in the algebra, hence on every module."""
    c = central_character(m)
    ident = m.identity_matrix()
    x, xi = m.x_matrix(), m.xinv_matrix()
    t0, t2 = m.t[0], m.t[2]
    q = m.params.q
    items = []
    lhs = x * t0 - t0 * xi
    rhs = x.scale(c[0]) - ident.scale(c[3])
    ok = lhs == rhs
    items.append(
        CheckItem("X*t0 - t0*X^-1 = c0*X - c3", ok, "" if ok else _diff_detail(lhs - rhs))
    )
    lhs = (xi * t2).scale(1 / q) - (t2 * x).scale(q)
    rhs = xi.scale(c[2] / q) - ident.scale(c[1])
    ok = lhs == rhs
    items.append(
        CheckItem(
            "q^-1*X^-1*t2 - q*t2*X = q^-1*c2*X^-1 - c1",
            ok,
            "" if ok else _diff_detail(lhs - rhs),
        )
    )
    return Report(tuple(items))


def raising_product_annihilates(m: ModuleRep) -> bool:
    """Apply the full (d+1)-factor raising product to the first basis
    vector; the result must vanish on both module families."""
    p = m.params
    d = m.dim - 1
    one = p.q ** 0
    zero = p.q * 0
    y, yi = m.y_matrix(), m.yinv_matrix()
    ident = m.identity_matrix()
    v = _unit_vector(m.dim, 0, one, zero)
    for i in range(d + 1):
        op = y if i % 2 else yi
        coef = p.k0 * p.k1 * scalar_pow(p.q, 2 * ((i + 1) // 2))
        v = (ident - op.scale(coef)).apply(v)
    return all(not x for x in v)


def w_basis_check(m: ModuleRep) -> Report:
    """Build the alternative basis w_i by the k1-inverted raising
    products applied to the first basis vector, then check that it is a
    basis and satisfies the lowering ladder with phi coefficients."""
    p = m.params
    d = m.dim - 1
    one = p.q ** 0
    zero = p.q * 0
    y, yi = m.y_matrix(), m.yinv_matrix()
    x, xi = m.x_matrix(), m.xinv_matrix()
    ident = m.identity_matrix()
    coef_y = p.k0 / p.k1

    ws = [_unit_vector(m.dim, 0, one, zero)]
    for h in range(d):
        op = y if h % 2 else yi
        coef = coef_y * scalar_pow(p.q, 2 * ((h + 1) // 2))
        ws.append((ident - op.scale(coef)).apply(ws[-1]))

    items = []
    basis_ok = rank(Matrix.from_columns(ws)) == m.dim
    items.append(CheckItem("w vectors form a basis", basis_ok))

    for i in range(d + 1):
        op = x if i % 2 else xi
        coef = p.k0 * p.k3 * scalar_pow(p.q, 2 * ((i + 1) // 2))
        lhs = (ident - op.scale(coef)).apply(ws[i])
        if i == 0:
            expect = tuple(zero for _ in range(m.dim))
        else:
            phi = seq_phi(p.q, *p.k, i)
            expect = tuple(phi * c for c in ws[i - 1])
        items.append(
            CheckItem(
                f"w-lowering@{i}",
                all(a == b for a, b in zip(lhs, expect)),
            )
        )
        opy = y if i % 2 else yi
        coefy = coef_y * scalar_pow(p.q, 2 * ((i + 1) // 2))
        lhs = (ident - opy.scale(coefy)).apply(ws[i])
        expect = (
            tuple(zero for _ in range(m.dim)) if i == d else tuple(ws[i + 1])
        )
        items.append(
            CheckItem(
                f"w-raising@{i}",
                all(a == b for a, b in zip(lhs, expect)),
            )
        )
    return Report(tuple(items))


# ---------------------------------------------------------------------------
# the infinite-dimensional ladder module, applied lazily
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SparseVec:
    """A finitely supported vector over the basis m_0, m_1, ...;
    stored as sorted (index, coefficient) pairs with nonzero
    coefficients and distinct indices."""

    items: tuple

    @classmethod
    def from_dict(cls, d: dict) -> "SparseVec":
        return cls(tuple(sorted((i, as_scalar(c)) for i, c in d.items() if c)))

    @classmethod
    def unit(cls, i: int, one=Fraction(1)) -> "SparseVec":
        return cls(((i, one),))

    @classmethod
    def zero(cls) -> "SparseVec":
        return cls(())

    def is_zero(self) -> bool:
        return not self.items

    def max_index(self) -> int:
        return self.items[-1][0] if self.items else 0

    def coeff(self, i: int):
        for j, c in self.items:
            if j == i:
                return c
        return Fraction(0)

    def scale(self, c) -> "SparseVec":
        if not c:
            return SparseVec(())
        return SparseVec(tuple((i, x * c) for i, x in self.items))

    def __add__(self, other: "SparseVec") -> "SparseVec":
        acc = dict(self.items)
        for i, c in other.items:
            acc[i] = acc.get(i, 0) + c
        return SparseVec.from_dict(acc)

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, SparseVec):
            return NotImplemented
        return self.items == other.items

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        if not self.items:
            return "SparseVec(0)"
        body = " + ".join(f"({scalar_to_str(c)})*m{i}" for i, c in self.items)
        return f"SparseVec({body})"


def _verma_column(gen: int, j: int, p: ParamQuadruple) -> dict:
    """Coordinates of generator gen applied to the basis vector m_j."""
    q, (k0, k1, k2, k3) = p.q, p.k
    if gen == 0:
        if j == 0:
            return {0: k0}
        if j % 2 == 0:
            c = scalar_pow(q, -j) / k0
            return {
                j - 1: c * (1 - scalar_pow(q, j)) * (1 - k0 * k0 * scalar_pow(q, j)),
                j: k0 + 1 / k0 - c,
            }
        c = scalar_pow(q, -j - 1) / k0
        return {j: c, j + 1: -c}
    if gen == 1:
        if j == 0:
            return {0: k1, 1: 1 / k1}
        if j % 2 == 0:
            return {
                j - 1: -k1 * (1 - scalar_pow(q, j)) * (1 - k0 * k0 * scalar_pow(q, j)),
                j: k1,
                j + 1: 1 / k1,
            }
        return {j: 1 / k1}
    if gen == 2:
        if j % 2 == 0:
            c = scalar_pow(q, -j - 1) / (k0 * k1 * k3)
            return {j: c, j + 1: -c}
        a = k0 * k1 * k3 * scalar_pow(q, j)
        return {
            j - 1: (a - k2) * (a - 1 / k2) / a,
            j: k2 + 1 / k2 - 1 / a,
        }
    if gen == 3:
        if j % 2 == 0:
            return {j: k3}
        a = k0 * k1 * k3 * scalar_pow(q, j)
        return {j - 1: -(a - k2) * (a - 1 / k2) / k3, j: 1 / k3, j + 1: k3}
    raise DahaError(f"unknown generator {gen!r}")


def _verma_forward(gen: int, v: SparseVec, p: ParamQuadruple) -> SparseVec:
    acc = {}
    for j, c in v.items:
        for i, e in _verma_column(gen, j, p).items():
            acc[i] = acc.get(i, 0) + c * e
    return SparseVec.from_dict(acc)


_INVERSE_SLACK = 4


def _verma_inverse(gen: int, v: SparseVec, p: ParamQuadruple) -> SparseVec:
    """Apply an inverse generator by solving the banded system t*w = v
    on the index window [0, max_index + 2 + slack], then re-check that
    the residual vanishes."""
    width = v.max_index() + 2 + _INVERSE_SLACK
    zero = p.q * 0
    cols = [_verma_column(gen, j, p) for j in range(width + 1)]
    band = Matrix(
        [[cols[j].get(i, zero) for j in range(width + 1)] for i in range(width + 2)]
    )
    rhs = [zero] * (width + 2)
    for i, c in v.items:
        rhs[i] = c
    sol = solve_right(band, rhs)
    if sol is None:
        raise TranscriptionError("inverse generator system had no unique solution")
    w = SparseVec.from_dict({i: c for i, c in enumerate(sol)})
    if _verma_forward(gen, w, p) != v:
        raise TranscriptionError("inverse generator residual is nonzero")
    return w


def verma_apply(gen, v: SparseVec, p: ParamQuadruple) -> SparseVec:
    """Apply a generator (0..3), an inverse generator ("t0inv".."t3inv"),
    or one of "X", "Y", "Xinv", "Yinv" to a finitely supported vector.

    Valid for arbitrary nonzero parameters; no parity constraint is
    assumed.
    """
    if isinstance(gen, int):
        if gen not in (0, 1, 2, 3):
            raise DahaError(f"generator index out of range: {gen}")
        return _verma_forward(gen, v, p)
    if gen in ("t0", "t1", "t2", "t3"):
        return _verma_forward(int(gen[1]), v, p)
    if gen in ("t0inv", "t1inv", "t2inv", "t3inv"):
        return _verma_inverse(int(gen[1]), v, p)
    if gen == "X":
        return _verma_forward(3, _verma_forward(0, v, p), p)
    if gen == "Y":
        return _verma_forward(0, _verma_forward(1, v, p), p)
    if gen == "Xinv":
        return _verma_inverse(0, _verma_inverse(3, v, p), p)
    if gen == "Yinv":
        return _verma_inverse(1, _verma_inverse(0, v, p), p)
    raise DahaError(f"unknown generator {gen!r}")


def verma_ladder_check(p: ParamQuadruple, max_index: int = 12) -> Report:
    """The lowering/raising ladder identities on the infinite module,
    checked on basis vectors m_0 .. m_max_index."""
    one = p.q ** 0
    items = []
    for i in range(max_index + 1):
        mi = SparseVec.unit(i, one)
        coef = p.k0 * p.k3 * scalar_pow(p.q, 2 * ((i + 1) // 2))
        shifted = verma_apply("X" if i % 2 else "Xinv", mi, p)
        lhs = mi - shifted.scale(coef)
        if i == 0:
            expect = SparseVec.zero()
        else:
            expect = SparseVec.unit(i - 1, one).scale(seq_rho(p.q, *p.k, i))
        items.append(CheckItem(f"verma-X@{i}", lhs == expect))

        coef = p.k0 * p.k1 * scalar_pow(p.q, 2 * ((i + 1) // 2))
        shifted = verma_apply("Y" if i % 2 else "Yinv", mi, p)
        lhs = mi - shifted.scale(coef)
        items.append(CheckItem(f"verma-Y@{i}", lhs == SparseVec.unit(i + 1, one)))
    return Report(tuple(items))


# ---------------------------------------------------------------------------
# Laurent polynomial realization
# ---------------------------------------------------------------------------

class LaurentPoly:
    """A Laurent polynomial in z: sorted (exponent, coefficient) pairs
    with distinct exponents and nonzero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc = {}
        for e, c in dict(terms).items() if isinstance(terms, dict) else terms:
            c = as_scalar(c)
            if c:
                acc[int(e)] = acc.get(int(e), Fraction(0)) + c
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c))
        )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(((0, Fraction(1)),))

    @classmethod
    def monomial(cls, e: int, c=Fraction(1)) -> "LaurentPoly":
        return cls(((e, c),))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: int):
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def min_exp(self) -> int:
        if not self.terms:
            raise DahaError("zero polynomial has no minimal exponent")
        return self.terms[0][0]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return LaurentPoly(acc)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "LaurentPoly":
        if not c:
            return LaurentPoly(())
        return LaurentPoly(tuple((e, x * c) for e, x in self.terms))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(acc)

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by z**n."""
        return LaurentPoly(tuple((e + n, c) for e, c in self.terms))

    def substitute_inverse(self) -> "LaurentPoly":
        """f(z) -> f(1/z)."""
        return LaurentPoly(tuple((-e, c) for e, c in self.terms))

    def substitute_q2_inverse(self, q) -> "LaurentPoly":
        """f(z) -> f(q**2 / z)."""
        return LaurentPoly(
            tuple((-e, c * scalar_pow(q, 2 * e)) for e, c in self.terms)
        )

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring; a nonzero remainder is an
        internal error (it would mean a transcribed operator fails to
        preserve the polynomial module)."""
        if other.is_zero():
            raise DahaError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly(())
        n_shift = self.min_exp()
        d_shift = other.min_exp()
        num = self.shift(-n_shift)
        den = other.shift(-d_shift)
        nn = [Fraction(0)] * (num.terms[-1][0] + 1)
        for e, c in num.terms:
            nn[e] = c
        dd = [Fraction(0)] * (den.terms[-1][0] + 1)
        for e, c in den.terms:
            dd[e] = c
        quot = [Fraction(0)] * max(len(nn) - len(dd) + 1, 1)
        lead = dd[-1]
        while nn and len(nn) >= len(dd):
            k = len(nn) - len(dd)
            c = nn[-1] / lead
            quot[k] = c
            for i in range(len(dd)):
                nn[k + i] = nn[k + i] - c * dd[i]
            nn.pop()
            while nn and not nn[-1]:
                nn.pop()
        if any(x for x in nn):
            raise TranscriptionError("non-cancelling Laurent division")
        return LaurentPoly(
            tuple((i + n_shift - d_shift, c) for i, c in enumerate(quot) if c)
        )

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        body = " + ".join(f"({scalar_to_str(c)})*z^{e}" for e, c in self.terms)
        return f"LaurentPoly({body})"

    def to_pairs(self):
        return [[e, scalar_to_str(c)] for e, c in self.terms]

    @classmethod
    def from_pairs(cls, pairs) -> "LaurentPoly":
        from .scalar import scalar_from_str

        return cls(tuple((int(e), scalar_from_str(c)) for e, c in pairs))


def poly_apply(gen: int, f: LaurentPoly, p: ParamQuadruple) -> LaurentPoly:
    """Apply one generator to a Laurent polynomial.

    Each generator is a substitution-and-divided-difference operator;
    the divided differences are carried out as one exact division, so a
    transcription mistake surfaces as a non-cancelling division instead
    of a silent wrong answer.
    """
    q, (k0, k1, k2, k3) = p.q, p.k
    c0, c1 = k0 + 1 / k0, k1 + 1 / k1
    c2, c3 = k2 + 1 / k2, k3 + 1 / k3
    if gen == 0:
        g = f.substitute_q2_inverse(q)
        bracket = LaurentPoly(((0, c0), (-1, -c1 * q)))
        den = LaurentPoly(((0, Fraction(1)), (-2, -q * q)))
        return g.scale(k0) + (bracket * (f - g)).exact_div(den)
    if gen == 1:
        g = f.substitute_q2_inverse(q)
        a = LaurentPoly(((0, c1), (-1, -c0 * q)))
        b = LaurentPoly(
            ((-2, -q * q * c1), (-3, k0 * q ** 3), (-1, q / k0))
        )
        den = LaurentPoly(((0, Fraction(1)), (-2, -q * q)))
        return (a * f + b * g).exact_div(den)
    if gen == 2:
        g = f.substitute_inverse()
        a = LaurentPoly(((0, c2), (1, -c3)))
        b = LaurentPoly(((1, k3), (-1, 1 / k3), (0, -c2)))
        den = LaurentPoly(((0, Fraction(1)), (2, Fraction(-1))))
        return (a * f + b * g).exact_div(den)
    if gen == 3:
        g = f.substitute_inverse()
        bracket = LaurentPoly(((0, c3), (1, -c2)))
        den = LaurentPoly(((0, Fraction(1)), (2, Fraction(-1))))
        return g.scale(k3) + (bracket * (f - g)).exact_div(den)
    raise DahaError(f"unknown generator {gen!r}")


def verma_basis_image(i: int, p: ParamQuadruple) -> LaurentPoly:
    """Image of the ladder basis vector m_i in the Laurent realization:
    a product of i binomial factors alternating between z^{-1} and z."""
    if i < 0:
        raise DahaError("basis index must be nonnegative")
    q, k0, k1 = p.q, p.k0, p.k1
    out = LaurentPoly.one()
    for h in range(i):
        coef = k0 * k1 * scalar_pow(q, 2 * ((h + 1) // 2)) * scalar_pow(q, (-1) ** h)
        z_exp = (-1) ** (h - 1)
        out = out * LaurentPoly(((0, Fraction(1)), (z_exp, -coef)))
    return out


def sparse_to_poly(v: SparseVec, p: ParamQuadruple) -> LaurentPoly:
    """Push a finitely supported ladder vector through the basis image map."""
    out = LaurentPoly.zero()
    for i, c in v.items:
        out = out + verma_basis_image(i, p).scale(c)
    return out
