"""Parameter quadruples and everything derived from parameters alone.

A quadruple (q, k0, k1, k2, k3) together with a target dimension d+1
determines one module of each family.  The even-dimensional family
requires d odd with k0**2 = q**(-d-1); the odd-dimensional family
requires d even with k0*k1*k2*k3 = q**(-d-1).  The universal ladder
module exists for arbitrary nonzero parameters, which is what parity
"free" is for.

This module also houses the four scalar coefficient sequences that
drive every ladder computation, the spectral sequence used in the
simultaneous-eigenvector argument, membership predicates for the
classification parameter sets, and the two group actions on
parameters (sign flips on k1,k2,k3 and the cyclic twist).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DahaError, ParameterError, TranscriptionError
from .scalar import (
    as_scalar,
    field_of,
    scalar_from_str,
    scalar_pow,
    scalar_to_str,
    validate_q,
)

PARITY_EVEN = "even"  # module dimension d+1 even, d odd
PARITY_ODD = "odd"    # module dimension d+1 odd, d even
PARITY_FREE = "free"  # no constraint; only the universal module applies


@dataclass(frozen=True)
class ParamQuadruple:
    """Validated parameters (q, k0, k1, k2, k3, d, parity).

    Construction eagerly checks the parity constraint tying k0 (even
    family) or the product of all four k's (odd family) to q**(-d-1);
    every downstream formula silently assumes it.
    """

    q: object
    k0: object
    k1: object
    k2: object
    k3: object
    d: int
    parity: str

    def __post_init__(self):
        for name in ("q", "k0", "k1", "k2", "k3"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not validate_q(self.q):
            raise ParameterError(f"q = {scalar_to_str(self.q)} is zero or a root of unity")
        for name in ("k0", "k1", "k2", "k3"):
            if not getattr(self, name):
                raise ParameterError(f"{name} must be nonzero")
        if self.parity == PARITY_EVEN:
            if self.d < 1 or self.d % 2 == 0:
                raise ParameterError(f"even family needs odd d >= 1, got d = {self.d}")
            if self.k0 * self.k0 != scalar_pow(self.q, -self.d - 1):
                raise ParameterError("k0^2 != q^{-d-1}")
        elif self.parity == PARITY_ODD:
            if self.d < 0 or self.d % 2:
                raise ParameterError(f"odd family needs even d >= 0, got d = {self.d}")
            if self.k0 * self.k1 * self.k2 * self.k3 != scalar_pow(self.q, -self.d - 1):
                raise ParameterError("k0*k1*k2*k3 != q^{-d-1}")
        elif self.parity != PARITY_FREE:
            raise ParameterError(f"unknown parity {self.parity!r}")

    @property
    def k(self) -> tuple:
        return (self.k0, self.k1, self.k2, self.k3)

    @property
    def field(self):
        return field_of(self.q)

    def with_k(self, k0=None, k1=None, k2=None, k3=None) -> "ParamQuadruple":
        ks = [k0, k1, k2, k3]
        new = [old if repl is None else repl for old, repl in zip(self.k, ks)]
        return ParamQuadruple(self.q, *new, d=self.d, parity=self.parity)

    def to_json(self) -> dict:
        return {
            "q": scalar_to_str(self.q),
            "k": [scalar_to_str(x) for x in self.k],
            "d": self.d,
            "parity": self.parity,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParamQuadruple":
        ks = [scalar_from_str(s) for s in data["k"]]
        return cls(scalar_from_str(data["q"]), *ks, d=int(data["d"]), parity=data["parity"])


@dataclass(frozen=True)
class TwistElement:
    """A residue mod 4; composition of cyclic generator shifts."""

    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % 4)

    def __add__(self, other: "TwistElement") -> "TwistElement":
        return TwistElement(self.value + other.value)

    def __neg__(self) -> "TwistElement":
        return TwistElement(-self.value)

    def __int__(self) -> int:
        return self.value

    @classmethod
    def identity(cls) -> "TwistElement":
        return cls(0)

    @classmethod
    def all(cls):
        return tuple(cls(v) for v in range(4))


@dataclass(frozen=True)
class SignTriple:
    """An element of {+1, -1}^3 acting on (k1, k2, k3) by inversion."""

    signs: tuple

    def __post_init__(self):
        signs = tuple(self.signs)
        if len(signs) != 3 or any(s not in (1, -1) for s in signs):
            raise ParameterError(f"not a sign triple: {signs!r}")
        object.__setattr__(self, "signs", signs)

    def __mul__(self, other: "SignTriple") -> "SignTriple":
        return SignTriple(tuple(a * b for a, b in zip(self.signs, other.signs)))

    @classmethod
    def identity(cls) -> "SignTriple":
        return cls((1, 1, 1))

    @classmethod
    def all(cls):
        return tuple(cls(s) for s in itertools.product((1, -1), repeat=3))


# ---------------------------------------------------------------------------
# coefficient sequences
#
# Each is a two-case formula indexed by any integer i; the even-index
# case is a q-Pochhammer-style factor pair, the odd-index case pairs a
# product of three parameters against k2 (or k3) and its inverse.  The
# four kinds differ only by which parameter is inverted or cycled.
# ---------------------------------------------------------------------------

SEQ_KINDS = ("phi", "rho", "chi", "psi")


def seq_phi(q, k0, k1, k2, k3, i: int):
    if i % 2 == 0:
        return (1 - scalar_pow(q, i)) * (1 - k0 * k0 * scalar_pow(q, i))
    a = k0 * k3 * scalar_pow(q, i) / k1
    return (a - k2) * (a - 1 / k2)


def seq_rho(q, k0, k1, k2, k3, i: int):
    if i % 2 == 0:
        return (1 - scalar_pow(q, i)) * (1 - k0 * k0 * scalar_pow(q, i))
    a = k0 * k1 * k3 * scalar_pow(q, i)
    return (a - k2) * (a - 1 / k2)


def seq_chi(q, k0, k1, k2, k3, i: int):
    if i % 2 == 0:
        return (1 - scalar_pow(q, i)) * (1 - k0 * k0 * scalar_pow(q, i))
    a = k0 * k1 * scalar_pow(q, i) / k3
    return (a - k2) * (a - 1 / k2)


def seq_psi(q, k0, k1, k2, k3, i: int):
    if i % 2 == 0:
        return (1 - scalar_pow(q, i)) * (1 - k1 * k1 * scalar_pow(q, i))
    a = k0 * k1 * k2 * scalar_pow(q, i)
    return (a - k3) * (a - 1 / k3)


_SEQ_FUNCS = {"phi": seq_phi, "rho": seq_rho, "chi": seq_chi, "psi": seq_psi}


def eval_sequence(kind: str, p: ParamQuadruple, i: int):
    """Evaluate one of the four coefficient sequences at index i.

    For the odd family the constraint collapses the odd-index cases of
    rho and psi to simpler two-factor forms; both are computed and
    cross-checked, so a transcription slip in either surfaces at once.
    """
    if kind not in _SEQ_FUNCS:
        raise DahaError(f"unknown sequence kind {kind!r}")
    value = _SEQ_FUNCS[kind](p.q, p.k0, p.k1, p.k2, p.k3, i)
    if p.parity == PARITY_ODD and i % 2 and kind in ("rho", "psi"):
        u = scalar_pow(p.q, i - p.d - 1)
        kk = p.k2 if kind == "rho" else p.k3
        specialized = (u - 1) * (u / (kk * kk) - 1)
        if specialized != value:
            raise TranscriptionError(
                f"specialized {kind}_{i} disagrees with the general form"
            )
    return value


# ---------------------------------------------------------------------------
# spectral sequence
# ---------------------------------------------------------------------------

def theta(q, mu, i: int):
    """mu*q^i for even i, mu^{-1}*q^{-i-1} for odd i."""
    mu = as_scalar(mu)
    if not mu:
        raise ParameterError("mu must be nonzero")
    if i % 2 == 0:
        return mu * scalar_pow(q, i)
    return (1 / mu) * scalar_pow(q, -i - 1)


def theta_coincidence(q, mu, i: int, j: int) -> bool:
    """Whether theta_i equals theta_j.

    Decided through the parity characterization (same parity: q^i = q^j;
    opposite parity: mu^2 = q^{-i-j-1}) and cross-checked against the
    direct comparison.
    """
    mu = as_scalar(mu)
    if not mu:
        raise ParameterError("mu must be nonzero")
    if (i - j) % 2 == 0:
        result = scalar_pow(q, i) == scalar_pow(q, j)
    else:
        result = mu * mu == scalar_pow(q, -i - j - 1)
    if result != (theta(q, mu, i) == theta(q, mu, j)):
        raise TranscriptionError("theta coincidence characterization failed")
    return result


# ---------------------------------------------------------------------------
# classification parameter sets and orbits
# ---------------------------------------------------------------------------

def _even_products(p: ParamQuadruple):
    k0, k1, k2, k3 = p.k
    return (
        k0 * k1 * k2 * k3,
        k0 * k2 * k3 / k1,
        k0 * k1 * k3 / k2,
        k0 * k1 * k2 / k3,
    )


def in_EP(p: ParamQuadruple) -> bool:
    """Membership in the even classification parameter set: all four
    parameter products avoid q^{-i} for every odd i in 1..d."""
    if p.parity != PARITY_EVEN:
        raise ParameterError("in_EP needs an even-family quadruple")
    products = _even_products(p)
    for i in range(1, p.d + 1, 2):
        qi = scalar_pow(p.q, -i)
        if any(prod == qi for prod in products):
            return False
    return True


def in_OP(p: ParamQuadruple) -> bool:
    """Membership in the odd classification parameter set: every k_j^2
    avoids q^{-i} for even i in 2..d."""
    if p.parity != PARITY_ODD:
        raise ParameterError("in_OP needs an odd-family quadruple")
    for i in range(2, p.d + 1, 2):
        qi = scalar_pow(p.q, -i)
        if any(kj * kj == qi for kj in p.k):
            return False
    return True


def orbit_act(p: ParamQuadruple, s: SignTriple) -> ParamQuadruple:
    """Invert the k's marked by -1 in the sign triple; k0 is untouched."""
    if p.parity != PARITY_EVEN:
        raise ParameterError("the sign action is defined on the even family")
    k1, k2, k3 = (
        k if sign == 1 else 1 / k for k, sign in zip((p.k1, p.k2, p.k3), s.signs)
    )
    return ParamQuadruple(p.q, p.k0, k1, k2, k3, d=p.d, parity=p.parity)


def orbit_members(p: ParamQuadruple):
    return tuple(orbit_act(p, s) for s in SignTriple.all())


def canonical_orbit_rep(p: ParamQuadruple) -> ParamQuadruple:
    """Deterministic orbit representative: of the 8 sign-flipped
    members, the one whose (k1, k2, k3) string encoding is
    lexicographically least.  Idempotent and orbit-invariant."""
    def key(member):
        return tuple(scalar_to_str(x) for x in (member.k1, member.k2, member.k3))

    return min(orbit_members(p), key=key)
