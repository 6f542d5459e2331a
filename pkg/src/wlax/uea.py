"""Universal enveloping algebra U(g) in PBW normal form, and M = U(g)/J.

The basis of a graded setup is sorted by ascending ad-x degree, so in a
normal-ordered monomial the factors from g_{>=1} sit rightmost.  Reducing a
monomial modulo the left ideal J then means replacing that suffix by the
product of the scalars (f|m).
"""
from __future__ import annotations

import os

from ._scalar import Q, ZERO, ONE, fmt_q, to_q
from .errors import PositiveWeight
from .liealg import render_label

if os.environ.get("WLAX_PURE"):
    from ._pbw_py import PBWKernel
    KERNEL = "python"
else:
    try:
        from ._pbw_core import PBWKernel
        KERNEL = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from ._pbw_py import PBWKernel
        KERNEL = "python"

_SCALARS = (int, type(ONE))

NEG_INF = float("-inf")


class UEA:
    """U(g) for a graded setup; the factory for its elements."""

    def __init__(self, setup, kernel_cls=None):
        self.setup = setup
        alg = setup.algebra
        self.dim = alg.dim
        self.delta = setup.delta
        self.kernel = (kernel_cls or PBWKernel)(alg.dim, alg.structure)
        self.fpair = tuple(setup.f_pair(i) for i in range(alg.dim))
        self.one = UEAElement(self, {(): ONE})
        self.zero = UEAElement(self, {})
        # first index with delta >= 1 (doubled >= 2); also the M boundary
        self.j_start = next((i for i, d in enumerate(self.delta) if d >= 2), alg.dim)

    def gen(self, i):
        if isinstance(i, (str, tuple)):
            i = self.setup.algebra.index(i)
        return UEAElement(self, {(i,): ONE})

    def scalar(self, c):
        c = to_q(c)
        return UEAElement(self, {(): c} if c else {})

    def lift(self, c):
        """Coerce a rational or element to an element of this algebra."""
        return c if isinstance(c, UEAElement) else self.scalar(c)

    def element(self, terms):
        return UEAElement(self, _prune({tuple(m): to_q(c) for m, c in terms.items()}))

    def from_combo(self, combo):
        """A degree-one element from a {basis index: coeff} map."""
        return UEAElement(self, _prune({(k,): Q(c) for k, c in combo.items()}))

    def monomial(self, factors):
        """Normal form of an arbitrary (unsorted) product of generators."""
        out = {(): ONE}
        for g in factors:
            out = self.kernel.mul(out, {(g,): ONE})
        return UEAElement(self, out)

    def multiply(self, a, b):
        return a * b

    def commutator(self, a, b):
        return a * b - b * a

    def kazhdan_weight(self, x):
        """Doubled Kazhdan weight: max over monomials of sum (2 - delta2)."""
        return kazhdan_weight(x)

    def reduce_mod_J(self, x):
        return reduce_mod_J(x)

    def epsilon0(self, x):
        return epsilon0(x)

    def render_monomial(self, mono):
        alg = self.setup.algebra
        return "*".join(render_label(alg.labels[i]) for i in mono)


def _prune(d):
    return {m: c for m, c in d.items() if c}


class UEAElement:
    """Sparse map from PBW monomials to nonzero rationals. Immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def _wrap(self, other):
        if isinstance(other, UEAElement):
            return other
        if isinstance(other, _SCALARS) or hasattr(other, "denominator"):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _result_class(self, other)(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return self.__class__(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = to_q(c)
        if not c:
            return self.__class__(self.alg, {})
        return self.__class__(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            if not self.terms or not other.terms:
                return UEAElement(self.alg, {})
            return UEAElement(self.alg, self.alg.kernel.mul(self.terms, other.terms))
        if isinstance(other, _SCALARS) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALARS) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.terms == other.terms
        if isinstance(other, _SCALARS) or hasattr(other, "denominator"):
            c = Q(other)
            return self.terms == ({(): c} if c else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def scalar_value(self):
        """The rational value if the element is a scalar, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def degree(self):
        return max((len(m) for m in self.terms), default=-1)

    def to_json(self):
        return [{"monomial": list(m), "coeff": fmt_q(c)} for m, c in sorted(self.terms.items())]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            if not m:
                parts.append(fmt_q(c))
            elif c == 1:
                parts.append(self.alg.render_monomial(m))
            elif c == -1:
                parts.append("-" + self.alg.render_monomial(m))
            else:
                parts.append(f"{fmt_q(c)}*{self.alg.render_monomial(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class MElement(UEAElement):
    """Element of M = U(g)/J, stored on the PBW transversal U(g_{<=1/2})."""

    __slots__ = ()


def _result_class(a, b):
    # sums stay in M only when both summands do (scalars are 1bar multiples)
    if isinstance(a, MElement) and (isinstance(b, MElement) or set(b.terms) <= {()}):
        return MElement
    return UEAElement


def act(u, m):
    """Left action u . m of U(g) on M."""
    return reduce_mod_J(u * as_uea(m))


def kazhdan_weight(x):
    """Doubled weight; an element of g_j counts 2 - 2j.  -inf for zero."""
    if not x.terms:
        return NEG_INF
    delta = x.alg.delta
    return max(sum(2 - delta[i] for i in m) for m in x.terms)


def reduce_mod_J(x):
    """Image of x * 1bar in M, as an MElement."""
    alg = x.alg
    js = alg.j_start
    fp = alg.fpair
    out = {}
    for m, c in x.terms.items():
        cut = len(m)
        while cut and m[cut - 1] >= js:
            cut -= 1
        if cut < len(m):
            for g in m[cut:]:
                c = c * fp[g]
                if not c:
                    break
            if not c:
                continue
            m = m[:cut]
        v = out.get(m, ZERO) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return MElement(alg, out)


def epsilon0(x):
    """Evaluate a weight <= 0 element by u_i -> (f|u_i)."""
    if kazhdan_weight(x) > 0:
        raise PositiveWeight("element is not in F_0 U(g)")
    fp = x.alg.fpair
    s = ZERO
    for m, c in x.terms.items():
        for g in m:
            c = c * fp[g]
            if not c:
                break
        s += c
    return s


def as_uea(m):
    """View an MElement as its representative in U(g)."""
    return UEAElement(m.alg, m.terms)
