"""Dense homogeneous forms, their restrictions to lines, and the map j on coefficients.

Exponent vectors of a fixed degree are stored in graded-lexicographic order,
i.e. descending lex: ``z0^d`` first, ``z3^d`` last.  This order is written
into every serialized surface as ``"order": "gradedlex"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .scalars import (
    APPROX_TOL,
    GR,
    all_exact,
    exact,
    format_rational,
    scalar_from_json,
)

__all__ = [
    "monomials",
    "monomial_index",
    "PolyForm",
    "BinaryForm",
    "restrict_to_line",
    "monomial_restrictions",
    "partials",
    "j_form",
    "binary_gcd",
    "poly_gcd",
    "substitute",
    "MONOMIAL_ORDER",
]

MONOMIAL_ORDER = "gradedlex"


@lru_cache(maxsize=None)
def monomials(d: int, nvars: int = 4) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree ``d``, descending lex."""
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(d - first, nvars - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(d: int, nvars: int = 4) -> dict:
    return {alpha: k for k, alpha in enumerate(monomials(d, nvars))}


def _zero_like(exact_mode: bool):
    return GR(0) if exact_mode else 0j


def _normalize_coeffs(coeffs) -> tuple:
    coeffs = tuple(coeffs)
    if all_exact(coeffs):
        return tuple(exact(c) for c in coeffs)
    return tuple(complex(c) for c in coeffs)


@dataclass(frozen=True, eq=False)
class PolyForm:
    """Homogeneous form of degree ``degree`` in ``nvars`` variables (4 for CP^3)."""

    degree: int
    coeffs: tuple
    nvars: int = 4

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        coeffs = _normalize_coeffs(self.coeffs)
        if len(coeffs) != comb(self.degree + self.nvars - 1, self.nvars - 1):
            raise ValueError("coefficient vector has the wrong length for this degree")
        object.__setattr__(self, "coeffs", coeffs)

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, d: int, nvars: int = 4, exact_mode: bool = True) -> "PolyForm":
        n = comb(d + nvars - 1, nvars - 1)
        return cls(d, (_zero_like(exact_mode),) * n, nvars)

    @classmethod
    def from_dict(cls, d: int, terms: dict, nvars: int = 4) -> "PolyForm":
        exact_mode = all_exact(terms.values())
        coeffs = [_zero_like(exact_mode)] * comb(d + nvars - 1, nvars - 1)
        index = monomial_index(d, nvars)
        for alpha, c in terms.items():
            alpha = tuple(alpha)
            if sum(alpha) != d or len(alpha) != nvars:
                raise ValueError(f"exponent {alpha} does not have degree {d}")
            coeffs[index[alpha]] = coeffs[index[alpha]] + c
        return cls(d, tuple(coeffs), nvars)

    @classmethod
    def monomial(cls, alpha, c=1) -> "PolyForm":
        return cls.from_dict(sum(alpha), {tuple(alpha): c}, len(alpha))

    @classmethod
    def variable(cls, i: int, nvars: int = 4) -> "PolyForm":
        return cls.monomial(tuple(1 if k == i else 0 for k in range(nvars)))

    # views ------------------------------------------------------------------
    @property
    def exact(self) -> bool:
        return all_exact(self.coeffs)

    def terms(self):
        """Nonzero ``(alpha, c)`` pairs."""
        return [(a, c) for a, c in zip(monomials(self.degree, self.nvars), self.coeffs) if c != 0]

    def coeff(self, alpha):
        return self.coeffs[monomial_index(self.degree, self.nvars)[tuple(alpha)]]

    def to_complex(self) -> "PolyForm":
        return PolyForm(self.degree, tuple(complex(c) for c in self.coeffs), self.nvars)

    def coeff_array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs])

    def is_zero(self, tol: float = APPROX_TOL) -> bool:
        if self.exact:
            return all(c == 0 for c in self.coeffs)
        return bool(np.max(np.abs(self.coeff_array()), initial=0.0) < tol)

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "PolyForm"):
        if self.degree != other.degree or self.nvars != other.nvars:
            raise ValueError("forms of different degree or arity")

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._check(other)
        return PolyForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.nvars)

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        self._check(other)
        return PolyForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.nvars)

    def __neg__(self) -> "PolyForm":
        return PolyForm(self.degree, tuple(-a for a in self.coeffs), self.nvars)

    def scale(self, c) -> "PolyForm":
        return PolyForm(self.degree, tuple(c * a for a in self.coeffs), self.nvars)

    def __mul__(self, other):
        if not isinstance(other, PolyForm):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise ValueError("forms in different numbers of variables")
        d = self.degree + other.degree
        out: dict = {}
        for a, x in self.terms():
            for b, y in other.terms():
                key = tuple(i + k for i, k in zip(a, b))
                out[key] = out.get(key, 0) + x * y
        if not out:
            return PolyForm.zero(d, self.nvars, self.exact and other.exact)
        return PolyForm.from_dict(d, out, self.nvars)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.degree, self.nvars) == (other.degree, other.nvars) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.nvars, self.coeffs))

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z):
        z = tuple(z)
        if len(z) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        powers = [_powers(x, self.degree) for x in z]
        total = _zero_like(self.exact and all_exact(z))
        for alpha, c in self.terms():
            term = c
            for i, a in enumerate(alpha):
                if a:
                    term = term * powers[i][a]
            total = total + term
        return total

    def partial(self, i: int) -> "PolyForm":
        if self.degree == 0:
            raise ValueError("derivative of a constant form")
        out = {}
        for alpha, c in self.terms():
            if alpha[i]:
                beta = tuple(a - (k == i) for k, a in enumerate(alpha))
                out[beta] = c * alpha[i]
        if not out:
            return PolyForm.zero(self.degree - 1, self.nvars, self.exact)
        return PolyForm.from_dict(self.degree - 1, out, self.nvars)

    def partials(self) -> tuple["PolyForm", ...]:
        return tuple(self.partial(i) for i in range(self.nvars))

    def proportionality(self, other: "PolyForm"):
        """``a`` with ``self == a * other`` (exact), or ``None``."""
        self._check(other)
        a = None
        for x, y in zip(self.coeffs, other.coeffs):
            if y == 0:
                if x != 0:
                    return None
                continue
            if a is None:
                a = x / y
            elif x != a * y:
                return None
        return a

    def max_normalized(self) -> np.ndarray:
        v = self.coeff_array()
        m = np.max(np.abs(v))
        return v / m if m > 0 else v

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        if self.nvars != 4:
            raise ValueError("only forms on CP^3 are serialized")
        rows = []
        for alpha, c in self.terms():
            if self.exact:
                rows.append({"alpha": list(alpha), "re": format_rational(c.re), "im": format_rational(c.im)})
            else:
                c = complex(c)
                rows.append({"alpha": list(alpha), "re": c.real, "im": c.imag})
        return {"degree": self.degree, "order": MONOMIAL_ORDER, "coeffs": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyForm":
        if obj.get("order", MONOMIAL_ORDER) != MONOMIAL_ORDER:
            raise ValueError(f"unsupported monomial order {obj.get('order')!r}")
        d = int(obj["degree"])
        terms = {}
        for row in obj["coeffs"]:
            terms[tuple(row["alpha"])] = scalar_from_json([row["re"], row["im"]])
        if not terms:
            return cls.zero(d)
        return cls.from_dict(d, terms)

    def __repr__(self):
        parts = []
        for alpha, c in self.terms():
            mono = "*".join(f"z{i}^{a}" if a > 1 else f"z{i}" for i, a in enumerate(alpha) if a)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "PolyForm(" + (" + ".join(parts) or f"0, degree={self.degree}") + ")"


def _powers(x, n: int) -> list:
    out = [GR(1) if all_exact((x,)) else 1 + 0j]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


# binary forms ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BinaryForm:
    """``sum_m coeffs[m] * s^(d-m) t^m``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize_coeffs(self.coeffs))
        if not self.coeffs:
            raise ValueError("binary form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all_exact(self.coeffs)

    def is_zero(self, tol: float = APPROX_TOL) -> bool:
        if self.exact:
            return all(c == 0 for c in self.coeffs)
        v = np.array([complex(c) for c in self.coeffs])
        return bool(np.max(np.abs(v)) < tol)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        return BinaryForm(_convolve(self.coeffs, other.coeffs))

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, s, t):
        d = self.degree
        return sum((c * s ** (d - m) * t**m for m, c in enumerate(self.coeffs)), GR(0) if self.exact else 0j)

    def d_s(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm((_zero_like(self.exact),))
        return BinaryForm(tuple(c * (d - m) for m, c in enumerate(self.coeffs[:-1])))

    def d_t(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            return BinaryForm((_zero_like(self.exact),))
        return BinaryForm(tuple(c * m for m, c in enumerate(self.coeffs) if m > 0))

    def __repr__(self):
        return "BinaryForm(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _convolve(a, b) -> tuple:
    zero = _zero_like(all_exact(a) and all_exact(b))
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for k, y in enumerate(b):
            out[i + k] = out[i + k] + x * y
    return tuple(out)


def monomial_restrictions(d: int, a, b) -> list[tuple]:
    """For each monomial (gradedlex order), the coefficients of ``z^alpha(s a + t b)``.

    Built by iterated substitution: powers of the linear binary forms
    ``a_i s + b_i t`` are formed once per variable and multiplied per monomial.
    """
    lin = [(a[i], b[i]) for i in range(4)]
    pw = []
    for ai, bi in lin:
        seq = [(GR(1),) if all_exact((ai, bi)) else (1 + 0j,)]
        for _ in range(d):
            seq.append(_convolve(seq[-1], (ai, bi)))
        pw.append(seq)
    out = []
    cache: dict = {}
    for alpha in monomials(d):
        key = alpha[:3]
        if key not in cache:
            acc = pw[0][alpha[0]]
            acc = _convolve(acc, pw[1][alpha[1]])
            acc = _convolve(acc, pw[2][alpha[2]])
            cache[key] = acc
        out.append(_convolve(cache[key], pw[3][alpha[3]]))
    return out


def restrict_to_line(f: PolyForm, line) -> BinaryForm:
    """Coefficients of ``f(s a + t b)`` for the spanning points of ``line``."""
    if f.nvars != 4:
        raise ValueError("restriction to a line of CP^3 needs a form in 4 variables")
    a, b = line.a.z, line.b.z
    rows = monomial_restrictions(f.degree, a, b)
    zero = _zero_like(f.exact and line.exact)
    out = [zero] * (f.degree + 1)
    for c, r in zip(f.coeffs, rows):
        if c == 0:
            continue
        for m, x in enumerate(r):
            out[m] = out[m] + c * x
    return BinaryForm(tuple(out))


def partials(f: PolyForm) -> tuple[PolyForm, ...]:
    return f.partials()


def j_form(f: PolyForm) -> PolyForm:
    """``c'_(a0,a1,a2,a3) = (-1)^(a0+a2) conj(c_(a1,a0,a3,a2))``."""
    if f.nvars != 4:
        raise ValueError("j acts on forms in 4 variables")
    index = monomial_index(f.degree)
    out = []
    for alpha in monomials(f.degree):
        a0, a1, a2, a3 = alpha
        c = f.coeffs[index[(a1, a0, a3, a2)]].conjugate()
        out.append(-c if (a0 + a2) % 2 else c)
    return PolyForm(f.degree, tuple(out))


def substitute(f: PolyForm, vectors) -> PolyForm:
    """``f(sum_k x_k v_k)`` as a form in ``len(vectors)`` new variables."""
    m = len(vectors)
    exact_mode = f.exact and all(all_exact(v) for v in vectors)
    lin = [PolyForm(1, tuple(v[i] for v in vectors), m) for i in range(f.nvars)]
    one = PolyForm(0, (GR(1) if exact_mode else 1 + 0j,), m)
    pw = []
    for ell in lin:
        seq = [one]
        for _ in range(f.degree):
            seq.append(seq[-1] * ell)
        pw.append(seq)
    result = PolyForm.zero(f.degree, m, exact_mode)
    for alpha, c in f.terms():
        term = one
        for i, a in enumerate(alpha):
            if a:
                term = term * pw[i][a]
        result = result + term.scale(c)
    return result


# gcds -----------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _monic(p: list) -> list:
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(p: list, q: list) -> list:
    """Monic gcd of univariate polynomials (ascending coefficient lists) over Q(i)."""
    p = _trim([exact(c) for c in p])
    q = _trim([exact(c) for c in q])
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    if not p:
        return _monic(q)
    if not q:
        return _monic(p)
    while q:
        p, q = q, _poly_rem(p, q)
    return _monic(p)


def _poly_rem(p: list, q: list) -> list:
    p = list(p)
    q = _monic(q)
    dq = len(q) - 1
    while len(p) - 1 >= dq and p:
        coef = p[-1]
        shift = len(p) - 1 - dq
        for i, c in enumerate(q):
            p[shift + i] = p[shift + i] - coef * c
        p.pop()
        _trim(p)
    return p


def _coprime_mod_p(polys) -> bool:
    """Certificate that polynomials over Q(i) are coprime, from a gcd modulo a split prime.

    With all leading coefficients nonzero mod ``p``, the gcd degree can only
    grow under reduction, so a constant modular gcd proves a constant gcd.
    """
    from .exactla import _PRIMES, to_gaussian_int_rows

    polys = [_trim([exact(c) for c in q]) for q in polys]
    polys = [q for q in polys if q]
    if len(polys) < 2:
        return False
    for p, root in _PRIMES:
        red = []
        for q in polys:
            (re, im), = to_gaussian_int_rows([q])
            v = [(a + b * root) % p for a, b in zip(re, im)]
            if v[-1] == 0:
                break
            red.append(v)
        else:
            g = red[0]
            for v in red[1:]:
                g = _gcd_mod(g, v, p)
                if len(g) == 1:
                    return True
    return False


def _gcd_mod(a: list, b: list, p: int) -> list:
    a, b = list(a), list(b)
    while b and b[-1] == 0:
        b.pop()
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] = (a[shift + i] - c * x) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return a


def binary_gcd(*forms: BinaryForm) -> BinaryForm:
    """Monic gcd of exact binary forms; nonconstant iff they share a projective root.

    A root at ``(s:t) = (1:0)`` shows up as leading zero coefficients, the
    rest is the ordinary gcd of the dehomogenizations ``f(s, 1)``.
    """
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd of zero forms")
    if not all(f.exact for f in forms):
        raise ValueError("binary_gcd needs exact forms")
    e_min = min(next(m for m, x in enumerate(f.coeffs) if x != 0) for f in forms)
    univariates = [[f.coeffs[f.degree - k] for k in range(f.degree + 1)] for f in forms]
    if _coprime_mod_p(univariates):
        return BinaryForm((GR(0),) * e_min + (GR(1),))
    g = None
    for u in univariates:
        g = u if g is None else poly_gcd(g, u)
    g = _monic(_trim(list(g)))
    n = len(g) - 1
    coeffs = [GR(0)] * (n + e_min + 1)
    for k, gk in enumerate(g):
        coeffs[n - k + e_min] = gk
    return BinaryForm(tuple(coeffs))
