"""Closed forms: finite combinations of zeta values with exact rational weights.

A ZetaCombination is the symbolic object (exact Fractions, integer shifts of
the exponent, optional 2^-s prefactor per term); the *_closed functions
evaluate the matching combination at a concrete exponent with a certified
budget.  Exact coefficient families (Eulerian numbers, power-sum polynomials)
live here too since the combinations are built from them.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import DomainError, NoClosedFormError
from .special import (
    BOUNDARY_MARGIN,
    NSum,
    RationalCoeffs,
    Tolerance,
    bernoulli_fraction,
    fp_slop,
    _hurwitz_core,
)

_M_MAX = 12


class ZetaKind(Enum):
    ZETA = "zeta"
    HURWITZ = "hurwitz"


@dataclass(frozen=True)
class ZetaTerm:
    """coefficient * [2^-s if two_pow_neg_s] * zeta(s - s_shift[, alpha])."""

    coefficient: Fraction
    s_shift: int
    kind: ZetaKind = ZetaKind.ZETA
    alpha: float = None
    two_pow_neg_s: bool = False

    def __post_init__(self):
        if not isinstance(self.coefficient, Fraction):
            raise DomainError("term coefficient must be a Fraction")
        if self.coefficient == 0:
            raise DomainError("term coefficient must be nonzero")
        if not isinstance(self.s_shift, int) or self.s_shift < 0:
            raise DomainError("s_shift must be a nonnegative integer")
        if self.kind is ZetaKind.ZETA:
            if self.alpha is not None:
                raise DomainError("plain zeta terms take no alpha")
        else:
            if self.alpha is None or not math.isfinite(self.alpha) or self.alpha <= BOUNDARY_MARGIN:
                raise DomainError("hurwitz terms require alpha > 0")

    def to_json_dict(self):
        return {
            "coefficient": str(self.coefficient),
            "kind": self.kind.value,
            "s_shift": self.s_shift,
            "alpha": self.alpha,
            "two_pow_neg_s": self.two_pow_neg_s,
        }


@dataclass(frozen=True)
class ZetaCombination:
    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise DomainError("combination must contain at least one term")
        for t in self.terms:
            if not isinstance(t, ZetaTerm):
                raise DomainError("combination entries must be ZetaTerm")

    def max_shift(self):
        return max(t.s_shift for t in self.terms)

    def evaluate_with_bound(self, s, tol):
        """(value, certified_bound) at exponent s; every shifted exponent must
        stay inside the zeta domain s - shift > 1."""
        if not isinstance(tol, Tolerance):
            raise DomainError("tol must be a Tolerance")
        if not math.isfinite(s):
            raise DomainError("s must be finite")
        for t in self.terms:
            if s - t.s_shift - 1.0 <= BOUNDARY_MARGIN:
                raise DomainError(
                    f"combination needs s > {t.s_shift + 1}, got s = {s}"
                )
        pow2 = 2.0 ** -s
        n = len(self.terms)
        acc = NSum()
        err = 0.0
        for t in self.terms:
            w = abs(float(t.coefficient)) * (pow2 if t.two_pow_neg_s else 1.0)
            target = 0.45 * tol.abs_tol / (n * w) if w > 0 else tol.abs_tol
            alpha = 1.0 if t.kind is ZetaKind.ZETA else t.alpha
            v, b = _hurwitz_core(s - t.s_shift, alpha, target)
            scale = float(t.coefficient) * (pow2 if t.two_pow_neg_s else 1.0)
            acc.add(scale * v)
            err += w * b
        bound = err + fp_slop(2.0 * acc.gross)
        if bound > tol.abs_tol:
            raise DomainError(
                "requested tolerance is unattainable in double precision for this combination"
            )
        return acc.total(), bound

    def evaluate(self, s, tol):
        return self.evaluate_with_bound(s, tol)[0]

    def to_json_dict(self):
        return {"terms": [t.to_json_dict() for t in self.terms]}


def _frac_term(coeff, shift, kind=ZetaKind.ZETA, alpha=None, flag=False):
    return ZetaTerm(Fraction(coeff), shift, kind, alpha, flag)


def _combo(pairs):
    # drop zero coefficients so invariants hold for edge parameter values
    terms = tuple(t for t in pairs if t is not None)
    return ZetaCombination(terms)


# ---------------------------------------------------------------------------
# Coefficient families.

def eulerian_polynomial(m):
    """Eulerian numbers A(m, 0..m-1) as an exact integer coefficient vector."""
    if not isinstance(m, int) or m < 1 or m > _M_MAX:
        raise DomainError(f"eulerian_polynomial requires integer m in [1, {_M_MAX}]")
    row = [1]
    for k in range(2, m + 1):
        prev = row
        row = [0] * k
        for j in range(k):
            left = (j + 1) * prev[j] if j < len(prev) else 0
            right = (k - j) * prev[j - 1] if j - 1 >= 0 else 0
            row[j] = left + right
    return RationalCoeffs(
        numerators=tuple(row), denominators=tuple(1 for _ in row), offset=0
    )


def faulhaber_coeffs(m):
    """Coefficients of the polynomial equal to sum(k^m, k=1..n), powers of n.

    Leading zero powers are trimmed into the offset, e.g. m = 3 gives
    offset 2 with coefficients (1/4, 1/2, 1/4).
    """
    if not isinstance(m, int) or m < 0 or m > _M_MAX:
        raise DomainError(f"faulhaber_coeffs requires integer m in [0, {_M_MAX}]")
    deg = m + 1
    poly = [Fraction(0)] * (deg + 1)
    for k in range(deg + 1):
        c = Fraction(math.comb(deg, k)) * bernoulli_fraction(k)
        for i in range(deg - k + 1):
            poly[i] += c * math.comb(deg - k, i)
    # remove the constant so the polynomial vanishes at n = 0
    poly[0] -= sum(Fraction(math.comb(deg, k)) * bernoulli_fraction(k) for k in range(deg + 1))
    fracs = [c / deg for c in poly]
    return RationalCoeffs.from_fractions(fracs, offset=0, trim=True)


def _faulhaber_fracs(m):
    rc = faulhaber_coeffs(m)
    # re-inflate to a dense power->coefficient map starting at power 0
    dense = [Fraction(0)] * (m + 2)
    for i, f in enumerate(rc.as_fractions()):
        dense[rc.offset + i] = f
    return dense


def euler_polynomial_fracs(m):
    """Euler polynomial E_m(x) coefficients, ascending powers, exact."""
    if not isinstance(m, int) or m < 0 or m > _M_MAX:
        raise DomainError(f"euler_polynomial requires integer m in [0, {_M_MAX}]")
    coeffs = [Fraction(1)]
    for k in range(1, m + 1):
        integ = [Fraction(0)] + [c / (i + 1) for i, c in enumerate(coeffs)]
        poly = [Fraction(k) * c for c in integ]
        # constant fixed by E_k(0) = 2(1 - 2^(k+1)) B_{k+1} / (k+1)
        poly[0] = Fraction(2 * (1 - 2 ** (k + 1))) * bernoulli_fraction(k + 1) / (k + 1)
        coeffs = poly
    return coeffs


# ---------------------------------------------------------------------------
# Combination builders.  Each one is the exact finite form of the matching
# infinite sum; evaluation happens through ZetaCombination.

def kappa_combination():
    """sum over k >= 1 of zeta(s, k)  ==  zeta(s-1)."""
    return _combo([_frac_term(1, 1)])


def kappa_alt_combination():
    """sum over k >= 1 of (-1)^(k-1) zeta(s, k)  ==  (1 - 2^-s) zeta(s)."""
    return _combo([
        _frac_term(1, 0),
        _frac_term(-1, 0, flag=True),
    ])


def shifted_combination(a):
    """sum over k >= 0 of zeta(s, k+a)  ==  zeta(s-1, a) + (1-a) zeta(s, a)."""
    _require_offset(a, "shifted_combination")
    terms = [_frac_term(1, 1, ZetaKind.HURWITZ, float(a))]
    lin = Fraction(1) - _exact_fraction(a)
    if lin != 0:
        terms.append(ZetaTerm(lin, 0, ZetaKind.HURWITZ, float(a)))
    return _combo(terms)


def shifted_alt_combination(a):
    """sum over k >= 0 of (-1)^k zeta(s, k+a)  ==  2^-s zeta(s, a/2)."""
    _require_offset(a, "shifted_alt_combination")
    return _combo([_frac_term(1, 0, ZetaKind.HURWITZ, float(a) / 2.0, True)])


def moment_combination(m):
    """sum over k >= 1 of k^m zeta(s, k) as zeta values at shifted exponents.

    The weight polynomial sum(j^m, j<=n) supplies the coefficients: the k^m
    weighted sum telescopes into sum_d c_d zeta(s-d) over its powers.
    """
    if not isinstance(m, int) or m < 0 or m > _M_MAX:
        raise DomainError(f"moment_combination requires integer m in [0, {_M_MAX}]")
    dense = _faulhaber_fracs(m)
    terms = []
    for d in range(1, m + 2):
        if dense[d] != 0:
            terms.append(ZetaTerm(dense[d], d))
    return _combo(terms)


def moment_alt_combination(m):
    """Alternating k^m-weighted sum; closed forms exist only for m in {1, 2}."""
    if not isinstance(m, int) or m < 0 or m > _M_MAX:
        raise DomainError(f"moment_alt_combination requires integer m in [0, {_M_MAX}]")
    if m == 0:
        raise NoClosedFormError(
            "m = 0 alternating sum is the plain alternating family; use kappa_alt_closed"
        )
    if m == 1:
        return _combo([
            _frac_term(1, 1, ZetaKind.HURWITZ, 0.5, True),
            _frac_term(Fraction(1, 2), 0, ZetaKind.HURWITZ, 0.5, True),
            _frac_term(-1, 1, flag=True),
        ])
    if m == 2:
        return _combo([
            _frac_term(Fraction(1, 2), 1),
            _frac_term(-2, 1, flag=True),
            _frac_term(Fraction(1, 2), 2),
            _frac_term(-4, 2, flag=True),
        ])
    raise NoClosedFormError(
        f"no closed form for the alternating moment sum with m = {m}"
    )


def even_arg_moment_combination(m):
    """k^m-weighted sum over zeta(s, 2k); closed forms for m in {1, 2}."""
    if not isinstance(m, int) or m < 0 or m > _M_MAX:
        raise DomainError(f"even_arg_moment_combination requires integer m in [0, {_M_MAX}]")
    if m == 1:
        return _combo([
            _frac_term(Fraction(1, 8), 1),
            _frac_term(Fraction(1, 4), 1, flag=True),
            _frac_term(Fraction(1, 8), 2),
            _frac_term(Fraction(-1, 4), 1, ZetaKind.HURWITZ, 0.5, True),
            _frac_term(Fraction(-1, 8), 0, ZetaKind.HURWITZ, 0.5, True),
        ])
    if m == 2:
        return _combo([
            _frac_term(Fraction(-1, 24), 1),
            _frac_term(Fraction(1, 4), 1, flag=True),
            _frac_term(Fraction(1, 2), 2, flag=True),
            _frac_term(Fraction(1, 24), 3),
        ])
    raise NoClosedFormError(
        f"no closed form for the even-argument moment sum with m = {m}"
    )


# ---------------------------------------------------------------------------
# Value-level wrappers.

_DEFAULT_CLOSED_TOL = Tolerance(1e-12)


def kappa_closed(s, *, tol=_DEFAULT_CLOSED_TOL):
    _require_s(s, 2.0, "kappa_closed")
    return kappa_combination().evaluate(s, tol)


def kappa_alt_closed(s, *, tol=_DEFAULT_CLOSED_TOL):
    _require_s(s, 1.0, "kappa_alt_closed")
    return kappa_alt_combination().evaluate(s, tol)


def shifted_closed(s, a, *, tol=_DEFAULT_CLOSED_TOL):
    _require_s(s, 2.0, "shifted_closed")
    return shifted_combination(a).evaluate(s, tol)


def shifted_alt_closed(s, a, *, tol=_DEFAULT_CLOSED_TOL):
    _require_s(s, 1.0, "shifted_alt_closed")
    return shifted_alt_combination(a).evaluate(s, tol)


def moment_closed(s, m, *, tol=_DEFAULT_CLOSED_TOL):
    combo = moment_combination(m)
    _require_s(s, m + 2.0, "moment_closed")
    return combo.evaluate(s, tol)


def moment_alt_closed(s, m, *, tol=_DEFAULT_CLOSED_TOL):
    combo = moment_alt_combination(m)
    _require_s(s, m + 1.0, "moment_alt_closed")
    return combo.evaluate(s, tol)


def even_arg_moment_closed(s, m, *, tol=_DEFAULT_CLOSED_TOL):
    combo = even_arg_moment_combination(m)
    _require_s(s, m + 2.0, "even_arg_moment_closed")
    return combo.evaluate(s, tol)


def combination_split(s, m, *, tol=_DEFAULT_CLOSED_TOL):
    """Two independent routes to the even-argument sum: the half-difference of
    the plain and alternating moment closed forms, and its direct closed form.
    Returns (difference_route, direct_route)."""
    if m not in (1, 2):
        raise NoClosedFormError("combination_split needs both routes; only m in {1, 2}")
    _require_s(s, m + 2.0, "combination_split")
    half = Tolerance(tol.abs_tol * 0.5, tol.rel_tol)
    plain = moment_closed(s, m, tol=half)
    alt = moment_alt_closed(s, m, tol=half)
    via_diff = 2.0 ** (-m - 1) * (plain - alt)
    direct = even_arg_moment_closed(s, m, tol=half)
    return via_diff, direct


def _require_s(s, threshold, name):
    if not math.isfinite(s) or s - threshold <= BOUNDARY_MARGIN:
        raise DomainError(f"{name} requires s > {threshold:g}")


def _require_offset(a, name):
    if not math.isfinite(a) or a <= BOUNDARY_MARGIN:
        raise DomainError(f"{name} requires a > 0")


def _exact_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(float(x))
