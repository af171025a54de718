"""Elementary reference brackets used by the tests.

Everything here is deliberately low-tech: partial sums plus convexity
brackets, and a Laplace-integral route through the package's tanh-sinh
integrator.  None of it touches the Euler-Maclaurin corrections or the
Bernoulli table that the library's own evaluators rely on, so agreement is
a genuine two-route check rather than the same code grading itself.
"""

import math

from zetasums import Sign, gamma_fn
from zetasums.verification import _tanh_sinh


def sandwich_hurwitz(s, alpha, n=10000):
    """Rigorous bracket (lo, hi) for sum_{k>=0} (k+alpha)^(-s).

    The summand f(x) = (x+alpha)^(-s) is convex and decreasing, so the
    midpoint rule under-estimates and the trapezoid rule over-estimates
    each integral cell:

      tail from n  <= integral from n-1/2  (midpoint)
      tail from n  >= integral from n      + f(n)/2  (trapezoid)

    Width shrinks like s * (n+alpha)^(-s-1), ample at the default n.
    """
    partial = math.fsum((k + alpha) ** -s for k in range(n))
    z = n + alpha
    lo = partial + z ** (1.0 - s) / (s - 1.0) + 0.5 * z ** -s
    hi = partial + (z - 0.5) ** (1.0 - s) / (s - 1.0)
    # the exact bracket can be narrower than double rounding; pad it out
    pad = 8e-16 * (partial + abs(lo - partial))
    assert lo <= hi + pad
    return lo - pad, hi + pad


def sandwich_lerch(zv, s, alpha, n=4000):
    """Bracket (lo, hi) for sum_{k>=0} z^k (k+alpha)^(-s), |z| < 1.

    Geometric remainder for positive z; for negative z the next term
    brackets the limit once magnitudes decrease (true for all k here).
    """
    assert abs(zv) < 1.0
    partial = math.fsum(zv ** k * (k + alpha) ** -s for k in range(n))
    if zv >= 0.0:
        rem = zv ** n * (n + alpha) ** -s / (1.0 - zv)
        return partial, partial + rem
    nxt = zv ** n * (n + alpha) ** -s
    return tuple(sorted((partial, partial + nxt)))


def in_bracket(value, lo, hi, slack=0.0):
    return lo - slack <= value <= hi + slack


def quad_family_sum(s, a, b, c, sign, target=1e-11):
    """Independent value of sum_{k>=0} (+-1)^k e^(-ck) zeta(s, ka+b).

    Uses the Laplace route: the double sum collapses to

      (1/Gamma(s)) * integral_0^inf x^(s-1) e^(-bx)
                       / ((1 - e^(-x)) * (1 -+ e^(-(c+ax)))) dx

    evaluated by the package's tanh-sinh rule on (0, X) with an elementary
    bound on the discarded (X, inf) tail.  Returns (value, err_bound).
    """
    plus = sign is Sign.PLUS
    gam = gamma_fn(s)
    target_int = target * gam / 10.0

    x0 = max(8.0, 4.0 * (s - 1.0) / b)
    cutoff = x0
    for _ in range(200):
        # crude sup of the non-polynomial factors past the cutoff
        m1 = 1.0 / -math.expm1(-cutoff)
        if plus:
            m2 = 1.0 / -math.expm1(-(c + a * cutoff))
        else:
            m2 = 1.0
        # integral_X^inf x^(s-1) e^(-bx) dx <= X^(s-1) e^(-bX) / b / (1 - (s-1)/(bX))
        geo = 1.0 - (s - 1.0) / (b * cutoff)
        tail = cutoff ** (s - 1.0) * math.exp(-b * cutoff) / b
        if geo > 0.5:
            tail *= m1 * m2 / geo
            if tail <= target_int / 10.0:
                break
        cutoff *= 1.5
    else:
        raise AssertionError("no usable cutoff for the reference integral")

    def integrand(x):
        den1 = -math.expm1(-x)
        den2 = -math.expm1(-(c + a * x))  # = 1 - e^(-(c+ax)), no cancellation
        if den1 <= 0.0 or den2 <= 0.0:
            return 0.0  # x underflowed; the node weight is ~1e-300 anyway
        base = x ** (s - 1.0) * math.exp(-b * x) / den1
        return base / den2 if plus else base / (2.0 - den2)

    val, err = _tanh_sinh(integrand, cutoff, 12, target_int)
    return val / gam, (err + tail) / gam
