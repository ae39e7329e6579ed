"""Gamma-function ratios without overflow.

Every conversion-matrix entry in this package is a product of ratios
Γ(x)/Γ(y) whose arguments grow with the degree.  The individual gamma
values overflow double precision past 171, so ratios are evaluated pairwise:

* both arguments at least 20 and close: the asymptotic series

      log Γ(z+a) − log Γ(z+b) = (a−b) log z
          + Σ_{n≥2} (−1)^n (B_n(a) − B_n(b)) / (n(n−1) z^{n−1}),

  with z the smaller argument and B_n the Bernoulli polynomials;
* otherwise, both arguments below 171: ``scipy.special.gamma`` directly;
* anything else: ``gammaln`` differencing with the sign tracked by
  ``gammasgn``.

Products of several pairs carry a (mantissa, binary exponent) pair so that
intermediate magnitudes never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np
from scipy import special as sc

from .errors import ContractViolation, PoleError

__all__ = [
    "GammaRatioSpec",
    "lam",
    "lambda_sequence",
    "gamma_ratio",
    "gamma_quotient",
    "pochhammer_over_factorial",
]

_DIRECT_MAX = 171.0
_ASY_MIN = 20.0
_ASY_MAX_GAP = 50.0
_NTERMS = 30
_BERNOULLI = sc.bernoulli(_NTERMS)
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class GammaRatioSpec:
    """Π Γ(base + u_i) / Π Γ(base + v_j)."""

    numerator_shifts: Sequence[float] = field(default_factory=tuple)
    denominator_shifts: Sequence[float] = field(default_factory=tuple)
    base: float = 0.0


def _bernoulli_poly(n: int, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    for k in range(n + 1):
        if _BERNOULLI[k] != 0.0:
            out = out + comb(n, k) * _BERNOULLI[k] * x ** (n - k)
    return out


def _asy_correction(z: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Σ_{n≥2} (−1)^n (B_n(a) − B_n(b)) / (n(n−1) z^{n−1})."""
    # Shift pairs repeat across a symbol array; evaluate Bernoulli terms per unique pair.
    a = np.broadcast_to(a, np.shape(z)).ravel()
    b = np.broadcast_to(b, np.shape(z)).ravel()
    if a.size and (a == a[0]).all() and (b == b[0]).all():
        ua, ub = a[:1], b[:1]
        inv = np.zeros(np.shape(z), dtype=np.intp)
    else:
        keys, inv = np.unique(a + 1j * b, return_inverse=True)
        ua, ub = keys.real, keys.imag
        inv = inv.reshape(np.shape(z))
    coeffs = np.empty((_NTERMS - 1, ua.size))
    for n in range(2, _NTERMS + 1):
        coeffs[n - 2] = (-1) ** n * (_bernoulli_poly(n, ua) - _bernoulli_poly(n, ub)) / (n * (n - 1))
    w = 1.0 / z
    s = np.zeros_like(z)
    for row in coeffs[::-1]:
        s = (s + row[inv]) * w
    return s


def _asy_split(z: np.ndarray, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Γ(z+a)/Γ(z+b) for large z as (mantissa, exponent)."""
    z, a, b = np.broadcast_arrays(z, a, b)
    corr = _asy_correction(z, a, b)
    d = a - b
    with np.errstate(over="ignore", under="ignore"):
        val = np.power(z, d) * np.exp(corr)
    m, e = _split(val)
    bad = ~(np.isfinite(val) & (val > 0))
    if bad.any():
        m[bad], e[bad] = _from_log((d * np.log(z) + corr)[bad], np.ones(bad.sum()))
    return m, e


def _split(value: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m, e = np.frexp(value)
    return m, e.astype(np.int64)


def _from_log(logmag: np.ndarray, sign: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    e = np.floor(logmag / _LN2)
    m = sign * np.exp(logmag - e * _LN2)
    m2, e2 = _split(m)
    return m2, e2 + e.astype(np.int64)


def _is_pole(x: np.ndarray) -> np.ndarray:
    return (x <= 0) & (x == np.floor(x))


def _check_poles(*args: np.ndarray) -> None:
    for x in args:
        if np.any(_is_pole(x)):
            bad = x[_is_pole(x)].ravel()[0]
            raise PoleError(f"gamma function pole at argument {bad:g}")


def _ratio_pair(x: np.ndarray, y: np.ndarray, base=None, u=None, v=None) -> tuple[np.ndarray, np.ndarray]:
    """Γ(x)/Γ(y) as (mantissa, exponent); arguments already pole-checked.

    With ``base`` given, x = base + u and y = base + v, and the asymptotic
    branch works from the unrounded split.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    mant = np.empty(x.shape)
    expo = np.zeros(x.shape, dtype=np.int64)

    zmin = np.minimum(x, y)
    gap = np.abs(x - y)
    # The series beats a quotient of two large Γ values wherever it applies.
    asy = (zmin >= _ASY_MIN) & (gap <= np.minimum(zmin / 8.0, _ASY_MAX_GAP))
    direct = ~asy & (np.maximum(np.abs(x), np.abs(y)) < _DIRECT_MAX)
    if base is not None:
        base, u, v = np.broadcast_arrays(*(np.asarray(t, dtype=float) for t in (base, u, v)))
        shift = np.maximum(np.abs(u), np.abs(v))
        split_ok = asy & (base >= _ASY_MIN) & (shift <= np.minimum(base / 8.0, _ASY_MAX_GAP))
    else:
        split_ok = np.zeros(x.shape, dtype=bool)
    rest = ~(direct | asy)

    if direct.any():
        mant[direct], expo[direct] = _split(sc.gamma(x[direct]) / sc.gamma(y[direct]))
    if split_ok.any():
        mant[split_ok], expo[split_ok] = _asy_split(base[split_ok], u[split_ok], v[split_ok])
    plain = asy & ~split_ok
    if plain.any():
        xa, ya = x[plain], y[plain]
        za = zmin[plain]
        mant[plain], expo[plain] = _asy_split(za, xa - za, ya - za)
    if rest.any():
        xr, yr = x[rest], y[rest]
        logmag = sc.gammaln(xr) - sc.gammaln(yr)
        sign = sc.gammasgn(xr) * sc.gammasgn(yr)
        mant[rest], expo[rest] = _from_log(logmag, sign)
    return mant, expo


def _single(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 170.0
    mant = np.empty(x.shape)
    expo = np.zeros(x.shape, dtype=np.int64)
    if small.any():
        mant[small], expo[small] = _split(sc.gamma(x[small]))
    if (~small).any():
        xs = x[~small]
        mant[~small], expo[~small] = _from_log(sc.gammaln(xs), sc.gammasgn(xs))
    return mant, expo


def gamma_quotient(numer: Sequence, denom: Sequence, base=None) -> np.ndarray:
    """Elementwise Π Γ(numer[i]) / Π Γ(denom[i]).

    Arguments are paired in the order given (``numer[i]`` with ``denom[i]``),
    so callers should line up arguments that grow together.  Unpaired
    leftovers are evaluated on their own.

    With ``base`` given, ``numer`` and ``denom`` hold shifts and the
    arguments are base + shift.  Large arguments then keep the exact
    difference of each pair, so base + u and base + v need not be
    representable.

    Raises
    ------
    PoleError
        If any argument is a nonpositive integer.
    """
    numer = [np.asarray(a, dtype=float) for a in numer]
    denom = [np.asarray(a, dtype=float) for a in denom]
    if base is not None:
        base = np.asarray(base, dtype=float)
        num_shift, den_shift = numer, denom
        numer = [base + a for a in num_shift]
        denom = [base + a for a in den_shift]
    _check_poles(*numer, *denom)
    shape = np.broadcast_shapes(*(a.shape for a in numer + denom)) if numer or denom else ()
    mant = np.ones(shape)
    expo = np.zeros(shape, dtype=np.int64)

    def absorb(m, e):
        nonlocal mant, expo
        mant, e2 = _split(mant * m)
        expo = expo + e + e2

    npair = min(len(numer), len(denom))
    for i in range(npair):
        if base is None:
            absorb(*_ratio_pair(numer[i], denom[i]))
        else:
            absorb(*_ratio_pair(numer[i], denom[i], base, num_shift[i], den_shift[i]))
    for x in numer[npair:]:
        absorb(*_single(x))
    for y in denom[npair:]:
        m, e = _single(y)
        m_inv, e_inv = _split(1.0 / m)
        absorb(m_inv, e_inv - e)
    # Saturates to inf / 0 past the double range.
    with np.errstate(over="ignore", under="ignore"):
        return np.ldexp(mant, np.clip(expo, -2000, 2000).astype(np.int32))


def gamma_ratio(spec: GammaRatioSpec) -> float:
    """Evaluate a :class:`GammaRatioSpec` to a signed float.

    Shifts are sorted before pairing so that the closest numerator and
    denominator arguments are divided first.
    """
    num = sorted(float(u) for u in spec.numerator_shifts)
    den = sorted(float(v) for v in spec.denominator_shifts)
    return float(gamma_quotient(num, den, base=float(spec.base)))


def lam(z):
    """Λ(z) = Γ(z + 1/2) / Γ(z + 1) for real z ≥ 0 (scalar or array)."""
    za = np.asarray(z, dtype=float)
    if np.any(za < 0) or np.any(np.isnan(za)):
        raise ContractViolation("lam requires z >= 0")
    big = za >= _ASY_MIN
    out = np.empty(za.shape)
    if np.any(~big):
        out[~big] = gamma_quotient([za[~big] + 0.5], [za[~big] + 1.0])
    if np.any(big):
        # Base and shifts stay separate so z + 1/2 is never rounded.
        out[big] = np.ldexp(*_asy_split(za[big], np.array(0.5), np.array(1.0)))
    return float(out) if out.ndim == 0 else out


def lambda_sequence(n: int) -> np.ndarray:
    """Λ(0), Λ(1/2), Λ(1), …, Λ((n−1)/2)."""
    if n < 1:
        raise ContractViolation("lambda_sequence needs n >= 1")
    return np.asarray(lam(np.arange(n) / 2.0))


def pochhammer_over_factorial(a: float, m: np.ndarray) -> np.ndarray:
    """(a)_m / m! = Γ(m + a) / (Γ(a) Γ(m + 1)) for integer m ≥ 0.

    Integer ``a`` (including the nonpositive ones, where Γ(a) has a pole)
    goes through the product recurrence, which terminates exactly.
    """
    m = np.asarray(m)
    if abs(a - round(a)) <= 1e-12:
        a = float(round(a))
        mmax = int(m.max()) if m.size else 0
        seq = np.empty(mmax + 1)
        seq[0] = 1.0
        if mmax:
            k = np.arange(1, mmax + 1)
            seq[1:] = np.cumprod((a + k - 1) / k)
        return seq[m]
    return gamma_quotient([a], [1.0], base=m) / sc.gamma(a)
