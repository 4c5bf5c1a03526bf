"""Quadrature helpers: cached Gauss-Legendre panels, a log-space variant for
integrands given by their logarithm, and a tanh-sinh rule used as the second,
independent strategy in dual-quadrature checks."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError


@lru_cache(maxsize=16)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> float:
    """Fixed n-node Gauss-Legendre estimate of the integral of f over [a, b]."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    t = 0.5 * (a + b) + half * x
    return half * float(np.dot(w, f(t)))


def log_gauss_legendre(log_f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> float:
    """log of the integral of exp(log_f) over [a, b], assembled by
    log-sum-exp so integrands far below the underflow line stay exact."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    t = 0.5 * (a + b) + half * x
    logs = log_f(t) + np.log(w * half)
    m = float(np.max(logs))
    if m == -math.inf:
        return -math.inf
    return m + math.log(float(np.sum(np.exp(logs - m))))


def log_integral_doubling(
    log_f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    target_rel: float,
    start_nodes: int = 64,
    max_nodes: int = 1024,
) -> tuple[float, float]:
    """Doubling Gauss-Legendre in log space until two successive panel sizes
    agree; returns (log_value, est_rel_err)."""
    n = start_nodes
    prev = log_gauss_legendre(log_f, a, b, n)
    rel = math.inf
    while n < max_nodes:
        n *= 2
        cur = log_gauss_legendre(log_f, a, b, n)
        # |exp(prev - cur) - 1| is the relative change of the integral
        rel = abs(math.expm1(prev - cur)) if cur != -math.inf else 0.0
        prev = cur
        if rel <= target_rel:
            break
    return prev, rel


def tanh_sinh(
    f: Callable[[float], float],
    a: float,
    b: float,
    target_abs: float = 1e-13,
    max_level: int = 12,
) -> float:
    """Tanh-sinh (double exponential) quadrature on a finite interval.

    Level k uses step h = 1/2^k; levels are refined until two successive
    estimates differ by less than target_abs.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)

    def node(t: float) -> tuple[float, float]:
        st = math.sinh(t)
        x = math.tanh(0.5 * math.pi * st)
        w = 0.5 * math.pi * math.cosh(t) / math.cosh(0.5 * math.pi * st) ** 2
        return x, w

    def pair_sum(t: float) -> float:
        x, w = node(t)
        lo = mid - half * x
        hi = mid + half * x
        s = 0.0
        if lo > a:
            s += w * f(lo)
        if hi < b:
            s += w * f(hi)
        return s

    tmax = 4.0  # abscissas are within ~1e-86 of the endpoints there
    h = 1.0
    total = math.pi / 2.0 * f(mid)  # t = 0 node: x=0, w=pi/2
    k = 1
    while k * h <= tmax:
        total += pair_sum(k * h)
        k += 1
    prev = half * h * total
    for level in range(1, max_level + 1):
        h *= 0.5
        k = 1
        while k * h <= tmax:
            total += pair_sum(k * h)  # odd multiples only: the rest were done
            k += 2
        cur = half * h * total
        # the absolute target cannot beat evaluation noise on large integrals
        if level >= 3 and abs(cur - prev) <= max(target_abs, 1e-14 * abs(cur)):
            return cur
        prev = cur
    raise ConvergenceError("tanh-sinh quadrature did not reach the target")


def adaptive_quad(f: Callable[[float], float], a: float, b: float, target_abs: float = 1e-13) -> float:
    """Adaptive Gauss-Kronrod on a finite interval (scipy's QUADPACK)."""
    val, _ = quad(f, a, b, epsabs=target_abs, epsrel=1e-13, limit=400)
    return val
