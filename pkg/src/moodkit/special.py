"""Tail probabilities for the t and F distributions, plus their kernels.

The heavy lifting (ln-gamma, regularized incomplete beta) lives in a small
compiled extension with a pure-Python twin.  The compiled module is chosen
at import when it built successfully; set MOODKIT_PURE_PYTHON=1 to force the
fallback.  ``BACKEND`` names the active implementation.
"""

from __future__ import annotations

import os

from .errors import DomainError

if os.environ.get("MOODKIT_PURE_PYTHON"):
    from . import _kernels_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl
        BACKEND = "python"


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function; x must be positive."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return _impl.ln_gamma(x)


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta I_x(a, b); 0 <= x <= 1, a > 0, b > 0.

    Nondecreasing in x with I_0 = 0 and I_1 = 1; accurate to ~1e-13 absolute.
    """
    x = float(x)
    a = float(a)
    b = float(b)
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"reg_inc_beta requires a, b > 0, got a={a!r} b={b!r}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"reg_inc_beta requires 0 <= x <= 1, got {x!r}")
    v = _impl.reg_inc_beta(x, a, b)
    # CF rounding can leave the result an ulp or two outside [0,1].
    return min(1.0, max(0.0, v))


def _check_df(df, label: str) -> int:
    if isinstance(df, bool) or not isinstance(df, int):
        raise DomainError(f"{label} must be a positive integer, got {df!r}")
    if df < 1:
        raise DomainError(f"{label} must be >= 1, got {df!r}")
    return df


def t_two_sided_p(t: float, df: int) -> float:
    """P(|T_df| >= |t|) for the Student t distribution.

    Evaluated as I_x(df/2, 1/2) with x = df/(df + t^2), so t=0 gives exactly 1
    and the result is even in t.
    """
    df = _check_df(df, "df")
    t = float(t)
    if t != t:
        raise DomainError("t statistic is NaN")
    if t == 0.0:
        return 1.0
    x = df / (df + t * t)
    return reg_inc_beta(x, 0.5 * df, 0.5)


def f_upper_p(f: float, df1: int, df2: int) -> float:
    """P(F_{df1,df2} >= f); strictly decreasing in f, 1 at f = 0."""
    df1 = _check_df(df1, "df1")
    df2 = _check_df(df2, "df2")
    f = float(f)
    if not f >= 0.0:
        raise DomainError(f"f statistic must be >= 0, got {f!r}")
    x = df2 / (df2 + df1 * f)
    return reg_inc_beta(x, 0.5 * df2, 0.5 * df1)
