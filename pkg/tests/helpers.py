"""Test-only oracles kept independent of the package's exact-arithmetic paths.

The quadrature route evaluates posterior-mean integrals in plain floating
point with adaptive Simpson; no shared code with the polynomial expansion it
cross-checks.  The error target is relative, which needs a realistic estimate
of the integral's magnitude up front: sharply peaked integrands can make a
coarse scan underestimate it by orders, so a depth-limited first pass
integrates |f| for the scale before the tight pass runs.  A hard evaluation
budget turns any would-be runaway recursion into a loud error.
"""

_BUDGET = 2_000_000


def adaptive_simpson(f, a, b, rel_tol=1e-12, panels=64, max_depth=40):
    rough = _panel_run(lambda x: abs(f(x)), a, b, panels, rel_tol=1e-6,
                       scale=None, max_depth=10)
    return _panel_run(f, a, b, panels, rel_tol, scale=abs(rough), max_depth=max_depth)


def _panel_run(f, a, b, panels, rel_tol, scale, max_depth):
    h = (b - a) / panels
    xs = [a + i * h for i in range(panels)] + [b]
    fs = [f(x) for x in xs]
    mids = [f((xs[i] + xs[i + 1]) / 2) for i in range(panels)]
    wholes = [
        (xs[i + 1] - xs[i]) / 6 * (fs[i] + 4 * mids[i] + fs[i + 1])
        for i in range(panels)
    ]
    if scale is None:
        scale = sum(abs(w) for w in wholes)
    atol = max(scale, 1e-300) * rel_tol / panels
    budget = [_BUDGET]
    return sum(
        _simpson_step(f, xs[i], xs[i + 1], fs[i], mids[i], fs[i + 1],
                      wholes[i], atol, max_depth, budget)
        for i in range(panels)
    )


def _simpson_step(f, a, b, fa, fm, fb, whole, atol, depth, budget):
    budget[0] -= 1
    if budget[0] <= 0:
        raise RuntimeError("adaptive_simpson: evaluation budget exhausted "
                           f"(interval around [{a}, {b}])")
    m = (a + b) / 2
    lm, rm = (a + m) / 2, (m + b) / 2
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6 * (fa + 4 * flm + fm)
    right = (b - m) / 6 * (fm + 4 * frm + fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15 * atol:
        return left + right + delta / 15
    return (
        _simpson_step(f, a, m, fa, flm, fm, left, atol / 2, depth - 1, budget)
        + _simpson_step(f, m, b, fm, frm, fb, right, atol / 2, depth - 1, budget)
    )


def quadrature_posterior_mean(mode, n, x, rel_tol=1e-12):
    """Posterior mean of p under the triangle prior, by float quadrature."""
    w_left = 2.0 / mode
    w_right = 2.0 / (1.0 - mode)
    num = w_left * adaptive_simpson(
        lambda p: p ** (x + 2) * (1 - p) ** (n - x), 0.0, mode, rel_tol
    ) + w_right * adaptive_simpson(
        lambda p: p ** (x + 1) * (1 - p) ** (n - x + 1), mode, 1.0, rel_tol
    )
    den = w_left * adaptive_simpson(
        lambda p: p ** (x + 1) * (1 - p) ** (n - x), 0.0, mode, rel_tol
    ) + w_right * adaptive_simpson(
        lambda p: p**x * (1 - p) ** (n - x + 1), mode, 1.0, rel_tol
    )
    return num / den
