"""Minimal hand-rolled SVG emission for the histogram and scaling figures.

Only rect/polyline/line/text primitives, no plotting dependency; output is
deterministic for deterministic input.
"""

import math


def _fmt(x):
    return f"{x:.2f}"


class Panel:
    """One axes rectangle with data-space mapping and tick labels."""

    def __init__(self, x0, y0, width, height, xlim, ylim, title=""):
        self.x0, self.y0 = x0, y0
        self.width, self.height = width, height
        self.xlim, self.ylim = xlim, ylim
        self.title = title
        self.parts = []

    def px(self, x):
        a, b = self.xlim
        return self.x0 + (x - a) / (b - a) * self.width

    def py(self, y):
        a, b = self.ylim
        return self.y0 + self.height - (y - a) / (b - a) * self.height

    def frame(self, n_ticks=5):
        p = self.parts
        p.append(
            f'<rect x="{_fmt(self.x0)}" y="{_fmt(self.y0)}" width="{_fmt(self.width)}"'
            f' height="{_fmt(self.height)}" fill="none" stroke="black"/>'
        )
        for i in range(n_ticks + 1):
            fx = self.xlim[0] + (self.xlim[1] - self.xlim[0]) * i / n_ticks
            fy = self.ylim[0] + (self.ylim[1] - self.ylim[0]) * i / n_ticks
            x = self.px(fx)
            y = self.py(fy)
            p.append(
                f'<line x1="{_fmt(x)}" y1="{_fmt(self.y0 + self.height)}" x2="{_fmt(x)}"'
                f' y2="{_fmt(self.y0 + self.height + 4)}" stroke="black"/>'
            )
            p.append(
                f'<text x="{_fmt(x)}" y="{_fmt(self.y0 + self.height + 16)}"'
                f' font-size="10" text-anchor="middle">{fx:.3g}</text>'
            )
            p.append(
                f'<line x1="{_fmt(self.x0 - 4)}" y1="{_fmt(y)}" x2="{_fmt(self.x0)}"'
                f' y2="{_fmt(y)}" stroke="black"/>'
            )
            p.append(
                f'<text x="{_fmt(self.x0 - 6)}" y="{_fmt(y + 3)}" font-size="10"'
                f' text-anchor="end">{fy:.3g}</text>'
            )
        if self.title:
            p.append(
                f'<text x="{_fmt(self.x0 + self.width / 2)}" y="{_fmt(self.y0 - 8)}"'
                f' font-size="12" text-anchor="middle">{self.title}</text>'
            )

    def bars(self, edges, heights, color="#6699cc"):
        for i, h in enumerate(heights):
            x = self.px(edges[i])
            w = self.px(edges[i + 1]) - x
            y = self.py(h)
            hh = self.py(0.0) - y
            self.parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}"'
                f' height="{_fmt(hh)}" fill="{color}" stroke="white" stroke-width="0.5"/>'
            )

    def polyline(self, xs, ys, color="#cc3333", width=1.5):
        pts = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(xs, ys))
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}"'
            f' stroke-width="{width}"/>'
        )

    def dots(self, xs, ys, color="#333333", r=3.0):
        for x, y in zip(xs, ys):
            self.parts.append(
                f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" r="{r}"'
                f' fill="{color}"/>'
            )

    def hline(self, y, color="#888888"):
        self.parts.append(
            f'<line x1="{_fmt(self.x0)}" y1="{_fmt(self.py(y))}"'
            f' x2="{_fmt(self.x0 + self.width)}" y2="{_fmt(self.py(y))}"'
            f' stroke="{color}" stroke-dasharray="4 3"/>'
        )


def document(width, height, panels):
    body = "\n".join(part for panel in panels for part in panel.parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">\n<rect width="100%" height="100%"'
        f' fill="white"/>\n{body}\n</svg>\n'
    )


def beta_density(a, b, x):
    if x <= 0.0 or x >= 1.0:
        return 0.0
    logpdf = (
        (a - 1.0) * math.log(x)
        + (b - 1.0) * math.log1p(-x)
        + math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
    )
    return math.exp(logpdf)


def histogram_with_beta(values, fit, bins=40):
    """Fig-style histogram of normalized volumes with the fitted density."""
    lo, hi = 0.0, 1.0
    counts = [0] * bins
    for v in values:
        k = min(bins - 1, max(0, int((v - lo) / (hi - lo) * bins)))
        counts[k] += 1
    total = len(values)
    bw = (hi - lo) / bins
    heights = [c / (total * bw) for c in counts]
    edges = [lo + bw * i for i in range(bins + 1)]
    xs = [i / 400 for i in range(1, 400)]
    ys = [beta_density(fit.alpha, fit.beta, x) for x in xs]
    ymax = 1.1 * max(max(heights), max(ys))
    panel = Panel(
        60, 40, 480, 320, (lo, hi), (0.0, ymax),
        title=(
            f"n={fit.n}: normalized volume, Beta({fit.alpha:.2f}, {fit.beta:.2f}), "
            f"KS p={fit.p_value:.2g}"
        ),
    )
    panel.frame()
    panel.bars(edges, heights)
    panel.polyline(xs, ys)
    return document(600, 420, [panel])


def scaling_panels(scaling):
    """Three panels: alpha vs n, beta vs n, mean normalized volume vs n."""
    rows = scaling.rows
    ns = [r[0] for r in rows]
    alphas = [r[1] for r in rows]
    betas = [r[2] for r in rows]
    means = [r[4] for r in rows]
    lo_n, hi_n = min(ns) - 0.5, max(ns) + 0.5

    def fit_line(slope, intercept):
        return [lo_n, hi_n], [slope * lo_n + intercept, slope * hi_n + intercept]

    p1 = Panel(60, 40, 280, 280, (lo_n, hi_n), (0.0, 1.15 * max(alphas)),
               title=f"alpha ~ {scaling.alpha_slope:.2f} n {scaling.alpha_intercept:+.1f}")
    p1.frame()
    p1.polyline(*fit_line(scaling.alpha_slope, scaling.alpha_intercept), color="#cc3333")
    p1.dots(ns, alphas)

    p2 = Panel(420, 40, 280, 280, (lo_n, hi_n), (0.0, 1.15 * max(betas)),
               title=f"beta ~ {scaling.beta_slope:.2f} n {scaling.beta_intercept:+.1f}")
    p2.frame()
    p2.polyline(*fit_line(scaling.beta_slope, scaling.beta_intercept), color="#cc3333")
    p2.dots(ns, betas)

    p3 = Panel(780, 40, 280, 280, (lo_n, hi_n), (0.5, 0.8),
               title="mean normalized volume")
    p3.frame()
    p3.hline(math.log(2.0))
    p3.dots(ns, means)

    return document(1120, 380, [p1, p2, p3])
