"""Minimal SVG scatter plots of angle pairs on [0, 2*pi)^2."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .circ_dist import TWO_PI

_TICKS = [(0.0, "0"), (0.5 * np.pi, "π/2"), (np.pi, "π"), (1.5 * np.pi, "3π/2"), (TWO_PI, "2π")]


def scatter_svg(theta, phi, size=360, margin=48, radius=1.8, title=None,
                xlabel="θ", ylabel="φ"):
    """Render ``(theta, phi)`` pairs as an SVG document.

    The plotting square spans [0, 2*pi] on both axes with ticks at multiples
    of pi/2.  Each point becomes one ``<circle>`` element; axes and ticks use
    only lines, a rect and text.
    """
    theta = np.asarray(theta, dtype=float).ravel()
    phi = np.asarray(phi, dtype=float).ravel()
    if theta.shape != phi.shape:
        raise ValueError("theta and phi must have the same length")
    width = size + 2 * margin

    def sx(t):
        return margin + size * t / TWO_PI

    def sy(p):
        return margin + size * (1.0 - p / TWO_PI)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{width}" '
        f'viewBox="0 0 {width} {width}">',
        f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" '
        'fill="white" stroke="black" stroke-width="1"/>',
        '<g font-family="sans-serif" font-size="11" fill="black">',
    ]
    for value, label in _TICKS:
        x, y = sx(value), sy(value)
        base = margin + size
        out.append(f'<line x1="{x:.3f}" y1="{base}" x2="{x:.3f}" y2="{base + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.3f}" y="{base + 18}" text-anchor="middle">{label}</text>')
        out.append(f'<line x1="{margin - 5}" y1="{y:.3f}" x2="{margin}" y2="{y:.3f}" stroke="black"/>')
        out.append(f'<text x="{margin - 8}" y="{y + 4:.3f}" text-anchor="end">{label}</text>')
    out.append(f'<text x="{margin + size / 2}" y="{width - 8}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="12" y="{margin + size / 2}" text-anchor="middle">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{margin + size / 2}" y="{margin - 16}" text-anchor="middle">{escape(title)}</text>')
    out.append("</g>")
    out.append('<g fill="black" fill-opacity="0.7">')
    for t, p in zip(theta, phi):
        out.append(f'<circle cx="{sx(t):.3f}" cy="{sy(p):.3f}" r="{radius}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
