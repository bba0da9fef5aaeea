"""Plain-file emitters: CSV point lists, SVG scatter plots, binary PPM sign maps."""

import numpy as np


def _fmt(v):
    return repr(float(v))


def write_points_csv(path, points):
    """Header ``x,y`` then one point per line, LF endings, '.' decimals."""
    pts = np.asarray(points).reshape(-1, 2)
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write("x,y\n")
        for x, y in pts:
            fh.write(f"{_fmt(x)},{_fmt(y)}\n")


def svg_scatter(points, y_stretch=1.0, radius=0.002, width=800, margin=0.02):
    """Minimal SVG with one circle per point.

    The view box is the data bounding box with the y-extent multiplied by
    ``y_stretch``, so the picture is stretched vertically by that factor.
    Image y grows downward, hence the sign flip.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts):
        lo, hi = pts.min(axis=0), pts.max(axis=0)
    else:
        lo, hi = np.zeros(2), np.ones(2)
    span = np.maximum(hi - lo, 1e-12)
    pad = margin * span
    x0, x1 = lo[0] - pad[0], hi[0] + pad[0]
    y0, y1 = -(hi[1] + pad[1]) * y_stretch, -(lo[1] - pad[1]) * y_stretch
    vw, vh = x1 - x0, y1 - y0
    height = max(1, int(round(width * vh / vw)))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(vw)} {_fmt(vh)}">',
        '<g fill="black" stroke="none">',
    ]
    out += [f'<circle cx="{_fmt(x)}" cy="{_fmt(-y * y_stretch)}" r="{_fmt(radius)}"/>' for x, y in pts]
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)


def write_svg(path, points, y_stretch=1.0, radius=0.002):
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(svg_scatter(points, y_stretch=y_stretch, radius=radius))


def grid_rgb(grid):
    """(nb, na, 3) uint8 image of a sign grid, rows top to bottom by decreasing b.

    Red is set where r1 > 0, green where r2 > 0, blue where the cell is valid
    and satisfies A1-A3.  Invalid cells are black.
    """
    ok = grid.valid
    red = np.where(ok & (grid.sign_r1 > 0), 255, 0)
    green = np.where(ok & (grid.sign_r2 > 0), 255, 0)
    blue = np.where(ok, np.where(grid.admissible, 255, 128), 0)
    rgb = np.stack([red, green, blue], axis=-1).astype(np.uint8)  # indexed [a, b]
    return rgb.transpose(1, 0, 2)[::-1]


def ppm_bytes(rgb):
    rgb = np.ascontiguousarray(rgb, dtype=np.uint8)
    h, w, _ = rgb.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + rgb.tobytes()


def read_ppm(data):
    """Parse a binary P6 image produced by :func:`ppm_bytes`."""
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise ValueError("not a binary P6 pixmap")
    w, h = (int(v) for v in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)


def write_grid_ppm(path, grid):
    with open(path, "wb") as fh:
        fh.write(ppm_bytes(grid_rgb(grid)))


def write_grid_csv(path, grid):
    """Columns a,b,r1,r2,valid; residuals are empty for invalid cells."""
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write("a,b,r1,r2,valid\n")
        for i, a in enumerate(grid.a_centers):
            for j, b in enumerate(grid.b_centers):
                ok = bool(grid.valid[i, j])
                r1 = _fmt(grid.r1[i, j]) if ok else ""
                r2 = _fmt(grid.r2[i, j]) if ok else ""
                fh.write(f"{_fmt(a)},{_fmt(b)},{r1},{r2},{int(ok)}\n")
