"""Basin pictures of a frame's map and PPM/PNG output."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .. import kernels
from .rational import QuadMap
from .sphere import INF, chordal, xyz_array

PALETTE = np.array([[200, 60, 60], [245, 245, 245], [25, 25, 25]], dtype=np.uint8)


def _cycle(f: QuadMap, start: complex, warmup: int = 512, keep: int = 64, tol: float = 1e-9) -> list[complex]:
    z = start
    for _ in range(warmup):
        z = f(z)
    out = [z]
    for _ in range(keep):
        z = f(z)
        if any(chordal(z, p) < tol for p in out):
            break
        out.append(z)
    return out


def basin_targets(f: QuadMap) -> tuple[np.ndarray, np.ndarray]:
    """Points of the limit cycles reached from the critical points 0 and infinity."""
    return xyz_array(_cycle(f, 0j)), xyz_array(_cycle(f, INF))


def label_grid(f: QuadMap, width: int = 256, height: int = 256, viewport: tuple[float, float, float, float] = (-2, 2, -2, 2),
               max_iter: int = 200, tol: float = 1e-3) -> np.ndarray:
    """``(height, width)`` array: 1 white basin, 2 black basin, 0 neither.

    Row 0 is the top of the viewport. Rows are split across threads; the
    result does not depend on the thread count.
    """
    x0, x1, y0, y1 = viewport
    xs = np.linspace(x0, x1, width)
    ys = np.linspace(y1, y0, height)
    z = xs[None, :] + 1j * ys[:, None]
    white, black = basin_targets(f)
    coeffs = np.array(f.coeffs, dtype=np.complex128)
    chunks = np.array_split(np.arange(height), min(height, kernels.worker_count()))
    chunks = [c for c in chunks if len(c)]

    def work(rows: np.ndarray) -> np.ndarray:
        return np.asarray(kernels.render_labels(coeffs, z[rows].ravel(), white, black, max_iter, tol))

    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(work, chunks))
    return np.concatenate(parts).reshape(height, width)


def render_frame(frame, width: int = 256, height: int = 256, viewport=(-2, 2, -2, 2), max_iter: int = 200) -> np.ndarray:
    """RGB image (``height x width x 3``, uint8) of the frame's two critical basins."""
    return PALETTE[label_grid(frame.map, width, height, viewport, max_iter)]


def write_ppm(path: str | Path, image: np.ndarray) -> None:
    h, w, _ = image.shape
    with open(path, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (w, h))
        fh.write(np.ascontiguousarray(image, dtype=np.uint8).tobytes())


def write_png(path: str | Path, image: np.ndarray) -> None:
    from PIL import Image  # optional dependency

    Image.fromarray(image, "RGB").save(path)


def save_image(path: str | Path, image: np.ndarray) -> None:
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        write_png(path, image)
    elif suffix in (".ppm", ".pnm"):
        write_ppm(path, image)
    else:
        raise ValueError(f"unsupported image format {suffix!r} (use .ppm or .png)")
