"""Single-channel TIFF and PNG frame reading/writing.

Frames on disk are 8-bit or 16-bit grayscale, named t%04d.tif (or .png)
inside a channel directory. Intensities map to [0, 1] by dividing by the
dtype maximum. Probability maps may additionally be stored as float TIFF
with raw values in [0, 1].
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import tifffile
from PIL import Image

from .imgcore import BitDepth, Frame

FRAME_PATTERN = "t%04d"


class FrameReadError(OSError):
    """A frame file could not be read or decoded."""

    def __init__(self, path, detail, scene_id=None, channel=None, t=None):
        self.path = Path(path)
        self.scene_id = scene_id
        self.channel = channel
        self.t = t
        where = f" (scene={scene_id}, channel={channel}, t={t})" if scene_id else ""
        super().__init__(f"cannot read frame {path}{where}: {detail}")


def _decode(arr: np.ndarray, path) -> tuple[np.ndarray, BitDepth]:
    if arr.ndim == 3 and arr.shape[2] == 1:
        arr = arr[:, :, 0]
    if arr.ndim != 2:
        raise FrameReadError(path, f"expected single-channel 2D image, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr.astype(np.float64) / 255.0, BitDepth.U8
    if arr.dtype == np.uint16:
        return arr.astype(np.float64) / 65535.0, BitDepth.U16
    raise FrameReadError(path, f"unsupported dtype {arr.dtype} (expected uint8 or uint16)")


def read_frame(path, t_index: int = 0, pixel_pitch_um: float = 0.103) -> Frame:
    """Load one 8- or 16-bit grayscale frame as a [0, 1] Frame."""
    path = Path(path)
    try:
        if path.suffix.lower() in (".tif", ".tiff"):
            arr = tifffile.imread(path)
        elif path.suffix.lower() == ".png":
            arr = np.asarray(Image.open(path))
        else:
            raise FrameReadError(path, f"unsupported extension {path.suffix}")
    except FrameReadError:
        raise
    except Exception as exc:
        raise FrameReadError(path, str(exc)) from exc
    pixels, depth = _decode(np.asarray(arr), path)
    return Frame(pixels, bit_depth_origin=depth, t_index=t_index, pixel_pitch_um=pixel_pitch_um)


def quantize_u8(pixels: np.ndarray) -> np.ndarray:
    """Quantize [0, 1] intensities to uint8, rounding half away from zero."""
    v = np.clip(np.asarray(pixels, dtype=np.float64), 0.0, 1.0)
    return np.floor(v * 255.0 + 0.5).astype(np.uint8)


def quantize_u16(pixels: np.ndarray) -> np.ndarray:
    v = np.clip(np.asarray(pixels, dtype=np.float64), 0.0, 1.0)
    return np.floor(v * 65535.0 + 0.5).astype(np.uint16)


def write_frame_u8(path, pixels: np.ndarray) -> None:
    path = Path(path)
    data = quantize_u8(pixels)
    if path.suffix.lower() in (".tif", ".tiff"):
        tifffile.imwrite(path, data)
    elif path.suffix.lower() == ".png":
        Image.fromarray(data).save(path)
    else:
        raise ValueError(f"unsupported extension {path.suffix}")


def write_frame_u16(path, pixels: np.ndarray) -> None:
    path = Path(path)
    if path.suffix.lower() not in (".tif", ".tiff"):
        raise ValueError("16-bit frames are written as TIFF only")
    tifffile.imwrite(path, quantize_u16(pixels))


def read_probability_map(path) -> np.ndarray:
    """Load a per-frame foreground probability map in [0, 1].

    Accepts uint8 (values/255), uint16 (values/65535) or float TIFF (raw).
    """
    path = Path(path)
    try:
        arr = np.asarray(tifffile.imread(path))
    except Exception as exc:
        raise FrameReadError(path, str(exc)) from exc
    if arr.ndim != 2:
        raise FrameReadError(path, f"expected 2D probability map, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr.astype(np.float64) / 255.0
    if arr.dtype == np.uint16:
        return arr.astype(np.float64) / 65535.0
    if np.issubdtype(arr.dtype, np.floating):
        out = arr.astype(np.float64)
        if not np.all(np.isfinite(out)) or out.min() < 0.0 or out.max() > 1.0:
            raise FrameReadError(path, "float probability values must be finite and in [0, 1]")
        return out
    raise FrameReadError(path, f"unsupported dtype {arr.dtype}")


def write_probability_map_u8(path, prob: np.ndarray) -> None:
    tifffile.imwrite(Path(path), quantize_u8(prob))


def frame_filename(t: int, ext: str = ".tif") -> str:
    return (FRAME_PATTERN % t) + ext
