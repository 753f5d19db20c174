"""XOR stream cipher over 8-bit grayscale images."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch
from .keystream import KeyConfig, generate_keystream


@dataclass(frozen=True)
class Image:
    """8-bit grayscale image, pixels stored row-major."""

    width: int
    height: int
    pixels: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        object.__setattr__(self, "pixels", bytes(self.pixels))
        if len(self.pixels) != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} pixels, got {len(self.pixels)}"
            )

    @classmethod
    def from_array(cls, a) -> "Image":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        if a.size and (a.min() < 0 or a.max() > 255):
            raise ValueError("pixel values must be in [0, 255]")
        return cls(a.shape[1], a.shape[0], a.astype(np.uint8).tobytes())

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self.pixels, dtype=np.uint8).reshape(self.height, self.width)


def xor_bytes(data: bytes, ks: bytes) -> bytes:
    if len(data) != len(ks):
        raise LengthMismatch(f"data has {len(data)} bytes, keystream {len(ks)}")
    a = np.frombuffer(bytes(data), dtype=np.uint8)
    b = np.frombuffer(bytes(ks), dtype=np.uint8)
    return (a ^ b).tobytes()


def encrypt_image(img: Image, key: KeyConfig) -> Image:
    ks = generate_keystream(key, img.width * img.height)
    return Image(img.width, img.height, xor_bytes(img.pixels, ks))


# XOR is an involution; decryption is the same operation.
decrypt_image = encrypt_image
