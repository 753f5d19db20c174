"""Binary PGM (P5) reader and writer, 8-bit only."""
from __future__ import annotations

from .cipher import Image
from .errors import BadHeader, BadMagic, TruncatedRaster, UnsupportedMaxval

_WHITESPACE = b" \t\n\r\x0b\x0c"


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` header tokens after the magic; return them and the raster offset."""
    tokens = []
    i = 2
    n = len(data)
    while len(tokens) < count:
        if i >= n:
            raise BadHeader("unexpected end of header")
        c = data[i:i + 1]
        if c in _WHITESPACE:
            i += 1
        elif c == b"#":
            while i < n and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        else:
            start = i
            while i < n and data[i:i + 1] not in _WHITESPACE and data[i:i + 1] != b"#":
                i += 1
            tokens.append(data[start:i])
    # exactly one whitespace byte separates maxval from the raster
    if i >= n or data[i:i + 1] not in _WHITESPACE:
        raise BadHeader("missing whitespace after maxval")
    return tokens, i + 1


def parse_pgm(data: bytes) -> Image:
    data = bytes(data)
    if data[:2] != b"P5":
        raise BadMagic(f"expected P5 magic, got {data[:2]!r}")
    if len(data) > 2 and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise BadMagic("magic must be followed by whitespace")
    tokens, offset = _header_tokens(data, 3)
    try:
        width, height, maxval = (int(t.decode("ascii")) for t in tokens)
    except (UnicodeDecodeError, ValueError):
        raise BadHeader(f"non-numeric header field in {tokens!r}") from None
    if width < 1 or height < 1:
        raise BadHeader(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval} not supported (need 255)")
    raster = data[offset:offset + width * height]
    if len(raster) < width * height:
        raise TruncatedRaster(f"expected {width * height} raster bytes, got {len(raster)}")
    return Image(width, height, raster)


def write_pgm(img: Image) -> bytes:
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.pixels


def read_pgm_file(path) -> Image:
    with open(path, "rb") as f:
        return parse_pgm(f.read())


def write_pgm_file(path, img: Image) -> None:
    with open(path, "wb") as f:
        f.write(write_pgm(img))


def sample_image_path():
    """Path to the bundled 256x256 grayscale test image."""
    from importlib.resources import files

    return files("chuacrypt") / "data" / "camera256.pgm"


def load_sample_image() -> Image:
    return parse_pgm(sample_image_path().read_bytes())
