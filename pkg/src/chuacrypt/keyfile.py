"""Key files: one ``name = value`` per line, floats as binary64 hex.

Example::

    c1 = 3E45798EE2308C3A
    ...
    transient = 2000

Floats are the 16 hex digits of the big-endian IEEE-754 encoding so that a
key survives a write/read cycle bit for bit.
"""
from __future__ import annotations

import re
import struct

from .chua import ChuaParams, ChuaState
from .errors import BadHexEncoding, DuplicateField, FormatError, MissingField, UnknownField
from .keystream import KeyConfig

FLOAT_FIELDS = ("c1", "c2", "l", "r", "ga", "gb", "bp", "v_c1_0", "v_c2_0", "i_l_0", "h")
FIELDS = FLOAT_FIELDS + ("transient",)

_HEX16 = re.compile(r"[0-9A-Fa-f]{16}")


def float_to_hex(x: float) -> str:
    return struct.pack(">d", x).hex().upper()


def hex_to_float(s: str) -> float:
    if not _HEX16.fullmatch(s):
        raise BadHexEncoding(f"expected 16 hex digits, got {s!r}")
    return struct.unpack(">d", bytes.fromhex(s))[0]


def key_to_fields(key: KeyConfig) -> dict:
    p, s = key.params, key.initial
    return {
        "c1": p.c1, "c2": p.c2, "l": p.l, "r": p.r,
        "ga": p.ga, "gb": p.gb, "bp": p.bp,
        "v_c1_0": s.v_c1, "v_c2_0": s.v_c2, "i_l_0": s.i_l,
        "h": key.h, "transient": key.transient,
    }


def key_from_fields(values: dict) -> KeyConfig:
    params = ChuaParams(**{k: values[k] for k in ("c1", "c2", "l", "r", "ga", "gb", "bp")})
    initial = ChuaState(values["v_c1_0"], values["v_c2_0"], values["i_l_0"])
    return KeyConfig(params, initial, values["h"], values["transient"])


def write_key_file(key: KeyConfig) -> str:
    fields = key_to_fields(key)
    lines = [f"{name} = {float_to_hex(fields[name])}" for name in FLOAT_FIELDS]
    lines.append(f"transient = {int(fields['transient'])}")
    return "\n".join(lines) + "\n"


def parse_key_file(text: str) -> KeyConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"line {lineno}: expected 'name = value'")
        name, value = name.strip(), value.strip()
        if name not in FIELDS:
            raise UnknownField(name)
        if name in values:
            raise DuplicateField(name)
        if name == "transient":
            if not re.fullmatch(r"\d+", value):
                raise FormatError(f"line {lineno}: transient must be a decimal integer")
            values[name] = int(value)
        else:
            values[name] = hex_to_float(value)
    for name in FIELDS:
        if name not in values:
            raise MissingField(name)
    try:
        return key_from_fields(values)
    except ValueError as exc:
        raise FormatError(f"invalid key: {exc}") from None
