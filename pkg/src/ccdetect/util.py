"""Shared helpers: stable seed derivation, bit packing, hashing, errors."""

import hashlib
import json

import numpy as np


class ConfigError(ValueError):
    """Invalid or inconsistent configuration."""


class DataFormatError(ValueError):
    """Malformed, truncated, or corrupted artifact file."""


class LineageError(ValueError):
    """Artifact was produced by a different configuration than expected."""


class NumericError(RuntimeError):
    """Numerical failure (divergence, non-finite values)."""


def derive_seed(*parts) -> int:
    """Derive a stable 64-bit seed from a tuple of ints/strings.

    Uses blake2b over a length-prefixed encoding, so it is stable across
    platforms and Python versions (unlike hash()).
    """
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        if isinstance(part, (int, np.integer)):
            data = b"i" + str(int(part)).encode()
        elif isinstance(part, str):
            data = b"s" + part.encode()
        else:
            raise TypeError(f"unsupported seed part: {part!r}")
        h.update(len(data).to_bytes(4, "little"))
        h.update(data)
    return int.from_bytes(h.digest(), "little")


def bytes_to_bits(data: bytes) -> np.ndarray:
    """Unpack bytes to a uint8 bit array, MSB first within each byte."""
    return np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))


def bits_to_bytes(bits) -> bytes:
    """Pack a 0/1 sequence (length multiple of 8) to bytes, MSB first."""
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.size % 8 != 0:
        raise ValueError("bit count must be a multiple of 8")
    return np.packbits(arr).tobytes()


def byte_to_bits(value: int) -> np.ndarray:
    """One byte to 8 bits, MSB first."""
    if not 0 <= value <= 255:
        raise ValueError("byte out of range")
    return np.unpackbits(np.array([value], dtype=np.uint8))


def bits_to_byte(bits) -> int:
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.size != 8:
        raise ValueError("expected 8 bits")
    return int(np.packbits(arr)[0])


def stable_hash(payload: dict) -> str:
    """Short hex digest of a JSON-serializable dict, key-order independent."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        while True:
            block = f.read(1 << 20)
            if not block:
                break
            h.update(block)
    return h.hexdigest()
