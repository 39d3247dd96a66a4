"""Transmitter-side covert-channel injection models.

Four attacks hide leaked bits inside an otherwise standard frame:

* ``STS_AMPLITUDE``  — scales 8 of the 12 non-zero short-training bins
  by ``alpha`` for each '1' bit (one byte per frame).
* ``STS_PHASE``      — rotates every non-zero short-training bin
  counter-clockwise by ``byte * (360/256)`` degrees (one byte per frame).
* ``DIRTY_CONSTELLATION`` — replaces the cover QPSK point of designated
  payload bins with a jittered point on the adjacent 64-QAM grid
  position, and adds a small cover-wide distortion (30 bits per frame
  at the default 5 dirty bins per symbol).
* ``ENVELOPE``       — scales each of the eight 80-sample frame segments
  by ``envelope_factor`` for each '0' bit (one byte per frame).

Bit order is MSB first everywhere.
"""

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from . import ofdm
from .util import byte_to_bits


class Attack(IntEnum):
    CLEAN = 0
    STS_AMPLITUDE = 1
    STS_PHASE = 2
    DIRTY_CONSTELLATION = 3
    ENVELOPE = 4


PHASE_STEP_DEG = 360.0 / 256.0
DISPERSION_RADIUS = math.sqrt(2.0 / 42.0)

# The 8 corrupted short-training bins: lowest indices of the 12 non-zero
# bins, ascending; bit i of the leaked byte keys bin CORRUPTED_K[i].
CORRUPTED_K = (-24, -20, -16, -12, -8, -4, 4, 8)
UNCORRUPTED_K = tuple(k for k in ofdm.STS_NONZERO_K if k not in CORRUPTED_K)

NUM_SEGMENTS = 8
SEGMENT_LEN = ofdm.FRAME_LEN // NUM_SEGMENTS

# 64-QAM grid scale (unit average constellation power).
QAM64_SCALE = 1.0 / math.sqrt(42.0)


@dataclass
class AttackSpec:
    """Which attack is active plus its parameters."""

    kind: Attack = Attack.CLEAN
    alpha: float = 0.9
    phase_step_deg: float = PHASE_STEP_DEG
    dirty_count_per_symbol: int = 5
    dispersion_radius: float = DISPERSION_RADIUS
    theta_step_deg: float = 15.0
    envelope_factor: float = 0.8
    evm_distortion_db: float = -25.0

    def __post_init__(self):
        self.kind = Attack(self.kind)
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        if not 0.0 < self.envelope_factor < 1.0:
            raise ValueError("envelope_factor must be in (0, 1)")
        if not 0 < self.dirty_count_per_symbol <= len(ofdm.DATA_K):
            raise ValueError("dirty_count_per_symbol out of range")
        if self.dispersion_radius < 0:
            raise ValueError("dispersion_radius must be >= 0")

    def bits_per_frame(self) -> int:
        if self.kind == Attack.CLEAN:
            return 0
        if self.kind == Attack.DIRTY_CONSTELLATION:
            return 2 * self.dirty_count_per_symbol * ofdm.NUM_DATA_SYMBOLS
        return 8

    def dirty_bins(self) -> tuple:
        """Dirty payload subcarriers: the lowest data indices, ascending."""
        return ofdm.DATA_K[:self.dirty_count_per_symbol]


@dataclass
class CovertMessage:
    """Repeating covert byte sequence with a bit cursor (MSB first)."""

    data: bytes
    cursor: int = 0

    def __post_init__(self):
        if len(self.data) == 0:
            raise ValueError("message must not be empty")
        self._bits = np.unpackbits(np.frombuffer(bytes(self.data), dtype=np.uint8))

    @classmethod
    def random(cls, rng: np.random.Generator, length: int = 11) -> "CovertMessage":
        return cls(data=bytes(rng.integers(0, 256, size=length, dtype=np.uint8)))

    def next_bits(self, count: int) -> np.ndarray:
        """Consume the next `count` bits, wrapping around the message."""
        total = self._bits.size
        idx = (self.cursor + np.arange(count)) % total
        self.cursor = (self.cursor + count) % total
        return self._bits[idx].copy()


def _resynthesize_sts(frame: np.ndarray, bins: np.ndarray) -> np.ndarray:
    out = frame.copy()
    out[ofdm.STS_SPAN[0]:ofdm.STS_SPAN[1]] = ofdm.sts_field(bins)
    return out


def inject_sts_amplitude(frame: np.ndarray, byte: int, alpha: float = 0.9) -> np.ndarray:
    """Scale corrupted STS bins by alpha where the leaked bit is '1'."""
    bits = byte_to_bits(byte)
    bins = ofdm.build_sts_freq()
    for bit, k in zip(bits, CORRUPTED_K):
        if bit:
            bins[ofdm.freq_bin(k)] *= alpha
    return _resynthesize_sts(frame, bins)


def inject_sts_phase(frame: np.ndarray, byte: int,
                     step_deg: float = PHASE_STEP_DEG) -> np.ndarray:
    """Rotate every non-zero STS bin counter-clockwise by byte * step."""
    if not 0 <= byte <= 255:
        raise ValueError("byte out of range")
    rotation = np.exp(1j * np.radians(byte * step_deg))
    return _resynthesize_sts(frame, ofdm.build_sts_freq() * rotation)


def covert_candidates(cover: complex) -> np.ndarray:
    """The four covert points for a QPSK cover point.

    Ordered by covert bit pair (00, 01, 10, 11).  Bits map to a
    displacement direction with the QPSK sign convention
    (b=0 -> positive axis); the covert point is the 64-QAM grid point
    diagonally adjacent to the cover point in that direction, which also
    places it at the radial distance of that 64-QAM point.
    """
    sx = 1.0 if cover.real >= 0 else -1.0
    sy = 1.0 if cover.imag >= 0 else -1.0
    points = np.empty(4, dtype=np.complex128)
    for b0 in (0, 1):
        for b1 in (0, 1):
            dx = 1 - 2 * b0
            dy = 1 - 2 * b1
            gx = sx * (5.0 if dx * sx > 0 else 3.0) * QAM64_SCALE
            gy = sy * (5.0 if dy * sy > 0 else 3.0) * QAM64_SCALE
            points[2 * b0 + b1] = gx + 1j * gy
    return points


def _truncated_gaussian(rng: np.random.Generator, radius: float) -> complex:
    """2-D Gaussian jitter (sigma = radius/2) resampled to stay within radius."""
    if radius == 0.0:
        return 0j
    sigma = radius / 2.0
    for _ in range(64):
        p = rng.normal(0.0, sigma, size=2)
        if math.hypot(p[0], p[1]) <= radius:
            return complex(p[0], p[1])
    return 0j  # vanishing probability after 64 draws


def inject_dirty_constellation(frame: np.ndarray, bits: np.ndarray,
                               spec: AttackSpec,
                               rng: np.random.Generator) -> np.ndarray:
    """Move dirty payload bins to jittered covert points, distort the rest.

    Two covert bits per dirty subcarrier select the covert point around
    the cover QPSK point; the point is jittered within the dispersion
    radius and the jitter rotated by theta_k = (k mod N) * theta_step,
    where k counts dirty subcarriers within the frame.  All data bins
    additionally receive complex Gaussian distortion at
    ``evm_distortion_db`` relative to unit subcarrier power.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    expected = spec.bits_per_frame() if spec.kind == Attack.DIRTY_CONSTELLATION \
        else 2 * spec.dirty_count_per_symbol * ofdm.NUM_DATA_SYMBOLS
    if bits.size != expected:
        raise ValueError(f"expected {expected} covert bits, got {bits.size}")

    theta_period = max(1, round(360.0 / spec.theta_step_deg))
    distortion_var = (0.0 if spec.evm_distortion_db == -math.inf
                      else 10.0 ** (spec.evm_distortion_db / 10.0))
    data_positions = [ofdm.freq_bin(k) for k in ofdm.DATA_K]

    out = frame.copy()
    counter = 0
    cursor = 0
    for s in range(ofdm.NUM_DATA_SYMBOLS):
        start = ofdm.DATA_SPAN[0] + s * ofdm.SYMBOL_LEN
        body = out[start + ofdm.CP_LEN:start + ofdm.SYMBOL_LEN]
        bins = ofdm.dft64(body)
        for k in spec.dirty_bins():
            pos = ofdm.freq_bin(k)
            candidates = covert_candidates(bins[pos])
            b0, b1 = bits[cursor], bits[cursor + 1]
            cursor += 2
            theta = math.radians((counter % theta_period) * spec.theta_step_deg)
            jitter = _truncated_gaussian(rng, spec.dispersion_radius)
            bins[pos] = candidates[2 * b0 + b1] + jitter * np.exp(1j * theta)
            counter += 1
        if distortion_var > 0.0:
            noise = (rng.normal(size=len(data_positions))
                     + 1j * rng.normal(size=len(data_positions)))
            bins[data_positions] += noise * math.sqrt(distortion_var / 2.0)
        body = ofdm.idft64(bins)
        out[start:start + ofdm.CP_LEN] = body[-ofdm.CP_LEN:]
        out[start + ofdm.CP_LEN:start + ofdm.SYMBOL_LEN] = body
    return out


def inject_envelope(frame: np.ndarray, byte: int,
                    factor: float = 0.8) -> np.ndarray:
    """Scale 80-sample segments by factor where the leaked bit is '0'."""
    bits = byte_to_bits(byte)
    out = frame.copy()
    for i, bit in enumerate(bits):
        if not bit:
            out[i * SEGMENT_LEN:(i + 1) * SEGMENT_LEN] *= factor
    return out


def inject(frame: np.ndarray, spec: AttackSpec, msg: CovertMessage,
           rng: np.random.Generator = None):
    """Dispatch to the active attack, consuming bits from the message.

    Returns (infected frame, consumed bits) — the bits are the ground
    truth for the attacker-side decoders.
    """
    if spec.kind == Attack.CLEAN:
        return frame, np.zeros(0, dtype=np.uint8)
    bits = msg.next_bits(spec.bits_per_frame())
    if spec.kind == Attack.STS_AMPLITUDE:
        return inject_sts_amplitude(frame, int(np.packbits(bits)[0]), spec.alpha), bits
    if spec.kind == Attack.STS_PHASE:
        return inject_sts_phase(frame, int(np.packbits(bits)[0]), spec.phase_step_deg), bits
    if spec.kind == Attack.DIRTY_CONSTELLATION:
        if rng is None:
            raise ValueError("dirty-constellation injection needs an rng")
        return inject_dirty_constellation(frame, bits, spec, rng), bits
    if spec.kind == Attack.ENVELOPE:
        return inject_envelope(frame, int(np.packbits(bits)[0]), spec.envelope_factor), bits
    raise ValueError(f"unknown attack kind {spec.kind}")
