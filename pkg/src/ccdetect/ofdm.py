"""802.11a-style OFDM frame synthesis and demodulation primitives.

Fixed frame geometry, 640 complex baseband samples per frame:

    [0,   160)  short training field  (2.5 periods of the 64-sample STS)
    [160, 320)  long training field   (32-sample prefix + 2 LTS periods)
    [320, 400)  header symbol         (BPSK, constant content)
    [400, 640)  payload               (3 QPSK OFDM symbols, 16+64 each)

Subcarriers are indexed k = -32..31 and stored in FFT bin order
(bin = k mod 64).  The DFT pair is orthonormal (1/sqrt(64) both ways)
so per-bin scale factors are convention independent and Parseval holds
exactly.
"""

import numpy as np

N_FFT = 64
CP_LEN = 16
SYMBOL_LEN = N_FFT + CP_LEN
NUM_DATA_SYMBOLS = 3
FRAME_LEN = 640

STS_SPAN = (0, 160)
LTS_SPAN = (160, 320)
SIGNAL_SPAN = (320, 400)
DATA_SPAN = (400, 640)

# Frequency-domain short training sequence.  Twelve non-zero bins; the
# magnitude follows the 802.11 convention rounded to 1.472 per component
# (sqrt(13/6) to four digits).
STS_MAG = 1.472
STS_POSITIVE_K = (-24, -16, -4, 12, 16, 20, 24)
STS_NEGATIVE_K = (-20, -12, -8, 4, 8)
STS_NONZERO_K = tuple(sorted(STS_POSITIVE_K + STS_NEGATIVE_K))

# Long training sequence values for k = -26..-1 and k = 1..26 (DC is 0),
# from the 802.11a legacy definition.
LTS_LEFT = (1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, 1, 1, 1, 1, -1,
            -1, 1, 1, -1, 1, -1, 1, 1, 1, 1)
LTS_RIGHT = (1, -1, -1, 1, 1, -1, 1, -1, 1, -1, -1, -1, -1, -1, 1, 1,
             -1, -1, 1, -1, 1, -1, 1, 1, 1, 1)

PILOT_K = (-21, -7, 7, 21)
PILOT_VALUES = (1.0, 1.0, 1.0, -1.0)
DATA_K = tuple(k for k in range(-26, 27) if k != 0 and k not in PILOT_K)
PAYLOAD_BITS = 2 * len(DATA_K) * NUM_DATA_SYMBOLS  # 288

# Constant header content: 802.11-flavored RATE/LENGTH/parity/tail bits,
# each repeated twice to fill the 48 data bins.  Never decoded; only the
# waveform presence matters.
_HEADER_BITS = (1, 1, 0, 1,                          # rate
                0,                                   # reserved
                0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0,  # length, LSB first
                1,                                   # parity
                0, 0, 0, 0, 0, 0)                    # tail
SIGNAL_BITS = tuple(int(b) for b in np.repeat(_HEADER_BITS, 2))


def freq_bin(k: int) -> int:
    """Storage position of subcarrier k in a length-64 FFT-order vector."""
    if not -32 <= k <= 31:
        raise ValueError(f"subcarrier index {k} out of range [-32, 31]")
    return k % N_FFT


def idft64(bins: np.ndarray) -> np.ndarray:
    """Orthonormal 64-point inverse DFT (frequency bins -> time samples)."""
    bins = np.asarray(bins)
    if bins.shape[-1] != N_FFT:
        raise ValueError(f"expected length-{N_FFT} input, got {bins.shape[-1]}")
    return np.fft.ifft(bins) * np.sqrt(N_FFT)


def dft64(samples: np.ndarray) -> np.ndarray:
    """Orthonormal 64-point DFT (time samples -> frequency bins)."""
    samples = np.asarray(samples)
    if samples.shape[-1] != N_FFT:
        raise ValueError(f"expected length-{N_FFT} input, got {samples.shape[-1]}")
    return np.fft.fft(samples) / np.sqrt(N_FFT)


def build_sts_freq() -> np.ndarray:
    """Frequency-domain STS in FFT bin order."""
    bins = np.zeros(N_FFT, dtype=np.complex128)
    for k in STS_POSITIVE_K:
        bins[freq_bin(k)] = STS_MAG + 1j * STS_MAG
    for k in STS_NEGATIVE_K:
        bins[freq_bin(k)] = -STS_MAG - 1j * STS_MAG
    return bins


def build_lts_freq() -> np.ndarray:
    """Frequency-domain LTS in FFT bin order."""
    bins = np.zeros(N_FFT, dtype=np.complex128)
    for offset, value in enumerate(LTS_LEFT):
        bins[freq_bin(-26 + offset)] = value
    for offset, value in enumerate(LTS_RIGHT):
        bins[freq_bin(1 + offset)] = value
    return bins


def qpsk_map(b0: int, b1: int) -> complex:
    """Gray-coded QPSK, unit average power: (0,0) -> (+1+1j)/sqrt(2)."""
    return complex(1 - 2 * b0, 1 - 2 * b1) / np.sqrt(2.0)


def qpsk_demap(z: complex) -> tuple:
    """Nearest-quadrant inverse of qpsk_map."""
    return (0 if z.real >= 0 else 1, 0 if z.imag >= 0 else 1)


def _qpsk_map_bits(bits: np.ndarray) -> np.ndarray:
    """Vectorized QPSK mapping; bits has shape (..., 2)."""
    bits = np.asarray(bits, dtype=np.float64)
    return ((1 - 2 * bits[..., 0]) + 1j * (1 - 2 * bits[..., 1])) / np.sqrt(2.0)


def sts_time() -> np.ndarray:
    """One 64-sample period of the time-domain STS."""
    return idft64(build_sts_freq())


def sts_field(bins: np.ndarray = None) -> np.ndarray:
    """160-sample STS field: two and a half periods of the STS symbol."""
    period = idft64(build_sts_freq() if bins is None else bins)
    return np.tile(period, 3)[:160]


def lts_field() -> np.ndarray:
    """160-sample LTS field: 32-sample cyclic prefix + two LTS periods."""
    period = idft64(build_lts_freq())
    return np.concatenate([period[-32:], period, period])


def ofdm_symbol(bins: np.ndarray) -> np.ndarray:
    """80-sample OFDM symbol: 16-sample cyclic prefix + 64-sample body."""
    body = idft64(bins)
    return np.concatenate([body[-CP_LEN:], body])


def _symbol_bins(data_values: np.ndarray) -> np.ndarray:
    """Place 48 data values and the 4 pilots into a 64-bin vector."""
    bins = np.zeros(N_FFT, dtype=np.complex128)
    for k, value in zip(DATA_K, data_values):
        bins[freq_bin(k)] = value
    for k, value in zip(PILOT_K, PILOT_VALUES):
        bins[freq_bin(k)] = value
    return bins


def signal_field() -> np.ndarray:
    """80-sample header symbol with fixed BPSK content."""
    values = 1.0 - 2.0 * np.asarray(SIGNAL_BITS, dtype=np.float64)
    return ofdm_symbol(_symbol_bins(values.astype(np.complex128)))


# Payload-independent fields, computed once.
_STS_FIELD = None
_LTS_FIELD = None
_SIGNAL_FIELD = None


def _static_fields():
    global _STS_FIELD, _LTS_FIELD, _SIGNAL_FIELD
    if _STS_FIELD is None:
        _STS_FIELD = sts_field()
        _LTS_FIELD = lts_field()
        _SIGNAL_FIELD = signal_field()
    return _STS_FIELD, _LTS_FIELD, _SIGNAL_FIELD


def build_frame(payload: np.ndarray) -> np.ndarray:
    """Assemble a clean 640-sample frame from 288 payload bits.

    Payload bit order: symbols in time order; within a symbol, data
    subcarriers in ascending k; two bits per subcarrier feeding
    qpsk_map(b0, b1).  Deterministic: the same payload always yields a
    bit-identical frame.
    """
    payload = np.asarray(payload, dtype=np.uint8)
    if payload.shape != (PAYLOAD_BITS,):
        raise ValueError(f"payload must be {PAYLOAD_BITS} bits, got {payload.shape}")
    if payload.max(initial=0) > 1:
        raise ValueError("payload bits must be 0 or 1")
    sts, lts, signal = _static_fields()
    frame = np.empty(FRAME_LEN, dtype=np.complex128)
    frame[STS_SPAN[0]:STS_SPAN[1]] = sts
    frame[LTS_SPAN[0]:LTS_SPAN[1]] = lts
    frame[SIGNAL_SPAN[0]:SIGNAL_SPAN[1]] = signal
    per_symbol = payload.reshape(NUM_DATA_SYMBOLS, len(DATA_K), 2)
    for s in range(NUM_DATA_SYMBOLS):
        values = _qpsk_map_bits(per_symbol[s])
        start = DATA_SPAN[0] + s * SYMBOL_LEN
        frame[start:start + SYMBOL_LEN] = ofdm_symbol(_symbol_bins(values))
    return frame


def data_symbol_bins(frame: np.ndarray, symbol: int) -> np.ndarray:
    """DFT of one payload symbol body (cyclic prefix removed)."""
    start = DATA_SPAN[0] + symbol * SYMBOL_LEN + CP_LEN
    return dft64(frame[start:start + N_FFT])


def demodulate_frame(frame: np.ndarray) -> np.ndarray:
    """Recover the 288 payload bits by nearest-quadrant QPSK decisions."""
    frame = np.asarray(frame)
    if frame.shape != (FRAME_LEN,):
        raise ValueError(f"expected a {FRAME_LEN}-sample frame")
    bits = np.empty((NUM_DATA_SYMBOLS, len(DATA_K), 2), dtype=np.uint8)
    for s in range(NUM_DATA_SYMBOLS):
        bins = data_symbol_bins(frame, s)
        values = bins[[freq_bin(k) for k in DATA_K]]
        bits[s, :, 0] = values.real < 0
        bits[s, :, 1] = values.imag < 0
    return bits.reshape(-1)


def random_payload(rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=PAYLOAD_BITS, dtype=np.uint8)


def frame_to_iq(frame: np.ndarray) -> np.ndarray:
    """Complex frame -> real (2, 640) I/Q array."""
    return np.stack([frame.real, frame.imag]).astype(np.float32)


def iq_to_frame(iq: np.ndarray) -> np.ndarray:
    """Real (2, 640) I/Q array -> complex frame."""
    iq = np.asarray(iq)
    return iq[0].astype(np.float64) + 1j * iq[1].astype(np.float64)
