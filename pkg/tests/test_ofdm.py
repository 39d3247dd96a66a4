import numpy as np
import pytest

from ccdetect import ofdm


def dft_oracle(x):
    """Direct O(N^2) orthonormal DFT."""
    n = np.arange(64)
    w = np.exp(-2j * np.pi * np.outer(n, n) / 64) / np.sqrt(64)
    return w @ x


class TestDftPair:
    def test_round_trip_random_vectors(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(1000):
            x = rng.normal(size=64) + 1j * rng.normal(size=64)
            err = np.abs(ofdm.dft64(ofdm.idft64(x)) - x).max() / np.abs(x).max()
            worst = max(worst, err)
        assert worst < 1e-12

    def test_matches_direct_dft(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=64) + 1j * rng.normal(size=64)
        assert np.abs(ofdm.dft64(x) - dft_oracle(x)).max() < 1e-12

    def test_parseval(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            x = rng.normal(size=64) + 1j * rng.normal(size=64)
            et = np.sum(np.abs(ofdm.idft64(x)) ** 2)
            ef = np.sum(np.abs(x) ** 2)
            assert abs(et - ef) / ef < 1e-12

    def test_zero_and_impulse(self):
        assert np.all(ofdm.idft64(np.zeros(64)) == 0)
        impulse = np.zeros(64, dtype=complex)
        impulse[0] = 1.0
        t = ofdm.idft64(impulse)
        assert np.abs(t - t[0]).max() < 1e-14  # constant vector

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            ofdm.dft64(np.zeros(63))
        with pytest.raises(ValueError):
            ofdm.idft64(np.zeros(65))


class TestStsTable:
    def test_tabulated_values(self):
        bins = ofdm.build_sts_freq()
        assert bins[ofdm.freq_bin(-24)] == pytest.approx(1.472 + 1.472j)
        assert bins[ofdm.freq_bin(4)] == pytest.approx(-1.472 - 1.472j)
        assert bins[ofdm.freq_bin(0)] == 0

    def test_twelve_nonzero_bins(self):
        bins = ofdm.build_sts_freq()
        assert np.count_nonzero(bins) == 12
        nonzero_k = sorted(k for k in range(-32, 32) if bins[ofdm.freq_bin(k)] != 0)
        assert tuple(nonzero_k) == ofdm.STS_NONZERO_K


class TestQpsk:
    def test_map_values(self):
        assert ofdm.qpsk_map(0, 0) == pytest.approx(0.70710678 + 0.70710678j)
        assert ofdm.qpsk_map(1, 1) == pytest.approx(-0.70710678 - 0.70710678j)

    def test_unit_power(self):
        for b0 in (0, 1):
            for b1 in (0, 1):
                assert abs(ofdm.qpsk_map(b0, b1)) == pytest.approx(1.0)

    def test_demap_quadrants(self):
        assert ofdm.qpsk_demap(0.2 + 0.9j) == (0, 0)
        for b0 in (0, 1):
            for b1 in (0, 1):
                assert ofdm.qpsk_demap(ofdm.qpsk_map(b0, b1)) == (b0, b1)


class TestFrame:
    def test_length_and_layout(self):
        frame = ofdm.build_frame(np.zeros(288, dtype=np.uint8))
        assert frame.shape == (640,)
        assert ofdm.DATA_SPAN[1] - ofdm.DATA_SPAN[0] == 3 * 80

    def test_sts_is_periodic_extension(self):
        frame = ofdm.build_frame(np.zeros(288, dtype=np.uint8))
        period = ofdm.sts_time()
        expected = np.tile(period, 3)[:160]
        assert np.abs(frame[:160] - expected).max() < 1e-15
        # samples[n] == samples[n+64] for n in [0, 96)
        assert np.abs(frame[:96] - frame[64:160]).max() < 1e-15

    def test_deterministic(self):
        rng = np.random.default_rng(4)
        payload = ofdm.random_payload(rng)
        a = ofdm.build_frame(payload)
        b = ofdm.build_frame(payload)
        assert np.array_equal(a, b)

    def test_bad_payload_rejected(self):
        with pytest.raises(ValueError):
            ofdm.build_frame(np.zeros(287, dtype=np.uint8))
        with pytest.raises(ValueError):
            ofdm.build_frame(np.full(288, 2, dtype=np.uint8))

    def test_modulate_demodulate_loop(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            payload = ofdm.random_payload(rng)
            frame = ofdm.build_frame(payload)
            assert np.array_equal(ofdm.demodulate_frame(frame), payload)

    def test_pilots_present(self):
        frame = ofdm.build_frame(np.zeros(288, dtype=np.uint8))
        bins = ofdm.data_symbol_bins(frame, 0)
        for k, value in zip(ofdm.PILOT_K, ofdm.PILOT_VALUES):
            assert bins[ofdm.freq_bin(k)] == pytest.approx(value, abs=1e-12)

    def test_iq_round_trip(self):
        rng = np.random.default_rng(6)
        frame = ofdm.build_frame(ofdm.random_payload(rng))
        iq = ofdm.frame_to_iq(frame)
        assert iq.shape == (2, 640)
        back = ofdm.iq_to_frame(iq)
        assert np.abs(back - frame).max() < 1e-6  # float32 storage
