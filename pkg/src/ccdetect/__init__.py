"""Covert-channel detection workbench for Wi-Fi style I/Q frames.

Synthesizes OFDM frames, embeds transmitter-side covert channels,
generates labeled I/Q datasets over an SNR grid, trains and quantizes a
compact CNN detector, and cycle-simulates the matching hardware
accelerator dataflow.
"""

__version__ = "0.1.0"
