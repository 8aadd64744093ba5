"""Unit conventions.

All frequencies are angular Rabi frequencies in fs^-1 and all times are in
fs, with hbar = 1 so that energies and frequencies coincide.  Laser
detunings quoted in meV are converted through hbar = 658.2119569 meV fs.
"""

HBAR_MEV_FS = 658.2119569


def mev_to_inv_fs(energy_mev: float) -> float:
    """Convert an energy in meV to an angular frequency in fs^-1."""
    return energy_mev / HBAR_MEV_FS


def inv_fs_to_mev(freq_inv_fs: float) -> float:
    """Convert an angular frequency in fs^-1 back to an energy in meV."""
    return freq_inv_fs * HBAR_MEV_FS
