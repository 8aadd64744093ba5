"""Noisy loops on the control sphere, as CSV tables.

Dumps the clean vs noisy control-space trajectory for three redraw
counts: 2 (rigid shift), 70 (strong deformation) and 5000 (fuzz that
averages out).  Feed the CSVs to the plotting package for the 3-D sphere
figures, or inspect the plateau structure directly.
"""

from pathlib import Path

from holonoise import NoiseChannel, NoiseSpec, mixing_loop
from holonoise.experiments import dump_loop_trajectory, write_trajectory_csv

OMEGA = 0.02
T_AD = 7500.0

out_dir = Path("demo_output")
out_dir.mkdir(exist_ok=True)
schedule = mixing_loop(OMEGA, T_AD)

for n_r, samples in ((2, 256), (70, 8), (5000, 1)):
    spec = NoiseSpec.from_extractions(NoiseChannel.INTENSITY, 0.1, n_r, T_AD,
                                      seed=20240808)
    rows = dump_loop_trajectory(schedule, spec, samples_per_interval=samples)
    path = write_trajectory_csv(rows, out_dir / f"loop_nr{n_r}.csv")
    dev = max(abs(((r["noisy_x"] - r["clean_x"]) ** 2
                   + (r["noisy_y"] - r["clean_y"]) ** 2
                   + (r["noisy_z"] - r["clean_z"]) ** 2) ** 0.5) for r in rows)
    print(f"n_r = {n_r:>5}: {len(rows)} samples, max offset {dev:.3f} -> {path}")
