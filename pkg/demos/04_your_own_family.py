# Classifying a family you write down yourself, and what the failures mean.

import numpy as np

from confluence.spectral import (
    DegenerateMerger,
    IncompleteSweep,
    MatrixFamily,
    check_central_symmetry,
    classify,
    track_paths,
)

# Four levels, two pseudo-Hermitian couplings of different strength:
# the pair (2,3) closes faster than (1,4).
A = np.diag([-1.5, -0.5, 0.5, 1.5])
B = np.zeros((4, 4))
B[0, 3], B[3, 0] = 1.0, -1.0     # couples levels 1 and 4
B[1, 2], B[2, 1] = 2.0, -2.0     # couples levels 2 and 3
fam = MatrixFamily(A, B, symmetric_hint=True)

observed = classify(fam, lam_max=2.0)
print("pattern:", observed.pattern)
for e in observed.events:
    print(f"  {e.pair} at lambda = {e.lambda_star:.6f}")
print("spectrum symmetric on [0, 2]:", check_central_symmetry(fam, np.linspace(0, 2, 21)))

# Stop the sweep too early and some levels are still real.
try:
    classify(fam, lam_max=1.0)
except IncompleteSweep as exc:
    print("\nincomplete:", exc)

# Two pairs hitting the same point at the same coupling is a multiple merger,
# which the classifier refuses to label.
B2 = np.zeros((4, 4))
B2[0, 3], B2[3, 0] = 1.5, -1.5
B2[1, 2], B2[2, 1] = 0.5, -0.5
try:
    classify(MatrixFamily(A, B2), lam_max=2.0)
except DegenerateMerger as exc:
    print("degenerate:", exc)

# The raw paths are available too.
paths = track_paths(fam, 2.0, 20)
print("\nlevel 2 samples:", [f"{z.real:+.3f}{z.imag:+.3f}i" for _, z in paths[1].samples[::5]])
