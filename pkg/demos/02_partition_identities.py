"""
Splitting the atoms in two
==========================

Energy over a subset of atoms versus the partial frame operator, on the
three-vector Mercedes frame and on a random corpus.
"""

import numpy as np

from gfusion import GenConfig, SubsetMask, random_frame
from gfusion.gen import mercedes_frame, orthonormal_basis_frame
from gfusion.identities import (
    check_operator_range,
    check_parseval_identity,
    check_parseval_lower_bound,
    printed_parseval_lower_value,
)

fr = mercedes_frame()
mask = SubsetMask.of("0")
e1 = np.array([1.0, 0.0])

r = check_parseval_identity(fr, mask, e1)
print(f"both sides: {r.lhs:.12f} {r.rhs:.12f}   (2/9 = {2 / 9:.12f})")

r = check_parseval_lower_bound(fr, mask, e1)
print(f"3/4 bound: value {r.lhs:.6f} in [{r.lo}, {r.hi}]")

r = check_operator_range(fr, mask)
print("eigenvalues of M - M^2 in [0, 1/4]:", r.passed, [p["value"] for p in r.details["parts"]])

# the subtracted form of the lower bound collapses on an orthonormal basis
onb = orthonormal_basis_frame(2)
print("subtracted form on e2:", printed_parseval_lower_value(onb, SubsetMask.of(["1"]), np.array([0.0, 1.0])))

# worst residual over a small Parseval corpus
worst = 0.0
rng = np.random.default_rng(0)
for seed in range(50):
    p = random_frame(GenConfig(dim=5, atoms=9, seed=seed, kind="parseval"))
    m = SubsetMask.of(i for i in p.ids if rng.random() < 0.5)
    f = rng.standard_normal(5)
    worst = max(worst, check_parseval_identity(p, m, f / np.linalg.norm(f)).residual)
print("worst residual over 50 frames:", worst)
