"""
Pairs of Bessel families
========================

"""

import numpy as np

from gfusion import GenConfig
from gfusion.gen import orthonormal_basis_frame, perturbed_dual_pair
from gfusion.pairs import analyze_pair, perturbation_check, resolution_witness, verify_resolution

v = orthonormal_basis_frame(2)
w = v.replace(omega=[1.0, 0.5])

a = analyze_pair(v, w)
print("S_FG =\n", a.pair_operator)
print("norm", a.norm, "sigma_min", a.sigma_min, "sqrt(B1 B2)", np.sqrt(a.bessel_v * a.bessel_w))

# K = S_FG^-1 turns the pair into a resolution of the identity
wit = resolution_witness(v, w)
print("K =\n", wit.k)
print("resolution residual:", verify_resolution(v, w, wit.k).residual)

# ||I - S_FG|| = 1/2 < 1, so W is certified a frame with lower bound (1 - 1/2)^2 / B1
rep = perturbation_check(v, w)
print(f"lambda1* = {rep.lambda1_star}, certificate {rep.certificate}, actual {rep.actual_lower}")

# canonical duals with relative noise on every local operator
for eps in (0.01, 0.1, 0.3):
    v, w = perturbed_dual_pair(GenConfig(dim=4, atoms=8, seed=3, scalar="complex"), eps)
    rep = perturbation_check(v, w)
    print(f"eps {eps}: lambda1* {rep.lambda1_star:.3f}  certificate {rep.certificate}  actual {rep.actual_lower:.4f}")
