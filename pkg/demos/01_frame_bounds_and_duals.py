"""
Frame bounds, the canonical dual and Parseval-ization
=====================================================

"""

import numpy as np

from gfusion import GenConfig, canonical_dual, frame_bounds, frame_operator, parsevalize, random_frame
from gfusion.gen import two_atom_frame
from gfusion.operators import analysis_apply, inverse_frame_operator, synthesis_apply

# two atoms on R^2: span{e1} and all of R^2, identity local operators
fr = two_atom_frame()
print("S =\n", frame_operator(fr).matrix)
print("bounds:", frame_bounds(fr))

# the canonical dual has frame operator S^-1
dual = canonical_dual(fr)
print("S of dual =\n", frame_operator(dual).matrix.round(12))

# reconstruct f from its coefficients, S^-1 applied first
f = np.array([0.3, -1.2])
coeffs = analysis_apply(fr, inverse_frame_operator(fr).matrix @ f)
print("f back:", synthesis_apply(fr, coeffs), "vs", f)

# a random complex frame, then its Parseval version
fr = random_frame(GenConfig(dim=4, atoms=7, seed=1, scalar="complex"))
print("random frame bounds:", frame_bounds(fr))
p = parsevalize(fr)
print("after parsevalize, ||S - I|| =", np.linalg.norm(frame_operator(p).matrix - np.eye(4), 2))
