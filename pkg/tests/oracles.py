"""Independent reference computations used by the tests.

Everything here works from explicit projections ``P = U U*`` and plain
Python loops, never from the package's cached Gram stacks or closed forms.
"""

import numpy as np


def proj(sub):
    u = sub.basis
    return u @ u.conj().T


def frame_operator(frame):
    n = frame.dim
    s = np.zeros((n, n), dtype=complex)
    for atom, sub, op in zip(frame.space.atoms, frame.subspaces, frame.operators):
        p = proj(sub)
        s += atom.mu * atom.omega**2 * (p @ op.conj().T @ op @ p)
    return s


def partial(frame, members):
    n = frame.dim
    s = np.zeros((n, n), dtype=complex)
    for atom, sub, op in zip(frame.space.atoms, frame.subspaces, frame.operators):
        if atom.id in members:
            p = proj(sub)
            s += atom.mu * atom.omega**2 * (p @ op.conj().T @ op @ p)
    return s


def energy(frame, f, members=None):
    total = 0.0
    for atom, sub, op in zip(frame.space.atoms, frame.subspaces, frame.operators):
        if members is None or atom.id in members:
            g = op @ (proj(sub) @ f)
            total += atom.mu * atom.omega**2 * np.vdot(g, g).real
    return total


def inverse(m):
    return np.linalg.inv(m)


def pair(v, w):
    n = v.dim
    s = np.zeros((n, n), dtype=complex)
    for a, b, fs, gs, lam, gam in zip(v.space.atoms, w.space.atoms, v.subspaces, w.subspaces, v.operators, w.operators):
        s += a.mu * a.omega * b.omega * (proj(fs) @ lam.conj().T @ gam @ proj(gs))
    return s


def norm2(x):
    return float(np.vdot(x, x).real)
