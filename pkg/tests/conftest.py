import numpy as np


def random_density(rng: np.random.Generator) -> np.ndarray:
    """Full-rank random state (Ginibre ensemble)."""
    g = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    m = g @ g.conj().T
    return m / m.trace()


def random_pure(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    return v / np.linalg.norm(v)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-ish SO(3) element via QR with sign fixing."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, [0, 1]] = q[:, [1, 0]]
    return q


def random_orthogonal(rng: np.random.Generator) -> np.ndarray:
    """O(3) element, either determinant sign."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    return q @ np.diag(np.sign(np.diag(r)))
