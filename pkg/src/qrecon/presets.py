"""Named resource states used by the CLI, examples and tests.

All presets return validated 8x8 density matrices.  Basis order: qubit
A is the most significant bit, so |100> sits at index 4.
"""

from __future__ import annotations

import numpy as np

from .states import pure_to_density, validate_state
from .wclass import WClassParams, wclass_state


def _ket(*indices_amplitudes: tuple[int, float]) -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    for idx, amp in indices_amplitudes:
        psi[idx] = amp
    return psi / np.linalg.norm(psi)


def ghz_density() -> np.ndarray:
    """(|000> + |111>)/sqrt2: maximal correlations, theta = 3."""
    return pure_to_density(_ket((0, 1), (7, 1)))


def w_density() -> np.ndarray:
    """(|001> + |010> + |100>)/sqrt3: theta = 7/3, fails secret sharing
    because the dealer-reconstructor channel alone is too strong."""
    return pure_to_density(_ket((1, 1), (2, 1), (4, 1)))


def wexample3_density() -> np.ndarray:
    """W-family member whose pair channel stays classical while the
    assisted protocol beats the bound: lambda = (0.7, 0.11, 0.09, 0.7),
    renormalized (the raw squares sum to 1.0002)."""
    params = WClassParams.normalized(0.7, 0.11, 0.09, 0.7)
    return pure_to_density(wclass_state(params))


def gamma_mix_density() -> np.ndarray:
    """Equal mixture of (|000> +- |100> +- |110> + |111>)/2.

    The dealer-reconstructor pair matrix vanishes, so the pair alone
    teleports at 1/2, yet the assisted protocol reaches 3/4: the
    advantage is entirely activation by the assistant (case 2).
    """
    plus = _ket((0, 1), (4, 1), (6, 1), (7, 1))
    minus = _ket((0, 1), (4, -1), (6, -1), (7, 1))
    return 0.5 * pure_to_density(plus) + 0.5 * pure_to_density(minus)


def delta_mix_density() -> np.ndarray:
    """Same mixture as :func:`gamma_mix_density` (the two defining ket
    pairs coincide); kept as a distinct preset name so both named
    exemplars remain addressable.  Reports the case-2 pattern."""
    return gamma_mix_density()


def beta_mix_density() -> np.ndarray:
    """Equal mixture of (|000> + |011> + |100> +- |111>)/2.

    Both dealer-side channels have trace norm exactly 1/2 while
    theta = (1 + sqrt5)/2 > 1: neither partner can reconstruct alone
    but together they beat the classical bound, the secret-sharing
    regime beyond GHZ.
    """
    plus = _ket((0, 1), (3, 1), (4, 1), (7, 1))
    minus = _ket((0, 1), (3, 1), (4, 1), (7, -1))
    return 0.5 * pure_to_density(plus) + 0.5 * pure_to_density(minus)


def maximally_mixed_density() -> np.ndarray:
    """I/8: no correlations at all, theta = 0."""
    return np.eye(8, dtype=complex) / 8.0


PRESETS = {
    "ghz": ghz_density,
    "w": w_density,
    "wexample3": wexample3_density,
    "gamma-mix": gamma_mix_density,
    "delta-mix": delta_mix_density,
    "beta-mix": beta_mix_density,
    "mixed": maximally_mixed_density,
}


def preset_density(name: str) -> np.ndarray:
    """Build and validate a preset by name; KeyError lists the options."""
    try:
        builder = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return validate_state(builder())
