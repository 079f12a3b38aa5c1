"""The mapped-modulus landscape over (eigenvalue, memory weight).

Each network eigenvalue lam and memory weight gamma determine two
eigenvalues of the stacked iteration; their larger modulus decides how
fast that mode decays. The discriminant-zero curve lam = 4(gamma-1)/gamma^2
separates real pairs from complex ones: on the complex side the modulus
is sqrt((gamma-1)*lam) regardless of which complex root you take. The
optimal gamma* for a network sits exactly where this curve meets its
smallest eigenvalue.
"""

import numpy as np

from consensuslab import (
    eigendecompose_symmetric,
    improving_gamma_exists,
    lambda_hat_max,
    make_ring,
    optimal_gamma,
    rho_ess,
)

# a coarse text rendering of the field max|mapped roots|(lam, gamma)
gammas = np.linspace(0.1, 1.9, 10)
lams = np.linspace(-1.0, 1.0, 9)
print("max mapped modulus; rows lam, columns gamma\n")
print(" lam\\g " + "".join(f"{g:>7.2f}" for g in gammas))
for lam in lams:
    row = f"{lam:>6.2f}"
    for g in gammas:
        row += f"{lambda_hat_max(float(lam), float(g)):>7.3f}"
    print(row)

# the discriminant-zero curve, where pairs become critically damped
print("\ndiscriminant-zero curve lam = 4(gamma-1)/gamma^2:")
for g in (0.7, 0.8541019662, 1.0, 1.3):
    print(f"  gamma {g:.4f} -> lam {4 * (g - 1) / g**2:+.4f}")

# on a concrete network, the slow eigenvalue meets the curve at gamma*
spec = eigendecompose_symmetric(make_ring(4, 0.1))
gs = optimal_gamma(spec)
print(f"\n4-ring with self-loops: lam_n = {spec.eigenvalues[-1]:.4f}, "
      f"gamma* = {gs.gamma:.6f}, rate {gs.rate:.6f}")

# even without optimizing, a small nudge of gamma away from 1 already
# beats plain DeGroot whenever the spectrum is not degenerate
delta, improved = improving_gamma_exists(spec)
print(f"gamma = 1{delta:+g} already improves the rate: "
      f"{improved:.6f} < {rho_ess(spec):.6f}")
