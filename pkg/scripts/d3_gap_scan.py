"""Check whether the late-stage discords depend on how ties in G are broken.

For each time on a case-1 grid the successive-measurement chain is rerun
with the earlier axes rotated inside their degenerate eigenspaces. If D2
or D3 moves, the value is a convention and not a property of the state.
"""

import argparse

import numpy as np

from qcorr3.discord import DEGENERACY_TOL, g_matrix, gqd_k, project_measure, tqc
from qcorr3.dynamics import ReservoirParams, evolve_three, p_t
from qcorr3.experiments import CASE1_RATIOS
from qcorr3.qstate import bloch_parts, coeff_tensor
from qcorr3.states import DEFAULT_ALPHA_SQ, make_state


def top_space(g: np.ndarray, tol: float) -> np.ndarray:
    w, v = np.linalg.eigh(g)
    return v[:, w > w[-1] - tol]


def spread(c: np.ndarray, rng, trials: int) -> tuple[float, float]:
    """Range of (D2, D3) over random choices inside degenerate top eigenspaces."""
    d2s, d3s = [], []
    for _ in range(trials):
        space = top_space(g_matrix(bloch_parts(c), 1), DEGENERACY_TOL)
        e1 = space @ rng.normal(size=space.shape[1])
        c1 = project_measure(c, e1 / np.linalg.norm(e1), 1)
        d2, _ = gqd_k(c1, 2)
        space = top_space(g_matrix(bloch_parts(c1), 2), DEGENERACY_TOL)
        e2 = space @ rng.normal(size=space.shape[1])
        c2 = project_measure(c1, e2 / np.linalg.norm(e2), 2)
        d3, _ = gqd_k(c2, 3)
        d2s.append(d2)
        d3s.append(d3)
    return float(np.ptp(d2s)), float(np.ptp(d3s))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--state", choices=("ghz", "w"), default="ghz")
    parser.add_argument("--t-max", type=float, default=20.0)
    parser.add_argument("--steps", type=int, default=81)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rho0 = make_state(args.state, DEFAULT_ALPHA_SQ[args.state])
    print("ratio,gamma0_t,D3,gap1,gap2,gap3,spread_D2,spread_D3")
    for ratio in CASE1_RATIOS:
        params = ReservoirParams.from_ratio(ratio)
        for t in np.linspace(0.0, args.t_max, args.steps):
            rho = evolve_three(rho0, p_t(t, params))
            rep = tqc(rho)
            s2, s3 = spread(coeff_tensor(rho), rng, args.trials)
            gaps = ",".join(f"{g:.3e}" for g in rep.gaps)
            print(f"{ratio},{t:.4g},{rep.d3:.6e},{gaps},{s2:.3e},{s3:.3e}")


if __name__ == "__main__":
    main()
