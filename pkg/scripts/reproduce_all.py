"""Write every sweep table (cases 1-3, both state families, plus P_t) to a directory."""

import argparse
import time
from pathlib import Path

from qcorr3 import experiments as ex


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--t-max", type=float, default=ex.DEFAULT_T_MAX)
    parser.add_argument("--steps", type=int, default=ex.DEFAULT_STEPS)
    parser.add_argument("--grid-points", type=int, default=101)
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    times = dict(t_max=args.t_max, n_t=args.steps, jobs=args.jobs)
    grid = ex.unit_grid(args.grid_points)

    (out / "pt.csv").write_text(ex.run_pt(ex.CASE1_RATIOS, args.t_max, args.steps).to_csv())
    for family in ("ghz", "w"):
        jobs = {
            f"case1_{family}.csv": lambda: ex.run_case1(ex.case_config(1, state_family=family, **times)),
            f"case2_{family}.csv": lambda: ex.run_case2(
                ex.case_config(2, state_family=family, alpha_sq_grid=grid, **times)),
            f"case3_{family}.csv": lambda: ex.run_case3(
                ex.case_config(3, state_family=family, r_grid=grid, **times)),
        }
        for name, run in jobs.items():
            start = time.perf_counter()
            (out / name).write_text(run().to_csv())
            print(f"{name}: {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
