#!/usr/bin/env python3
"""File bridge between xdock and HiGHS (highspy).

usage: highs_bridge.py --model M.mps --out SOL.txt --time-limit SECONDS [--start START.txt]
"""
import argparse
import math
import sys

import highspy


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--model", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--time-limit", type=float, default=60.0)
    parser.add_argument("--start")
    args = parser.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("time_limit", args.time_limit)
    h.setOptionValue("mip_rel_gap", 0.0)
    h.setOptionValue("mip_abs_gap", 0.0)
    h.setOptionValue("threads", 1)
    h.setOptionValue("random_seed", 0)
    if h.readModel(args.model) == highspy.HighsStatus.kError:
        print("cannot read " + args.model, file=sys.stderr)
        return 2
    lp = h.getLp()
    names = list(lp.col_names_)
    if args.start:
        start = {}
        with open(args.start) as f:
            for line in f:
                line = line.split("#", 1)[0].split()
                if len(line) == 2:
                    start[line[0]] = float(line[1])
        sol = highspy.HighsSolution()
        sol.col_value = [start.get(n, 0.0) for n in names]
        sol.value_valid = True
        h.setSolution(sol)
    h.run()

    status = h.getModelStatus()
    info = h.getInfo()
    has_solution = info.primal_solution_status == 2
    if status == highspy.HighsModelStatus.kOptimal:
        label = "optimal"
    elif status == highspy.HighsModelStatus.kInfeasible:
        label = "infeasible"
    elif has_solution:
        label = "incumbent"
    elif status == highspy.HighsModelStatus.kTimeLimit:
        label = "timeout"
    else:
        label = "error"

    with open(args.out, "w") as out:
        out.write("# status: %s\n" % label)
        out.write("# solver: highs %s\n" % h.version())
        if has_solution:
            out.write("# objective: %.12g\n" % info.objective_function_value)
            bound = info.mip_dual_bound
            if math.isfinite(bound):
                out.write("# bound: %.12g\n" % bound)
            for name, value in zip(names, h.getSolution().col_value):
                out.write("%s %.12g\n" % (name, value))
    return 0


if __name__ == "__main__":
    sys.exit(main())
