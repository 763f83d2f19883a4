#!/usr/bin/env python3
"""Solve DIMACS CNF files with an external SAT solver.

Prints SAT or UNSAT per file, one line each, in argument order. With
--model, each SAT line is followed by the satisfying assignment as
space-separated literals.
"""
import argparse
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("cnf", nargs="+")
    ap.add_argument("--solver", default="cadical153")
    ap.add_argument("--model", action="store_true")
    args = ap.parse_args()

    for path in args.cnf:
        formula = CNF(from_file=path)
        with Solver(name=args.solver, bootstrap_with=formula.clauses) as s:
            sat = s.solve()
            print("SAT" if sat else "UNSAT")
            if sat and args.model:
                print(" ".join(str(v) for v in (s.get_model() or [])))
    return 0


if __name__ == "__main__":
    sys.exit(main())
