"""Parafermion cosets sl2(k) / U(1) for a range of levels.

Prints the class count, central charge, axiom verdict and the weights mod 1.
"""
from __future__ import annotations

import argparse

from fusionforge.coset import coset_count, coset_modular_data
from fusionforge.fixtures import parafermion_setup
from fusionforge.modular_data import check_axioms
from fusionforge.rational import frac_str


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=8)
    args = ap.parse_args()

    for k in range(1, args.kmax + 1):
        setup = parafermion_setup(k)
        n = coset_count(setup)
        C = coset_modular_data(setup)
        ok = check_axioms(C).passed
        weights = " ".join(frac_str(h) for h in sorted(set(C.h)))
        print(f"k={k:<2} classes={n:<3} (expected {k * (k + 1) // 2:<3}) c={frac_str(C.central_charge):<6} "
              f"axioms={'ok' if ok else 'FAIL'}  h mod 1: {weights}")


if __name__ == "__main__":
    main()
