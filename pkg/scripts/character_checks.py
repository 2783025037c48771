"""Character identities at several truncations, to see the residuals converge.

Covers the diag(2,2) coset identity, the free-fermion signed characters under
S-tilde and the k = 2 parafermion against the Ising model.
"""
from __future__ import annotations

import argparse

from fusionforge import fixtures, setups
from fusionforge.qseries import DEFAULT_TAUS, verify_extension_characters
from fusionforge.suites import diag_toy_identity, parafermion_ising_characters


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--truncs", type=int, nargs="+", default=[10, 20, 40, 60])
    args = ap.parse_args()

    ff = fixtures.free_fermion()
    assignment = setups.characters("free-fermion")
    print(f"{'trunc':>6} {'toy inverse':>12} {'toy forward':>12} {'ff S':>10} {'ff T':>10} {'pf vs Ising':>12}")
    for trunc in args.truncs:
        inv, fwd = diag_toy_identity(0.3j, trunc)
        s_rep, t_rep = verify_extension_characters(ff, assignment, DEFAULT_TAUS, trunc)
        coeff, value = parafermion_ising_characters(DEFAULT_TAUS, trunc)
        print(f"{trunc:>6} {inv:>12.2e} {fwd:>12.2e} {s_rep.residual:>10.2e} {t_rep.residual:>10.2e} "
              f"{max(coeff, value):>12.2e}")


if __name__ == "__main__":
    main()
