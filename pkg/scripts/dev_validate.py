"""Development cross-check of lattice templates against the reference facts.

Run:  python3 scripts/dev_validate.py
"""
from __future__ import annotations

import numpy as np

from archqca import gf2, lattice, qca


def pauli_str(xi: np.ndarray) -> str:
    n = xi.size // 2
    out = []
    for y in range(n):
        x, z = xi[y], xi[n + y]
        if x and z:
            out.append(f"Y{y}")
        elif x:
            out.append(f"X{y}")
        elif z:
            out.append(f"Z{y}")
    return ".".join(out) if out else "I"


def tensor(q: qca.Qca, x: int, y: int) -> str:
    """C(x, y) as a Pauli string, from the accumulated transfer row."""
    M = qca.accumulated(q, x - 1)
    r = M.m[y % q.n, :].copy()
    lam = gf2.symplectic_form(q.n)
    xi = (lam.astype(np.int64) @ r.astype(np.int64) % 2).astype(np.uint8)
    return pauli_str(xi)


def report(name, n, N=None, foliation="standard"):
    tpl = lattice.load_template(name, foliation)
    lat = lattice.build(name, n, N or 4 * tpl.tau, foliation)
    q = qca.derive(lat)
    p = qca.period(q)
    print(f"== {name} ({foliation}) n={n}: tau={q.tau} Delta={q.delta} p={p}")
    if p is not qca.NOT_FOUND:
        ptau = p * q.tau
        latf = lattice.build(name, n, ptau, foliation)
        A = lattice.adjacency(latf)
        kdim = len(gf2.kernel_basis(A))
        print(f"   ker(adjacency) dim at N=p*tau={ptau}: {kdim} (want {2*n})")
    g = qca.find_gliders(q)
    print(f"   gliders: {len(g)}")
    return q, p


def main():
    # (4^4)
    q, p = report("4.4.4.4", 4)
    for l in range(4):
        print(f"   C(1,{l}) = {tensor(q,1,l)}   C(2,{l}) = {tensor(q,2,l)}",
              f"  C(p*tau,{l}) = {tensor(q, p*q.tau, l)}")
    cls = qca.classify(q, [4, 8, 16])
    print("   class:", cls)

    # (6^3)
    q, p = report("6.6.6", 4)
    ptau = p * q.tau
    for l in range(2):
        print(f"   C(2,{2*l}) = {tensor(q,2,2*l)} (want X{2*l}.Z{2*l+1})")
        print(f"   C(ptau-1,{2*l+1}) = {tensor(q,ptau-1,2*l+1)} (want Z{2*l+1}.X{(2*l+2)%4})")
        print(f"   C(ptau,{2*l}) = {tensor(q,ptau,2*l)} (want X{2*l})")
    print("   class:", qca.classify(q, [4, 8, 16]))

    # (4,8^2)
    q, p = report("4.8.8", 4)
    ptau = p * q.tau
    for l in range(2):
        print(f"   C(2,{2*l}) = {tensor(q,2,2*l)} (want X{2*l}.Z{2*l+1})")
        print(f"   C(ptau-1,{2*l}) = {tensor(q,ptau-1,2*l)} (want Z{2*l}.X{(2*l-1)%4})")
        print(f"   C(ptau,{2*l}) = {tensor(q,ptau,2*l)} (want X{2*l})")
    print("   class:", qca.classify(q, [4, 8, 16]))

    # (3^6) standard (diagonals sourced at odd wires)
    q, p = report("3.3.3.3.3.3", 8)
    n = 8
    ptau = p * q.tau
    for l in range(2):
        print(f"   C(2,{2*l}) = {tensor(q,2,2*l)} (want Z{(2*l-1)%n}.X{2*l}.Z{2*l+1})")
        print(f"   C(ptau,{2*l}) = {tensor(q,ptau,2*l)} (want X{(2*l-1)%n}.X{2*l}.X{2*l+1})")
        print(f"   C(ptau,{2*l+1}) = {tensor(q,ptau,2*l+1)} (want X{2*l+1})")
    print("   class:", qca.classify(q, [4, 8, 16]))

    # (3^6) rotated must be acausal
    try:
        lat = lattice.build("3.3.3.3.3.3", 4, 4, "rotated")
        qca.extract_slices(lat)
        print("rotated 3^6: NO acausal error (BAD)")
    except qca.AcausalCycle as e:
        print("rotated 3^6: AcausalCycle OK:", e)

    # decorated variants quick look
    for name, n in [("4.4.4.4", 4), ("6.6.6", 4), ("3.3.3.3.3.3", 4)]:
        tau = lattice.load_template(name).tau
        base = lattice.build(name, n, 4 * tau)
        dec = lattice.decorate(base)
        qd = qca.derive(dec)
        pd = qca.period(qd)
        print(f"decorated {name} n={n}: tau'={qd.tau} p={pd}",
              "p(2n)=", qca.period(qca.derive(lattice.decorate(lattice.build(name, 2*n, 4 * tau)))))


if __name__ == "__main__":
    main()
