"""Search for the (3,4,6,4) unit-cell template (Delta=4, tau=3, full rows).

Filters, in order of application:
  A. degree: every site has exactly 2 coupling-edge ends (vertex degree 4).
  B. D3 (diagonals sourced at column 3) must be empty  [T3: Z_y -> X_y].
  C. T3*T2 maps Z_{4l+2} -> Y_{4l+2} Y_{4l+3} X_{4l+4}.
  D. row X_{4l+1} of T1 equals {X_4l, Z_{4l+1}, X_{4l+2}} exactly.
  E. full: period p = n/2 at n=8 (p*tau = 3n/2), gliders include the four
     two-site classes {Z_{4l}X_{4l+1}, X_{4l}Z_{4l+1}, Z_{4l+2}X_{4l+3},
     X_{4l+2}Z_{4l+3}}, C(ptau,l)=X_l for all l, C(2,4l+1) and
     C(ptau-1,4l+2) exact, and the same at n=16 (p=8).
"""
from __future__ import annotations

import itertools

import numpy as np

from archqca import gf2, qca
from archqca.gf2 import SymplecticMatrix
from archqca.lattice import LatticeTemplate, _build_from_template

DELTA, TAU = 4, 3

CZ_CLASSES = [(c, r, d) for c in range(TAU) for r in range(DELTA) for d in (1, 2, 3)]
DG_CLASSES = [(c, r, e) for c in range(TAU) for r in range(DELTA)
              for e in (-3, -2, -1, 1, 2, 3)]


def template(cz, dg):
    edges = []
    for (c, r, d) in cz:
        edges.append((c, r, c, r + d))
    for (c, r, e) in dg:
        edges.append((c, r, c + 1, r + e))
    sites = tuple((c, r) for c in range(TAU) for r in range(DELTA))
    return LatticeTemplate(name="3.4.6.4", foliation="standard", delta=DELTA,
                           tau=TAU, sites=sites, edges=tuple(edges), wires="rows")


def col_ends(cz, dg):
    ends = np.zeros((TAU, DELTA), dtype=int)
    for (c, r, d) in cz:
        ends[c, r % DELTA] += 1
        ends[c, (r + d) % DELTA] += 1
    for (c, r, e) in dg:
        ends[c, r % DELTA] += 1
        ends[(c + 1) % TAU, (r + e) % DELTA] += 1
    return ends


def pauli_vec(n, pairs):
    v = np.zeros(2 * n, dtype=np.uint8)
    for L, w in pairs:
        w %= n
        if L in "XY":
            v[w] ^= 1
        if L in "ZY":
            v[n + w] ^= 1
    return v


def slices_for(cz, dg, n):
    tpl = template(cz, dg)
    lat = _build_from_template(tpl, n, 2 * TAU)
    return qca.extract_slices(lat), lat


def check_full(cz, dg, n):
    tpl = template(cz, dg)
    lat = _build_from_template(tpl, n, 2 * TAU)
    try:
        q = qca.derive(lat)
    except qca.AcausalCycle:
        return False
    p = qca.period(q, 4 * n)
    if p is qca.NOT_FOUND or p * TAU != 3 * n // 2:
        return False
    ptau = p * TAU
    lam = gf2.symplectic_form(n)
    # gliders: the four named two-site classes
    shift = qca.shift_matrix(n, DELTA)
    for l in range(n // 4):
        for pairs in ([("Z", 4 * l), ("X", 4 * l + 1)], [("X", 4 * l), ("Z", 4 * l + 1)],
                      [("Z", 4 * l + 2), ("X", 4 * l + 3)], [("X", 4 * l + 2), ("Z", 4 * l + 3)]):
            g = pauli_vec(n, pairs)
            if not np.array_equal(q.transfer.apply(g), shift.apply(g)):
                return False
    # tensor rows
    def crow(alpha, y):
        M = qca.accumulated(q, alpha)
        return (lam @ M.m[y % n, :]) % 2
    for y in range(n):
        if not np.array_equal(crow(ptau - 1, y), pauli_vec(n, [("X", y)])):
            return False
    for l in range(n // 4):
        want = pauli_vec(n, [("Z", 4 * l), ("X", 4 * l + 1), ("Z", 4 * l + 2)])
        if not np.array_equal(crow(1, 4 * l + 1), want):
            return False
        want = pauli_vec(n, [("Y", 4 * l + 2), ("Y", 4 * l + 3), ("X", 4 * l + 4)])
        if not np.array_equal(crow(ptau - 2, 4 * l + 2), want):
            return False
    return True


def main():
    n = 8
    lam = gf2.symplectic_form(n)
    cz3_opts = []
    for k in range(0, 5):
        for combo in itertools.combinations([cc for cc in CZ_CLASSES if cc[0] == 2], k):
            ends = col_ends(combo, [])
            if (ends[2] <= 2).all():
                cz3_opts.append(combo)
    dg2_all = [dd for dd in DG_CLASSES if dd[0] == 1]
    dg1_all = [dd for dd in DG_CLASSES if dd[0] == 0]
    cz2_all = [cc for cc in CZ_CLASSES if cc[0] == 1]
    cz1_all = [cc for cc in CZ_CLASSES if cc[0] == 0]

    hits = []
    tested_c = pass_c = pass_d = 0
    for cz3 in cz3_opts:
        need_d2 = 8 - 2 * len(cz3)      # |D2| targets into column 3
        if need_d2 < 0:
            continue
        for d2 in itertools.combinations(dg2_all, need_d2):
            t3 = col_ends([], d2)[2]
            if not ((t3 + col_ends(cz3, [])[2]) == 2).all():
                continue
            # acausal check for gap 2
            src = {dd[1] for dd in d2}
            tgt = {(dd[1] + dd[2]) % DELTA for dd in d2}
            if src & tgt:
                continue
            for k2 in range(0, 5):
                for cz2 in itertools.combinations(cz2_all, k2):
                    ends2 = col_ends(cz2, d2)[1]
                    if (ends2 > 2).any():
                        continue
                    # filter C: T3*T2 action on Z_{4l+2}
                    tested_c += 1
                    try:
                        slcs, _ = slices_for(cz3 + cz2, d2, n)
                    except Exception:
                        continue
                    T2 = qca.compile_slice(slcs[1])
                    T3 = qca.compile_slice(slcs[2])
                    M = T3 @ T2
                    ok = True
                    for l in range(n // 4):
                        want = pauli_vec(n, [("Y", 4 * l + 2), ("Y", 4 * l + 3), ("X", 4 * l + 4)])
                        if not np.array_equal(M.apply(pauli_vec(n, [("Z", 4 * l + 2)])), want):
                            ok = False
                            break
                    if not ok:
                        continue
                    pass_c += 1
                    # now choose D1 (targets fill column-2 slack) and CZ1
                    slack2 = 2 - ends2
                    need_d1 = int(slack2.sum())
                    for d1 in itertools.combinations(dg1_all, need_d1):
                        e1 = col_ends([], d1)
                        if not ((e1[1] == slack2).all()):
                            continue
                        src1 = {dd[1] for dd in d1}
                        tgt1 = {(dd[1] + dd[2]) % DELTA for dd in d1}
                        if src1 & tgt1:
                            continue
                        slack1 = 2 - e1[0]
                        if (slack1 < 0).any() or slack1.sum() % 2:
                            continue
                        for k1 in range(0, 5):
                            for cz1 in itertools.combinations(cz1_all, k1):
                                if not (col_ends(cz1, [])[0] == slack1).all():
                                    continue
                                # filter D: row X_{4l+1} of T1
                                try:
                                    slcs2, _ = slices_for(cz1, d1, n)
                                except Exception:
                                    continue
                                T1 = qca.compile_slice(slcs2[0])
                                ok = True
                                for l in range(n // 4):
                                    row = (lam @ T1.m[4 * l + 1, :]) % 2
                                    want = pauli_vec(n, [("Z", 4 * l), ("X", 4 * l + 1), ("Z", 4 * l + 2)])
                                    if not np.array_equal(row, want):
                                        ok = False
                                        break
                                if not ok:
                                    continue
                                pass_d += 1
                                cz = cz1 + cz2 + cz3
                                dg = d1 + d2
                                if check_full(cz, dg, 8) and check_full(cz, dg, 16):
                                    hits.append((cz, dg))
                                    print("HIT cz=", cz, "dg=", dg, flush=True)
    print("tested:", tested_c, "passC:", pass_c, "passD:", pass_d,
          "hits:", len(hits))
    return hits


if __name__ == "__main__":
    main()
