"""Hot numeric kernels for the determinant scan.

Everything here is written in a numba-compatible numpy/math subset and
decorated with :func:`magstab._accel.maybe_jit`, so the identical source runs
jitted or as plain python depending on the selected backend.  Errors are
signalled through integer status codes instead of exceptions; the rich API in
:mod:`magstab.modes` / :mod:`magstab.dispersion` translates them.

Mode bookkeeping: the three root families (shear, thickness-pressure,
magnetic) are kept in a fixed canonical order so the determinant stays a
continuous function of the stretch; sorting roots by value would swap columns
whenever two families cross and flip the determinant sign spuriously.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import maybe_jit

STATUS_OK = 0
STATUS_INADMISSIBLE = 1
STATUS_COINCIDENT = 2

#: relative tolerance identifying *structural* (exact for all stretches)
#: root coincidences; accidental crossings separate under a 1e-7 nudge
_S_MERGE_RTOL = 1e-11
_RES_RTOL = 1e-7


@maybe_jit
def layer_mode_rows(mu, gam, al, be, lam, b, include_negative, rows, rexp):
    """Boundary-row coefficients of every mode of one layer.

    Fills ``rows[:, j]`` with (T21, T22, B2, H1, u1, u2) traces of mode ``j``
    at unit amplitude and ``rexp[j]`` with its exponent; returns
    ``(count, status)``.  ``rows`` must be (6, 6), ``rexp`` (6,).
    """
    lam2 = lam * lam
    i4 = b * b
    half_mr = 0.5 * mu * (1.0 - gam)
    A1111 = mu + half_mr / lam2
    A2222 = mu + half_mr * lam2 + be * i4
    A1122 = 2.0 * half_mr
    A2211 = 2.0 * half_mr
    A1212 = mu
    A2121 = mu + be * i4
    A2112 = -half_mr
    A1221 = -half_mr
    G112 = 0.0
    G222 = 2.0 * be * b / lam
    G211 = be * lam * b
    G121 = be * b / lam
    K11 = al + be * lam2
    K22 = al + be / lam2
    p = 0.5 * mu * (1.0 - gam + 2.0 / lam2) + 0.5 * i4 * (2.0 * be - 1.0) / lam2

    den3 = (al + al * be * (i4 / mu) + be * lam2) * lam2
    if den3 <= 0.0:
        return 0, STATUS_INADMISSIBLE
    s3 = (al * lam2 + be) / den3
    if s3 <= 0.0:
        return 0, STATUS_INADMISSIBLE

    s_vals = np.empty(3)
    s_vals[0] = 1.0
    s_vals[1] = 1.0 / (lam2 * lam2)
    s_vals[2] = s3
    mult = np.ones(3, dtype=np.int64)
    # merge the magnetic family into a mechanical one when they coincide
    if abs(s3 - s_vals[0]) <= _S_MERGE_RTOL * max(1.0, s3):
        mult[0] = 2
        mult[2] = 0
    elif abs(s3 - s_vals[1]) <= _S_MERGE_RTOL * max(1.0, s3):
        mult[1] = 2
        mult[2] = 0
    if abs(s_vals[0] - s_vals[1]) <= _S_MERGE_RTOL:
        # shear and pressure families coincide only at unit stretch, which the
        # search excludes; no two-dimensional basis is available there
        return 0, STATUS_COINCIDENT

    coeff_scale = abs(A2222) + abs(p) * (1.0 + lam2) + abs(A1212) + 1.0
    nsign = 2 if include_negative else 1
    count = 0
    for isign in range(nsign):
        sign = 1.0 - 2.0 * isign
        for fam in range(3):
            if mult[fam] == 0:
                continue
            r = sign * math.sqrt(s_vals[fam])
            r2 = r * r
            cF = r2 * A2121 - A1111 - p / lam2          # equilibrium-1 row
            cG = -r * (A1122 + A2112 + p)
            cV = r2 * G211 + G112
            dF = r * (A1221 + A2211 + p)                # equilibrium-2 row
            dG = r2 * (A2222 + p * lam2) - A1212
            dV = r * (G121 - G222)
            if mult[fam] == 1:
                F = 1.0
                G = -1.0 / (r * lam2)
                den = r2 * K11 - K22
                num = (r2 * G211 + G112) * F + r * (G222 - G121) * G
                if abs(den) < 1e-10 * max(1.0, abs(K11) + abs(K22)):
                    if abs(num) > 1e-9 * coeff_scale:
                        return 0, STATUS_COINCIDENT
                    # decoupled magnetic mode
                    F = 0.0
                    G = 0.0
                    V = 1.0
                else:
                    V = -num / den
                P = -lam2 * (cF * F + cG * G + cV * V)
                res = dF * F + dG * G + dV * V - r * P
                vec_scale = max(max(1.0, abs(V)), abs(P) / lam2)
                if abs(res) > _RES_RTOL * coeff_scale * vec_scale:
                    return 0, STATUS_COINCIDENT
                _fill_mode(rows, rexp, count, r, F, G, V, P,
                           A2121, A2112, A2211, A2222, G211, G222, G121, K11, p, lam2)
                count += 1
            else:
                # two-dimensional mode space: mechanical and magnetic vectors
                F = 1.0
                G = -1.0 / (r * lam2)
                curl = (r2 * G211 + G112) * F + r * (G222 - G121) * G
                P = -lam2 * (cF * F + cG * G)
                res = dF * F + dG * G - r * P
                if abs(curl) > 1e-8 * coeff_scale or abs(res) > _RES_RTOL * coeff_scale:
                    return 0, STATUS_COINCIDENT
                _fill_mode(rows, rexp, count, r, F, G, 0.0, P,
                           A2121, A2112, A2211, A2222, G211, G222, G121, K11, p, lam2)
                count += 1
                P2 = -lam2 * cV
                res2 = dV - r * P2
                if abs(res2) > _RES_RTOL * coeff_scale * max(1.0, abs(P2)):
                    return 0, STATUS_COINCIDENT
                _fill_mode(rows, rexp, count, r, 0.0, 0.0, 1.0, P2,
                           A2121, A2112, A2211, A2222, G211, G222, G121, K11, p, lam2)
                count += 1
    return count, STATUS_OK


@maybe_jit
def _fill_mode(rows, rexp, j, r, F, G, V, P,
               A2121, A2112, A2211, A2222, G211, G222, G121, K11, p, lam2):
    rows[0, j] = A2121 * r * F - (A2112 + p) * G + G211 * r * V
    rows[1, j] = A2211 * F + (A2222 + p * lam2) * r * G - P - G222 * V
    rows[2, j] = -V
    rows[3, j] = G211 * r * F - G121 * G + K11 * r * V
    rows[4, j] = F
    rows[5, j] = G
    rexp[j] = r


@maybe_jit
def det_eval(lam, k, eulerian, b, mu_s, gam_s, al_s, be_s,
             mu_u, gam_u, al_u, be_u, reduced):
    """Scaled boundary determinant at one stretch; returns (det, status)."""
    K = lam * k if eulerian else k
    rows_s = np.zeros((6, 6))
    r_s = np.zeros(6)
    ns, st = layer_mode_rows(mu_s, gam_s, al_s, be_s, lam, b, False, rows_s, r_s)
    if st != STATUS_OK:
        return np.nan, st
    rows_u = np.zeros((6, 6))
    r_u = np.zeros(6)
    nu, st = layer_mode_rows(mu_u, gam_u, al_u, be_u, lam, b, True, rows_u, r_u)
    if st != STATUS_OK:
        return np.nan, st
    if ns != 3 or nu != 6:
        return np.nan, STATUS_COINCIDENT

    lam2 = lam * lam
    nrow = 11 if reduced else 12
    M = np.zeros((nrow, nrow))
    for j in range(3):
        for i in range(6):
            M[i, j] = -rows_s[i, j]
    for j in range(6):
        r = r_u[j]
        rpos = r if r > 0.0 else 0.0
        cs = math.exp(-rpos * K)              # reference thickness is 1
        gs = math.exp((r - rpos) * K)
        for i in range(6):
            M[i, 3 + j] = rows_u[i, j] * cs
        if reduced:
            M[6, 3 + j] = rows_u[0, j] * gs
            M[7, 3 + j] = rows_u[1, j] * gs
            M[8, 3 + j] = rows_u[2, j] * gs
            M[9, 3 + j] = rows_u[3, j] * gs
            M[10, 3 + j] = rows_u[5, j] * gs   # surface-u1 row dropped
        else:
            for i in range(6):
                M[6 + i, 3 + j] = rows_u[i, j] * gs
    # free-space column entries (surface rows; decay factor absorbed)
    b2l2 = b * b / lam2
    bl = b / lam
    if reduced:
        M[6, 9] = 1.5 * b2l2
        M[7, 9] = 0.5 * b2l2
        M[9, 9] = 2.0 * bl
        M[10, 9] = -1.0
        M[6, 10] = bl
        M[7, 10] = bl
        M[8, 10] = 1.0
        M[9, 10] = 1.0
    else:
        M[6, 9] = b2l2
        M[6, 10] = 0.5 * b2l2
        M[6, 11] = bl
        M[7, 9] = 0.5 * b2l2
        M[7, 11] = bl
        M[8, 11] = 1.0
        M[9, 9] = bl
        M[9, 10] = bl
        M[9, 11] = 1.0
        M[10, 9] = -1.0
        M[11, 10] = -1.0
    for j in range(nrow):
        cmax = 0.0
        for i in range(nrow):
            a = abs(M[i, j])
            if a > cmax:
                cmax = a
        if cmax > 0.0:
            inv = 1.0 / cmax
            for i in range(nrow):
                M[i, j] *= inv
    return np.linalg.det(M), STATUS_OK


@maybe_jit
def det_eval_retry(lam, k, eulerian, b, mu_s, gam_s, al_s, be_s,
                   mu_u, gam_u, al_u, be_u, reduced):
    """Determinant with stretch nudging on unresolved coincidences.

    Returns (det, status, lam_used, n_evals).
    """
    lam_used = lam
    n = 0
    for attempt in range(4):
        d, st = det_eval(lam_used, k, eulerian, b, mu_s, gam_s, al_s, be_s,
                         mu_u, gam_u, al_u, be_u, reduced)
        n += 1
        if st != STATUS_COINCIDENT:
            return d, st, lam_used, n
        lam_used = lam + 1e-7 * 10.0**attempt
    return np.nan, STATUS_COINCIDENT, lam_used, n


@maybe_jit
def scan_determinant(lams, k, eulerian, b, mu_s, gam_s, al_s, be_s,
                     mu_u, gam_u, al_u, be_u, reduced):
    """Determinant trace over a stretch grid: (dets, statuses, lams_used, n_evals)."""
    n = lams.shape[0]
    dets = np.empty(n)
    statuses = np.empty(n, dtype=np.int64)
    used = np.empty(n)
    total = 0
    for i in range(n):
        d, st, lu, ne = det_eval_retry(lams[i], k, eulerian, b,
                                       mu_s, gam_s, al_s, be_s,
                                       mu_u, gam_u, al_u, be_u, reduced)
        dets[i] = d
        statuses[i] = st
        used[i] = lu
        total += ne
    return dets, statuses, used, total


@maybe_jit
def bisect_sign_change(lo, hi, flo, k, eulerian, b, mu_s, gam_s, al_s, be_s,
                       mu_u, gam_u, al_u, be_u, reduced, tol, max_iter):
    """Refine a bracketed sign change; returns (root, n_evals, ok)."""
    a = lo
    c = hi
    fa = flo
    n = 0
    for _ in range(max_iter):
        if c - a < tol:
            break
        mid = 0.5 * (a + c)
        fm, st, _, ne = det_eval_retry(mid, k, eulerian, b, mu_s, gam_s, al_s, be_s,
                                       mu_u, gam_u, al_u, be_u, reduced)
        n += ne
        if st != STATUS_OK or not np.isfinite(fm):
            return 0.5 * (a + c), n, False
        if (fm > 0.0) == (fa > 0.0):
            a = mid
            fa = fm
        else:
            c = mid
    return 0.5 * (a + c), n, True
