# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in kernels_py (same algorithms, C loops).

Covers the built-in nonlinearity kinds only; custom callables route to the
pure-Python stepper via the dispatcher in plaplab._core.
"""

import numpy as np

from libc.math cimport exp, fabs, copysign, pow, sqrt, isfinite, INFINITY, NAN


cdef inline double _f_eval(int kind, double q, double u) nogil:
    if kind == 0:
        if u > 709.0:
            return INFINITY
        return exp(u)
    elif kind == 1:
        # positive branch only: trial values below zero poison the stage
        if u < 0.0:
            return NAN
        return pow(u, q)
    else:
        if u <= 0.0:
            return NAN
        return -pow(u, q)


def solve_radial(double p, double alpha, double n, int kind, double q, F,
                 double r0, double u0, double w0, double rmax,
                 double rtol, double atol, long max_steps, double max_step_frac):
    """See kernels_py.solve_radial; F is ignored (built-in kinds only)."""
    cdef double A21 = 1.0/5.0
    cdef double A31 = 3.0/40.0, A32 = 9.0/40.0
    cdef double A41 = 44.0/45.0, A42 = -56.0/15.0, A43 = 32.0/9.0
    cdef double A51 = 19372.0/6561.0, A52 = -25360.0/2187.0
    cdef double A53 = 64448.0/6561.0, A54 = -212.0/729.0
    cdef double A61 = 9017.0/3168.0, A62 = -355.0/33.0, A63 = 46732.0/5247.0
    cdef double A64 = 49.0/176.0, A65 = -5103.0/18656.0
    cdef double B1 = 35.0/384.0, B3 = 500.0/1113.0, B4 = 125.0/192.0
    cdef double B5 = -2187.0/6784.0, B6 = 11.0/84.0
    cdef double E1 = 71.0/57600.0, E3 = -71.0/16695.0, E4 = 71.0/1920.0
    cdef double E5 = -17253.0/339200.0, E6 = 22.0/525.0, E7 = -1.0/40.0

    cdef bint positive_domain = (kind == 1 or kind == 2)
    cdef double inv_pm1 = 1.0 / (p - 1.0)
    cdef double nm1 = n - 1.0
    cdef double pw = n - 1.0 + alpha

    cdef Py_ssize_t cap = 4096
    r_buf = np.empty(cap, dtype=np.float64)
    u_buf = np.empty(cap, dtype=np.float64)
    w_buf = np.empty(cap, dtype=np.float64)
    cdef double[:] rv = r_buf
    cdef double[:] uv = u_buf
    cdef double[:] wv = w_buf
    cdef Py_ssize_t count = 0

    cdef double r = r0, u = u0, w = w0
    cdef double dt = 0.01 * r0
    cdef double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w, k5u, k5w, k6u, k6w, k7u, k7w
    cdef double yu, yw, unew, wnew, erru, errw, su, sw, errnorm, fac, dt_cap, mag
    cdef int status = 3  # MAX_STEPS
    cdef bint domain_reject = False
    cdef bint last
    cdef long steps = 0

    rv[0] = r; uv[0] = u; wv[0] = w
    count = 1

    # initial slopes
    if w == 0.0:
        k1u = 0.0
    elif p == 2.0:
        k1u = w * pow(r, -nm1)
    else:
        k1u = copysign(pow(fabs(w) * pow(r, -nm1), inv_pm1), w)
    k1w = -pow(r, pw) * _f_eval(kind, q, u)

    while steps < max_steps:
        steps += 1
        if r >= rmax * (1.0 - 1e-14):
            status = 0  # REACHED_RMAX
            break
        dt_cap = max_step_frac * r
        if dt > dt_cap:
            dt = dt_cap
        last = False
        if r + dt >= rmax:
            dt = rmax - r
            last = True
        if dt < 1e-15 * r:
            status = 1 if domain_reject else 4
            break

        yu = u + dt * (A21 * k1u)
        yw = w + dt * (A21 * k1w)
        k2u = 0.0 if yw == 0.0 else (yw * pow(r + 0.2*dt, -nm1) if p == 2.0
              else copysign(pow(fabs(yw) * pow(r + 0.2*dt, -nm1), inv_pm1), yw))
        k2w = -pow(r + 0.2*dt, pw) * _f_eval(kind, q, yu)

        yu = u + dt * (A31 * k1u + A32 * k2u)
        yw = w + dt * (A31 * k1w + A32 * k2w)
        k3u = 0.0 if yw == 0.0 else (yw * pow(r + 0.3*dt, -nm1) if p == 2.0
              else copysign(pow(fabs(yw) * pow(r + 0.3*dt, -nm1), inv_pm1), yw))
        k3w = -pow(r + 0.3*dt, pw) * _f_eval(kind, q, yu)

        yu = u + dt * (A41 * k1u + A42 * k2u + A43 * k3u)
        yw = w + dt * (A41 * k1w + A42 * k2w + A43 * k3w)
        k4u = 0.0 if yw == 0.0 else (yw * pow(r + 0.8*dt, -nm1) if p == 2.0
              else copysign(pow(fabs(yw) * pow(r + 0.8*dt, -nm1), inv_pm1), yw))
        k4w = -pow(r + 0.8*dt, pw) * _f_eval(kind, q, yu)

        yu = u + dt * (A51 * k1u + A52 * k2u + A53 * k3u + A54 * k4u)
        yw = w + dt * (A51 * k1w + A52 * k2w + A53 * k3w + A54 * k4w)
        k5u = 0.0 if yw == 0.0 else (yw * pow(r + dt*8.0/9.0, -nm1) if p == 2.0
              else copysign(pow(fabs(yw) * pow(r + dt*8.0/9.0, -nm1), inv_pm1), yw))
        k5w = -pow(r + dt*8.0/9.0, pw) * _f_eval(kind, q, yu)

        yu = u + dt * (A61 * k1u + A62 * k2u + A63 * k3u + A64 * k4u + A65 * k5u)
        yw = w + dt * (A61 * k1w + A62 * k2w + A63 * k3w + A64 * k4w + A65 * k5w)
        k6u = 0.0 if yw == 0.0 else (yw * pow(r + dt, -nm1) if p == 2.0
              else copysign(pow(fabs(yw) * pow(r + dt, -nm1), inv_pm1), yw))
        k6w = -pow(r + dt, pw) * _f_eval(kind, q, yu)

        unew = u + dt * (B1 * k1u + B3 * k3u + B4 * k4u + B5 * k5u + B6 * k6u)
        wnew = w + dt * (B1 * k1w + B3 * k3w + B4 * k4w + B5 * k5w + B6 * k6w)
        k7u = 0.0 if wnew == 0.0 else (wnew * pow(r + dt, -nm1) if p == 2.0
              else copysign(pow(fabs(wnew) * pow(r + dt, -nm1), inv_pm1), wnew))
        k7w = -pow(r + dt, pw) * _f_eval(kind, q, unew)

        erru = dt * (E1 * k1u + E3 * k3u + E4 * k4u + E5 * k5u + E6 * k6u + E7 * k7u)
        errw = dt * (E1 * k1w + E3 * k3w + E4 * k4w + E5 * k5w + E6 * k6w + E7 * k7w)
        su = atol + rtol * max(fabs(u), fabs(unew))
        sw = atol + rtol * max(fabs(w), fabs(wnew))
        if isfinite(erru) and isfinite(errw) and isfinite(unew):
            errnorm = sqrt(0.5 * ((erru / su) * (erru / su) + (errw / sw) * (errw / sw)))
        else:
            errnorm = INFINITY

        if errnorm <= 1.0:
            if positive_domain and unew <= 0.0:
                domain_reject = True
                dt *= 0.5
                continue
            domain_reject = False
            r += dt
            u = unew
            w = wnew
            k1u = k7u
            k1w = k7w
            if count == cap:
                cap *= 2
                r_buf = np.resize(r_buf, cap)
                u_buf = np.resize(u_buf, cap)
                w_buf = np.resize(w_buf, cap)
                rv = r_buf; uv = u_buf; wv = w_buf
            rv[count] = r; uv[count] = u; wv[count] = w
            count += 1
            if last:
                status = 0
                break
            if errnorm == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * pow(errnorm, -0.2)
                if fac > 5.0:
                    fac = 5.0
                elif fac < 0.2:
                    fac = 0.2
            dt *= fac
        else:
            # fractional powers turn negative stage values into NaNs, so a
            # predicted crossing of u = 0 counts as a domain rejection
            if positive_domain and u + dt * k1u <= 0.0:
                domain_reject = True
            if errnorm == INFINITY:
                dt *= 0.2
            else:
                fac = 0.9 * pow(errnorm, -0.2)
                if fac < 0.2:
                    fac = 0.2
                dt *= fac

    return r_buf[:count].copy(), u_buf[:count].copy(), w_buf[:count].copy(), status


def pencil_inertia_batch(double[:] a_diag, double[:] a_off,
                         double[:] b_diag, double[:] b_off, shifts):
    """See kernels_py.pencil_inertia_batch."""
    shifts_arr = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    cdef double[:] mus = shifts_arr
    cdef Py_ssize_t nmu = mus.shape[0]
    cdef Py_ssize_t m = a_diag.shape[0]
    counts_arr = np.zeros(nmu, dtype=np.int64)
    cdef long[:] counts = counts_arr
    cdef Py_ssize_t j, i
    cdef double mu, d, e
    cdef long c
    for j in range(nmu):
        mu = mus[j]
        d = a_diag[0] - mu * b_diag[0]
        if d == 0.0:
            d = 1e-280
        c = 1 if d < 0.0 else 0
        for i in range(1, m):
            e = a_off[i - 1] - mu * b_off[i - 1]
            d = (a_diag[i] - mu * b_diag[i]) - e * e / d
            if d == 0.0:
                d = 1e-280
            if d < 0.0:
                c += 1
        counts[j] = c
    return counts_arr
