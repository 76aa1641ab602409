"""Continuum products of Gaussian symbols, evaluated by exact Gaussian integration.

(f # g)(X) = pi^{-2n} int int exp(-2i sigma(X - Y, X - Z)) exp(-i flux) f(Y) g(Z) dY dZ
with flux = B * (signed area of <x - y + z, y - z + x, z - x + y>) for a constant field
B = B_12 (n = 2). The integrand is a complex Gaussian, integrated one variable at a time.
Prints values to be frozen into the C++ tests.
"""

import numpy as np
import sympy as sp


def sigma(X, Y, n):
    return sum(Y[j] * X[n + j] - X[j] * Y[n + j] for j in range(n))


def gaussian(V, centre, width, coeff):
    return sp.log(coeff) - sum((v - c) ** 2 for v, c in zip(V, centre)) / (2 * width**2)


def product(n, X, f, g, b12=0.0):
    Y = sp.symbols(f"y0:{2 * n}")
    Z = sp.symbols(f"z0:{2 * n}")
    Xs = [sp.nsimplify(x) for x in X]
    XmY = [a - b for a, b in zip(Xs, Y)]
    XmZ = [a - b for a, b in zip(Xs, Z)]
    expo = -2 * sp.I * sigma(XmY, XmZ, n) + gaussian(Y, *f) + gaussian(Z, *g)
    if b12:
        x, y, z = Xs[:n], Y[:n], Z[:n]
        a = [x[j] - y[j] + z[j] for j in range(n)]
        b = [y[j] - z[j] + x[j] for j in range(n)]
        c = [z[j] - x[j] + y[j] for j in range(n)]
        e1 = [b[j] - a[j] for j in range(n)]
        e2 = [c[j] - a[j] for j in range(n)]
        expo += -sp.I * sp.nsimplify(b12) * (e1[0] * e2[1] - e1[1] * e2[0]) / 2
    v = list(Y) + list(Z)
    d = len(v)
    poly = sp.Poly(sp.expand(expo), *v)
    A = np.zeros((d, d), complex)
    bvec = np.zeros(d, complex)
    c0 = complex(poly.coeff_monomial(1))
    for i in range(d):
        mono = [0] * d
        mono[i] = 1
        bvec[i] = complex(poly.coeff_monomial(tuple(mono)))
        for j in range(d):
            mono = [0] * d
            mono[i] += 1
            mono[j] += 1
            coeff = complex(poly.coeff_monomial(tuple(mono)))
            A[i, j] = -coeff * (2 if i == j else 1)
    log_val = c0
    for k in range(d):
        a = A[k, k]
        log_val += 0.5 * np.log(2 * np.pi / a) + bvec[k] ** 2 / (2 * a)
        col = A[k, :].copy()
        A = A - np.outer(col, col) / a
        bvec = bvec - col * bvec[k] / a
        A[k, :] = 0
        A[:, k] = 0
        A[k, k] = 1
        bvec[k] = 0
    return np.exp(log_val) / np.pi ** (2 * n)


def grid_point(N, idx):
    delta = np.sqrt(2 * np.pi / N)
    return [(j - N // 2) * delta for j in idx]


if __name__ == "__main__":
    f1 = ((0.4, -0.3), 1.0, 1.0)
    g1 = ((-0.5, 0.2), 0.8, 0.6 + 0.8j)
    print("n=1, N=32")
    for idx in [(16, 16), (18, 13), (20, 17), (11, 21)]:
        v = product(1, grid_point(32, idx), f1, g1)
        print(f"  {idx}: {v.real:.15e} {v.imag:+.15e}")

    f2 = ((0.3, -0.2, 0.1, 0.4), 1.0, 1.0)
    g2 = ((-0.2, 0.3, -0.4, 0.0), 1.0, 1.0)
    for b in (0.0, 1.0):
        print(f"n=2, N=16, B12={b}")
        for idx in [(8, 8, 8, 8), (9, 7, 8, 9), (7, 8, 10, 7)]:
            v = product(2, grid_point(16, idx), f2, g2, b)
            print(f"  {idx}: {v.real:.15e} {v.imag:+.15e}")
