"""Generates tests/oracle_values.hpp from numpy / scipy / jax.

These are independent implementations of the quantities the C++ library
computes; the tests compare against the frozen numbers.

    python3 tests/oracles/gen_oracles.py > tests/oracle_values.hpp
"""
import numpy as np
import scipy.fft
import scipy.linalg
import jax
import jax.numpy as jnp

jax.config.update("jax_enable_x64", True)


def arr(name, values):
    flat = np.asarray(values, dtype=np.float64).ravel(order="F")
    body = ", ".join(repr(float(v)) for v in flat)
    return f"inline constexpr double {name}[] = {{{body}}};"


out = []

# FFT of a fixed complex length-8 buffer.
re = np.arange(1.0, 9.0)
im = np.array([0.5, -1.0, 0.0, 2.0, 0.0, 0.0, 1.0, -0.5])
f = np.fft.fft(re + 1j * im)
out += [arr("kFftInRe", re), arr("kFftInIm", im), arr("kFftOutRe", f.real), arr("kFftOutIm", f.imag)]

# Polynomial product.
out += [arr("kPolyP", [1, 2, 3]), arr("kPolyQ", [4, 5, 6, 7]),
        arr("kPolyPQ", np.convolve([1, 2, 3], [4, 5, 6, 7]))]

# Singular values and condition number of a fixed 4x4.
m4 = np.array([[4, 1, 0, 2], [1, 3, 1, 0], [0, 1, 2, 1], [2, 0, 1, 5]], dtype=float)
s4 = np.linalg.svd(m4, compute_uv=False)
out += [arr("kSvdIn", m4), arr("kSvdOut", s4), f"inline constexpr double kSvdCond = {float(s4[0] / s4[-1])!r};"]

# Sylvester: A M - M B = R  <=>  A M + M (-B) = R.
sa = np.array([[1.0, 2.0, 0.0], [0.0, 3.0, 1.0], [0.5, 0.0, 4.0]])
sb = np.array([[-1.0, 0.0, 0.3], [1.0, -2.0, 0.0], [0.0, 0.7, -3.0]])
sr = np.array([[1.0, -2.0, 0.5], [0.0, 3.0, 1.0], [2.0, 1.0, -1.0]])
sm = scipy.linalg.solve_sylvester(sa, -sb, sr)
out += [arr("kSylA", sa), arr("kSylB", sb), arr("kSylR", sr), arr("kSylM", sm)]


# Fixed LDR-SD instance, n = 4, r = 2, b = 2.
def subdiag(sub, corner):
    n = len(sub) + 1
    a = np.zeros((n, n))
    for i, v in enumerate(sub):
        a[i + 1, i] = v
    a[0, n - 1] += corner
    return a


def krylov(a, v):
    cols = [v]
    for _ in range(len(v) - 1):
        cols.append(a @ cols[-1])
    return np.stack(cols, axis=1)


sub_a, sub_b = [0.5, -1.0, 2.0], [1.0, 0.3, -0.7]
G = np.array([[1.0, 0.0], [2.0, 1.0], [-1.0, 0.5], [0.3, -2.0]])
H = np.array([[0.5, 1.0], [-1.0, 0.2], [0.0, 1.5], [1.0, -0.4]])
X = np.array([[1.0, -1.0], [0.5, 2.0], [-2.0, 0.0], [1.5, 0.25]])
A0, B0 = subdiag(sub_a, 0.0), subdiag(sub_b, 0.0)
M = sum(krylov(A0, G[:, i]) @ krylov(B0, H[:, i]).T for i in range(2))
out += [arr("kSdSubA", sub_a), arr("kSdSubB", sub_b), arr("kSdG", G), arr("kSdH", H), arr("kSdX", X),
        arr("kSdM", M), arr("kSdY", M @ X)]
# Coefficient tensor (i, j, k) = (K(B, h_i)^T x_j)[k], stored with k fastest, then j, then i.
coef = np.zeros((2, 2, 4))
for i in range(2):
    for j in range(2):
        coef[i, j] = krylov(B0, H[:, i]).T @ X[:, j]
out.append("inline constexpr double kSdCoeffs[] = {" + ", ".join(repr(float(v)) for v in coef.ravel(order="C")) + "};")


# Gradients of L = 0.5 ||M X - T||^2 with respect to every tensor, via jax.
T = np.array([[0.1, 0.2], [-0.3, 0.4], [0.5, -0.6], [0.7, 0.8]])


def jsub(p):
    n = p.shape[0]
    a = jnp.zeros((n, n))
    a = a.at[jnp.arange(1, n), jnp.arange(0, n - 1)].set(p[:-1])
    return a.at[0, n - 1].add(p[-1])


def jtri(p):
    n = (p.shape[0]) // 3
    sub, diag, sup = p[: n - 1], p[n - 1: 2 * n - 1], p[2 * n - 1: 3 * n - 2]
    a = jnp.diag(diag) + jnp.diag(sup, 1) + jnp.diag(sub, -1)
    a = a.at[0, n - 1].add(p[3 * n - 2])
    return a.at[n - 1, 0].add(p[3 * n - 1])


def jkrylov(a, v):
    cols = [v]
    for _ in range(v.shape[0] - 1):
        cols.append(a @ cols[-1])
    return jnp.stack(cols, axis=1)


def loss(pa, pb, g, h, x, build):
    a, b = build(pa), build(pb)
    m = sum(jkrylov(a, g[:, i]) @ jkrylov(b, h[:, i]).T for i in range(g.shape[1]))
    return 0.5 * jnp.sum((m @ x - T) ** 2)


pa = np.array(sub_a + [0.7])
pb = np.array(sub_b + [-1.0])
grads = jax.grad(loss, argnums=(0, 1, 2, 3, 4))(pa, pb, G, H, X, jsub)
out += [arr("kGradSdPa", pa), arr("kGradSdPb", pb), arr("kGradT", T),
        f"inline constexpr double kGradSdLoss = {float(loss(pa, pb, G, H, X, jsub))!r};",
        arr("kGradSdDa", grads[0]), arr("kGradSdDb", grads[1]), arr("kGradSdDG", grads[2]),
        arr("kGradSdDH", grads[3]), arr("kGradSdDX", grads[4])]

rng = np.random.default_rng(7)
ta = np.round(rng.normal(size=12) * 0.5, 3)
tb = np.round(rng.normal(size=12) * 0.5, 3)
tgrads = jax.grad(loss, argnums=(0, 1, 2, 3, 4))(ta, tb, G, H, X, jtri)
out += [arr("kGradTdPa", ta), arr("kGradTdPb", tb),
        arr("kGradTdDa", tgrads[0]), arr("kGradTdDb", tgrads[1]), arr("kGradTdDG", tgrads[2]),
        arr("kGradTdDH", tgrads[3]), arr("kGradTdDX", tgrads[4])]

# DCT-II: C(i, j) = cos(pi i (j + 1/2) / N) is half of scipy's unnormalized type-2 DCT.
xd = np.array([1.0, -2.0, 0.5, 3.0, 0.0, 1.0, -1.0, 2.0])
out += [arr("kDctIn", xd), arr("kDctOut", scipy.fft.dct(xd, type=2) / 2.0)]

# Chebyshev T_0..T_8 at fixed points.
pts = np.array([-0.9, -0.3, 0.2, 0.75])
cheb = np.stack([np.polynomial.chebyshev.chebval(pts, np.eye(9)[k]) for k in range(9)])
out += [arr("kChebNodes", pts), arr("kChebValues", cheb)]

# Low-rank floor of a fixed 8x8 Toeplitz matrix.
col = np.array([1.0, 0.5, -0.3, 0.2, 0.8, -0.1, 0.4, 0.05])
row = np.array([1.0, -0.7, 0.6, 0.1, -0.2, 0.9, 0.3, -0.4])
tt = scipy.linalg.toeplitz(col, row)
sv = np.linalg.svd(tt, compute_uv=False)
out += [arr("kFloorCol", col), arr("kFloorRow", row),
        f"inline constexpr double kFloorRank2 = {float(np.sqrt((sv[2:] ** 2).sum() / (sv ** 2).sum()))!r};"]

# Circulant (f = 1) and skew-circulant (f = -1) products.
cv = np.array([1.0, 2.0, -1.0, 0.5, 0.0, 3.0, -2.0, 1.0])
cx = np.array([0.5, -1.0, 2.0, 0.0, 1.0, 1.5, -0.5, 2.0])
skew = np.array([[cv[(i - j) % 8] * (-1.0 if i < j else 1.0) for j in range(8)] for i in range(8)])
out += [arr("kCircV", cv), arr("kCircX", cx), arr("kCircY", scipy.linalg.circulant(cv) @ cx),
        arr("kSkewY", skew @ cx)]

# Single-hidden-layer forward pass and softmax cross-entropy gradient.
W1 = np.array([[0.5, -1.0, 0.2], [1.0, 0.3, -0.4], [-0.6, 0.8, 1.1]])
W2 = np.array([[1.0, -0.5, 0.25], [-0.3, 0.7, 0.9]])
b2 = np.array([0.1, -0.2])
XS = np.array([[1.0, -0.5], [0.2, 1.0], [-1.0, 0.3]])
labels = np.array([1, 0])
logits = W2 @ np.maximum(W1 @ XS, 0.0) + b2[:, None]


def ce(z):
    z = z - z.max(axis=0, keepdims=True)
    lse = jnp.log(jnp.exp(z).sum(axis=0))
    return -jnp.mean(z[labels, jnp.arange(2)] - lse)


out += [arr("kShlW1", W1), arr("kShlW2", W2), arr("kShlB2", b2), arr("kShlX", XS), arr("kShlLogits", logits),
        f"inline constexpr double kShlLoss = {float(ce(jnp.asarray(logits)))!r};",
        arr("kShlDLogits", jax.grad(ce)(jnp.asarray(logits)))]

print("#pragma once\n")
print("// Frozen values from tests/oracles/gen_oracles.py (numpy, scipy, jax). Column-major.")
print("// Regenerate with: python3 tests/oracles/gen_oracles.py > tests/oracle_values.hpp\n")
print("namespace oracle {\n")
print("\n".join(out))
print("\n}  // namespace oracle")
