"""Reference values for crates/core/tests/oracles.rs, computed with mpmath at 40 digits."""
from math import factorial
from mpmath import mp, mpf, mpc, sqrt, fabs, pi

mp.dps = 40


def rho(n, a, l):
    return sqrt((l + n) / abs(l - a))


def inv_ratio(n, a, l):
    # mu(L-1)/mu(L)
    return 1 / rho(n, a, l - 1)


def b(n, a, l):
    return l * (l + n - 2) * (inv_ratio(n, a, l) - 1) ** 2


def level0(n, a, kmax):
    return max(sqrt(l * (l + n - 1)) * fabs(inv_ratio(n, a, l) - 1) for l in range(1, kmax + 1))


def sphere(k):
    n = len(k)
    num = factorial(n - 1)
    for kj in k:
        num *= factorial(kj)
    return mpf(num) / factorial(sum(k) + n - 1)


def omega(n):
    return 2 * pi ** n / factorial(n - 1)


print("profile n=2 a=-1/2")
for l in [1, 2, 10, 100, 1000, 10000]:
    print(l, mp.nstr(b(2, mpf(-0.5), l), 20))
print("profile n=3 a=-1+i/2")
for l in [1, 7, 50]:
    print(l, mp.nstr(b(3, mpc(-1, 0.5), l), 20))
print("level0 n=2 a=-1/2", [mp.nstr(level0(2, mpf(-0.5), K), 20) for K in (50, 100, 200)])
print("sphere")
for k in [(3,), (1, 1), (2, 1), (1, 1, 1), (3, 0, 0), (2, 0, 1)]:
    print(k, mp.nstr(sphere(k), 20))
print("omega", [mp.nstr(omega(n), 20) for n in (1, 2, 3)])
print("deformed n=2 a=-1/2 k=(3,1): E0", mp.nstr(3 / rho(2, mpf(-0.5), 3), 20), "F0", mp.nstr((mpf(-0.5) - 4) * rho(2, mpf(-0.5), 4), 20))
a = mpc(1.7, 0)
print("deformed n=1 a=1.7 k=(2,): E0", mp.nstr(2 / rho(1, a, 1), 20), "F0", mp.nstr((a - 2) * rho(1, a, 2), 20))
