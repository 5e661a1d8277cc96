"""High-precision reference values for the distributional operator tests.

Evaluates the law of psi(Z) and the conflict functional by brute-force
summation over the Poisson counts (gamma_plus, gamma_minus) and the
multinomial split of the {-1,0,+1} marks, in 60-digit arithmetic. It never
uses the Poisson-thinning shortcut, so it is independent of the C++ route.

Usage: python3 skellam_reference.py
"""
from mpmath import mp, mpf, exp, factorial, binomial

mp.dps = 60


def po(mu, k):
    if mu == 0:
        return mpf(1) if k == 0 else mpf(0)
    return exp(-mu) * mpf(mu) ** k / factorial(k)


def mark_sum_law(p, n):
    """Law of the sum of n iid marks with law p=(p(-1),p(0),p(1))."""
    law = {0: mpf(1)}
    for _ in range(n):
        nxt = {}
        for s, w in law.items():
            for a, pa in ((-1, p[0]), (0, p[1]), (1, p[2])):
                if pa:
                    nxt[s + a] = nxt.get(s + a, mpf(0)) + w * pa
        law = nxt
    return law


def z_law(p, dp, dm, kp, km):
    plus = {}
    for a in range(kp):
        w = po(dp, a)
        for s, v in mark_sum_law(p, a).items():
            plus[s] = plus.get(s, mpf(0)) + w * v
    minus = {}
    for b in range(km):
        w = po(dm, b)
        for s, v in mark_sum_law(p, b).items():
            minus[s] = minus.get(s, mpf(0)) + w * v
    z = {}
    for s1, v1 in plus.items():
        for s2, v2 in minus.items():
            z[s1 - s2] = z.get(s1 - s2, mpf(0)) + v1 * v2
    return z


def apply_t(p, dp, dm, kp, km):
    z = z_law(p, dp, dm, kp, km)
    neg = sum(v for s, v in z.items() if s <= -1)
    zero = z.get(0, mpf(0))
    pos = sum(v for s, v in z.items() if s >= 1)
    return neg, zero, pos


def phi(p, dp, dm, kp, km):
    # size-biased form: one extra mark of each group added to an independent Z
    z = z_law(p, dp, dm, kp, km)
    le_m2 = sum(v for s, v in z.items() if s <= -2)
    ge_1 = sum(v for s, v in z.items() if s >= 1)
    return (dp * (p[2] * le_m2 + p[0] * ge_1) + dm * (p[2] * ge_1 + p[0] * le_m2)) / 2


def skellam_parts(p, dp, dm, K=700):
    pm, p0, pp = p
    mup = dp * pp + dm * pm
    mum = dp * pm + dm * pp
    A = [po(mup, k) for k in range(K)]
    B = [po(mum, k) for k in range(K)]
    cum = [mpf(0)] * (K + 1)
    for k in range(K):
        cum[k + 1] = cum[k] + A[k]
    neg = sum(B[j] * cum[j] for j in range(K))           # P(Z <= -1)
    zero = sum(B[j] * A[j] for j in range(K))            # P(Z = 0)
    le_m2 = sum(B[j] * cum[j - 1] for j in range(1, K))  # P(Z <= -2)
    ge_1 = 1 - neg - zero
    return neg, zero, le_m2, ge_1


if __name__ == "__main__":
    d1 = (mpf(0), mpf(0), mpf(1))
    print("T(delta+, 1, 0)", [mp.nstr(x, 20) for x in apply_t(d1, 1, 0, 60, 1)])
    g = (mpf("0.2"), mpf("0.3"), mpf("0.5"))
    print("T((.2,.3,.5), 3, 1.5)", [mp.nstr(x, 20) for x in apply_t(g, 3, mpf("1.5"), 45, 35)])
    print("phi((.2,.3,.5), 3, 1.5)", mp.nstr(phi(g, 3, mpf("1.5"), 45, 35), 20))
    # Desk fixed points. Iterating the brute-force multinomial form at
    # d+ = 200 is too slow, so these lines use the two-Poisson-count form
    # (mu+ = d+ p(1) + d- p(-1), mu- = d+ p(-1) + d- p(1)). They check the
    # floating-point evaluation in C++, not the thinning derivation; the
    # first iterate from delta+ needs no thinning at all.
    for dp in (50, 200):
        p = d1
        for it in range(2):
            neg, zero, le_m2, ge_1 = skellam_parts(p, dp, 1)
            p = (neg, zero, 1 - neg - zero)
        neg, zero, le_m2, ge_1 = skellam_parts(p, dp, 1)
        ph = (dp * (p[2] * le_m2 + p[0] * ge_1) + (p[2] * ge_1 + p[0] * le_m2)) / 2
        print("p* d+=%d" % dp, mp.nstr(p[0], 20), mp.nstr(p[1], 20),
              "phi*", mp.nstr(ph, 25), "half-minus-phi", mp.nstr(mpf(1) / 2 - ph, 10))
