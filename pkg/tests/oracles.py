"""Slow reference implementations used only by the tests."""

import math

from newtonmzv.nested import Comparator


def kernel_value(kernel, x, z):
    """Straight from the factor definitions, independent of the engine."""
    v = 1.0 / x**kernel.x_power / (x + z) ** kernel.shift_power
    return v * (1.0 / x - 1.0 / (x + z)) ** kernel.tilde_power


def naive_chain(pattern, z, M):
    """Enumerate every admissible tuple x_1 ... x_w in [1, M]."""
    kernels, comps = pattern.kernels, pattern.comparators
    re_terms, im_terms = [], []

    def walk(j, upper, weight):
        if j == len(kernels):
            re_terms.append(weight.real)
            im_terms.append(weight.imag)
            return
        if j == 0:
            xs = range(1, M + 1)
        else:
            c = comps[j - 1]
            xs = {Comparator.STRICT: range(1, upper),
                  Comparator.WEAK: range(1, upper + 1),
                  Comparator.EQUAL: range(upper, upper + 1)}[c]
        for x in xs:
            walk(j + 1, x, weight * kernel_value(kernels[j], x, z))

    walk(0, M, complex(1.0))
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def enumeration_limit(depth):
    """Largest truncation that keeps naive enumeration quick at this depth."""
    return {1: 200, 2: 200, 3: 100}.get(depth, 40)
