"""Exact ground fields: the rationals and prime fields of odd characteristic.

Field elements are plain Python numbers.  Over the rationals an element is an
``int`` when integral and a :class:`fractions.Fraction` otherwise (always in
lowest terms with positive denominator).  Over ``GF(p)`` an element is an
``int`` in ``range(p)``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

DEFAULT_PRIME = 2305843009213693951  # 2**61 - 1


class RationalField:
    name = "rational"
    characteristic = 0

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    @staticmethod
    def reduce(x):
        if type(x) is int:
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return RationalField.reduce(Fraction(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(Fraction(1) / x)

    def div(self, x, y):
        return self.reduce(Fraction(x) / y)

    def neg(self, x):
        return -x

    def random_element(self, rng: random.Random, bound: int = 2**20):
        return rng.randint(-bound, bound)

    def format(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text: str):
        return self.reduce(Fraction(text.strip()))

    def to_json(self):
        return {"field": self.name}


class PrimeField:
    """GF(p) for an odd prime p."""

    def __init__(self, p: int = DEFAULT_PRIME, check: bool = True):
        p = int(p)
        if check and not is_odd_prime(p):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p

    name = "prime"

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def reduce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def div(self, x, y):
        return x * self.inv(y) % self.p

    def neg(self, x):
        return -x % self.p

    def random_element(self, rng: random.Random, bound=None):
        return rng.randrange(self.p)

    def format(self, x) -> str:
        return str(x % self.p)

    def parse(self, text: str):
        return self.reduce(Fraction(text.strip()))

    def to_json(self):
        return {"field": self.name, "prime": self.p}


RATIONAL = RationalField()


@lru_cache(maxsize=64)
def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    if n == DEFAULT_PRIME:
        return True
    from sympy import isprime

    return bool(isprime(n))


def make_field(name: str = "rational", prime: int = DEFAULT_PRIME):
    if name == "rational":
        return RATIONAL
    if name == "prime":
        return PrimeField(prime)
    raise ValueError(f"unknown field {name!r}")
