"""Scalar fields: exact rationals, prime fields F_p and F_4."""

from fractions import Fraction


class Field:
    name = "?"
    characteristic = 0
    order = None  # None for infinite fields

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def is_finite(self):
        return self.order is not None

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __reduce__(self):
        return (get_field, (self.name,))


class Rationals(Field):
    name = "Q"

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def format(self, a):
        return str(a)


class PrimeField(Field):
    def __init__(self, p):
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p
        self.order = p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def elements(self):
        return list(range(self.p))

    def format(self, a):
        return str(a)


class F4(Field):
    """GF(4) = F2[w]/(w^2 + w + 1); element c0 + c1*w stored as the int c0 | c1 << 1."""

    name = "F4"
    characteristic = 2
    order = 4

    def __init__(self):
        self._mul = [[self._slow_mul(a, b) for b in range(4)] for a in range(4)]
        self._inv = [None] + [next(b for b in range(1, 4) if self._mul[a][b] == 1) for a in range(1, 4)]

    @staticmethod
    def _slow_mul(a, b):
        # carry-less product, then reduce w^2 -> w + 1
        prod = 0
        for i in range(2):
            if b >> i & 1:
                prod ^= a << i
        if prod & 4:
            prod ^= 0b111
        return prod

    def from_int(self, n):
        return n & 1

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def elements(self):
        return [0, 1, 2, 3]

    def format(self, a):
        return ["0", "1", "w", "w+1"][a]


FIELD_NAMES = ("Q", "F2", "F3", "F4", "F5", "F7")
_cache = {}


def get_field(name):
    if name not in FIELD_NAMES:
        raise ValueError(f"unsupported field {name!r}; choose from {', '.join(FIELD_NAMES)}")
    if name not in _cache:
        if name == "Q":
            _cache[name] = Rationals()
        elif name == "F4":
            _cache[name] = F4()
        else:
            _cache[name] = PrimeField(int(name[1:]))
    return _cache[name]
