"""Dense univariate polynomials with integer coefficients."""
import re
from math import gcd

__all__ = [
    "NotDivisibleError",
    "PolyZx",
    "ONE",
    "X",
    "ZERO",
    "alpha_factors",
    "alpha_k",
    "divides",
    "gcd_zx",
    "kronecker_bits",
    "l1",
    "pack",
    "unpack",
]


class NotDivisibleError(ArithmeticError):
    pass


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class PolyZx:
    """Element of Z[x]; ``coeffs[i]`` is the coefficient of x**i.

    Instances are immutable and canonical (no trailing zeros), so equality
    and hashing are structural.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        object.__setattr__(self, "coeffs", _trim(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("PolyZx is immutable")

    def __reduce__(self):
        return (PolyZx, (self.coeffs,))

    @classmethod
    def _raw(cls, coeffs):
        # coeffs must already be a trimmed tuple of ints
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    @classmethod
    def coerce(cls, value):
        return value if isinstance(value, PolyZx) else cls(value)

    @property
    def degree(self):
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PolyZx(other)
        if not isinstance(other, PolyZx):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("PolyZx", self.coeffs))

    def __repr__(self):
        return f"PolyZx({list(self.coeffs)})"

    def __add__(self, other):
        other = PolyZx.coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyZx._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return PolyZx._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-PolyZx.coerce(other))

    def __rsub__(self, other):
        return PolyZx.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return PolyZx._raw(tuple(c * other for c in self.coeffs))
        other = PolyZx.coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(b) == 1:
            return self * b[0]
        if len(a) == 1:
            return other * a[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return PolyZx._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, c):
        return self.eval_at(c)

    def eval_at(self, c):
        acc = 0
        for coef in reversed(self.coeffs):
            acc = acc * c + coef
        return acc

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self):
        """Primitive part, with positive leading coefficient."""
        if not self.coeffs:
            return ZERO
        g = self.content()
        if self.lc < 0:
            g = -g
        return PolyZx._raw(tuple(c // g for c in self.coeffs))

    def normalized(self):
        """Associate with positive leading coefficient (units are +-1)."""
        return -self if self.lc < 0 else self

    def divmod_exact(self, d):
        """Quotient and remainder over Z; raises if a quotient step is not integral."""
        d = PolyZx.coerce(d)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dc = d.coeffs
        ld = len(dc)
        lead = dc[-1]
        if len(rem) < ld:
            return ZERO, self
        quot = [0] * (len(rem) - ld + 1)
        for shift in range(len(rem) - ld, -1, -1):
            top = rem[shift + ld - 1]
            if top == 0:
                continue
            q, r = divmod(top, lead)
            if r:
                raise NotDivisibleError("quotient is not integral")
            quot[shift] = q
            for i, c in enumerate(dc):
                rem[shift + i] -= q * c
        return PolyZx._raw(_trim(quot)), PolyZx._raw(_trim(rem))

    def exact_div(self, d):
        """The q in Z[x] with self == d*q, or NotDivisibleError."""
        q, r = self.divmod_exact(d)
        if r:
            raise NotDivisibleError("nonzero remainder")
        return q

    def __floordiv__(self, d):
        return self.exact_div(d)

    def divisible_by(self, d):
        d = PolyZx.coerce(d)
        if not self.coeffs:
            return True
        if not d:
            return False
        try:
            self.exact_div(d)
        except NotDivisibleError:
            return False
        return True

    def to_json(self):
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data):
        return cls(data)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append((c < 0, body))
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += ("-" if neg else "+") + body
        return out

    def latex(self):
        return re.sub(r"x\^(\d+)", r"x^{\1}", str(self))


ZERO = PolyZx._raw(())
ONE = PolyZx._raw((1,))
X = PolyZx._raw((0, 1))


def divides(d, p):
    return PolyZx.coerce(p).divisible_by(d)


def _prem(a, b):
    # pseudo-remainder of a by b
    a, b = list(a.coeffs), b.coeffs
    lb = b[-1]
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        top = a[-1]
        shift = len(a) - 1 - db
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[shift + i] -= top * c
        a = list(_trim(a))
    return PolyZx._raw(tuple(a))


def gcd_zx(p, q):
    """gcd in Z[x] with positive leading coefficient.

    Content gcd times the gcd of primitive parts, the latter via a
    primitive pseudo-remainder sequence.
    """
    p, q = PolyZx.coerce(p), PolyZx.coerce(q)
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    if not p:
        return q.normalized()
    if not q:
        return p.normalized()
    c = gcd(p.content(), q.content())
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b and b.degree > 0:
        r = _prem(a, b)
        a, b = b, (r.primitive() if r else ZERO)
    g = a if not b else ONE
    return g.primitive() * c


def alpha_factors(n, k):
    """Linear factors a_1(x), ..., a_k(x) with a_i = i + x, except a_n = n + 1 + x."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    return tuple(PolyZx((i + 1 if i == n else i, 1)) for i in range(1, k + 1))


def alpha_k(n, k):
    out = ONE
    for f in alpha_factors(n, k):
        out = out * f
    return out


# Kronecker substitution: a polynomial with |coefficients| < 2**(bits-1) is
# packed into the single integer p(2**bits) and recovered uniquely.

def kronecker_bits(bound):
    """Bit width that holds coefficients of absolute value <= bound."""
    return max(int(bound).bit_length() + 2, 8)


def pack(p, bits):
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc << bits) + c
    return acc


def unpack(value, bits):
    if value == 0:
        return ZERO
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    while value:
        r = value & mask
        if r >= half:
            r -= 1 << bits
        out.append(r)
        value = (value - r) >> bits
    return PolyZx._raw(tuple(out))


def l1(p):
    return sum(abs(c) for c in p.coeffs)
