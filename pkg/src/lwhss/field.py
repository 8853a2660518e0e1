"""Exact arithmetic in finite fields GF(p^e) of order up to 2**16.

Elements are encoded as integers: the polynomial-basis coefficient
vector (c_0, ..., c_{e-1}) with c_i in {0, ..., p-1} is read as the
base-p integer sum(c_i * p**i).  Encoding 0 is the zero element, and
enumerating encodings 0, 1, ..., p^e - 1 is the canonical element order.

A field is described by a FieldSpec: characteristic p, extension degree
e, and a monic irreducible modulus of degree e (coefficients stored
low-to-high).  When no modulus is given, the lexicographically smallest
monic irreducible is chosen, which yields for example:

    GF(4):  x^2 + x + 1
    GF(8):  x^3 + x + 1
    GF(9):  x^2 + 1

Irreducibility is verified by trial division at construction time.
Fields of order <= 512 get full add/mul lookup tables (shared with the
row-reduction kernels); larger fields fall back to polynomial
arithmetic on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._kernels import ArithTables
from .errors import DivisionByZero, FieldMismatch, FieldTooLarge

MAX_ORDER = 1 << 16
TABLE_LIMIT = 512


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_trim(poly):
    i = len(poly)
    while i and poly[i - 1] == 0:
        i -= 1
    return poly[:i]


def _poly_divmod(num, den, p):
    """Quotient and remainder of coefficient lists (low-to-high) mod p."""
    num = list(num)
    dlead = den[-1]
    dinv = pow(dlead, p - 2, p)
    deg_d = len(den) - 1
    quot = [0] * max(0, len(num) - deg_d)
    for shift in range(len(num) - deg_d - 1, -1, -1):
        factor = (num[shift + deg_d] * dinv) % p
        if factor:
            quot[shift] = factor
            for i, dc in enumerate(den):
                num[shift + i] = (num[shift + i] - factor * dc) % p
    return quot, _poly_trim(num)


def _monic_polys(p, degree):
    """All monic polynomials of the given degree over GF(p), lex order."""
    total = p**degree
    for low in range(total):
        coeffs = []
        v = low
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        yield coeffs + [1]


def _is_irreducible(poly, p) -> bool:
    degree = len(poly) - 1
    if degree <= 0:
        return False
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for div in _monic_polys(p, d):
            _, rem = _poly_divmod(poly, div, p)
            if not rem:
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over GF(p), coefficients low-to-high."""
    for poly in _monic_polys(p, e):
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q as p**a with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if p * p > q:
            break
        if q % p == 0:
            a = 0
            v = q
            while v % p == 0:
                v //= p
                a += 1
            if v != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, a
    return q, 1


class FieldSpec:
    """A finite field GF(p^e) with a fixed modulus polynomial.

    Two specs compare equal iff (p, e, modulus) coincide.  Instances are
    immutable in their defining data; arithmetic caches are built lazily.
    """

    __slots__ = ("p", "e", "modulus", "order", "_xpow", "_tables", "_subfields", "__weakref__")

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not _is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        order = p**e
        if order > MAX_ORDER:
            raise FieldTooLarge(f"field order {order} exceeds {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, e) if e > 1 else (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {e}, got {modulus}")
        if e > 1 and not _is_irreducible(list(modulus), p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.e = e
        self.modulus = modulus
        self.order = order
        # reductions of x^k for k in [e, 2e-2], used by polynomial multiply
        reds = {}
        if e > 1:
            base = [(-c) % p for c in modulus[:-1]]  # x^e = base (mod modulus)
            cur = list(base)
            reds[e] = tuple(cur)
            for k in range(e + 1, 2 * e - 1):
                nxt = [0] + cur[:-1]
                carry = cur[-1]
                if carry:
                    for i in range(e):
                        nxt[i] = (nxt[i] + carry * base[i]) % p
                cur = nxt
                reds[k] = tuple(cur)
        self._xpow = reds
        self._tables = None
        self._subfields = {}

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.order})" if self.e == 1 else f"GF({self.p}^{self.e})"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    # -- encoding ---------------------------------------------------------

    def decode(self, value: int) -> tuple[int, ...]:
        """Coefficient vector (length e) of an element encoding."""
        coeffs = []
        v = value
        for _ in range(self.e):
            coeffs.append(v % self.p)
            v //= self.p
        return tuple(coeffs)

    def encode(self, coeffs) -> int:
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + (c % self.p)
        return value

    def _check(self, value: int) -> int:
        if not isinstance(value, int) or not 0 <= value < self.order:
            raise ValueError(f"{value!r} is not an element encoding of {self!r}")
        return value

    # -- scalar arithmetic on encodings ------------------------------------

    def add_int(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_int(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub_int(self, a: int, b: int) -> int:
        return self.add_int(a, self.neg_int(b))

    def _mul_poly(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return (a * b) % p
        ca = self.decode(a)
        cb = self.decode(b)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(ca):
            if ai:
                for j, bj in enumerate(cb):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        res = list(prod[:e])
        for k in range(e, 2 * e - 1):
            carry = prod[k]
            if carry:
                red = self._xpow[k]
                for i in range(e):
                    res[i] = (res[i] + carry * red[i]) % p
        return self.encode(res)

    def mul_int(self, a: int, b: int) -> int:
        t = self.tables()
        if t is not None:
            return t.mul[a * self.order + b]
        return self._mul_poly(a, b)

    def pow_int(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow_int(self.inv_int(a), -k)
        result = 1
        base = a
        while k:
            if k & 1:
                result = self.mul_int(result, base)
            base = self.mul_int(base, base)
            k >>= 1
        return result

    def inv_int(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"cannot invert zero in {self!r}")
        t = self.tables()
        if t is not None:
            return t.inv[a]
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        # Fermat: a^(q-2) is the inverse in GF(q)
        result = 1
        base = a
        k = self.order - 2
        while k:
            if k & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            k >>= 1
        return result

    def div_int(self, a: int, b: int) -> int:
        return self.mul_int(a, self.inv_int(b))

    # -- lookup tables ------------------------------------------------------

    def _exp_log(self) -> tuple[list[int], list[int]]:
        """Power/discrete-log tables over the smallest primitive element."""
        q = self.order
        if q == 2:
            return [1], [0, 0]
        for g in range(2, q):
            exp = [1]
            v = 1
            for _ in range(q - 2):
                v = self._mul_poly(v, g)
                if v == 1:
                    break
                exp.append(v)
            if len(exp) == q - 1 and self._mul_poly(v, g) == 1:
                log = [0] * q
                for i, w in enumerate(exp):
                    log[w] = i
                return exp, log
        raise AssertionError(f"no primitive element found in {self!r}")

    def tables(self) -> ArithTables | None:
        """Full arithmetic tables, or None for fields larger than 512."""
        if self.order > TABLE_LIMIT:
            return None
        if self._tables is None:
            q = self.order
            if self.p == 2:
                add = [a ^ b for a in range(q) for b in range(q)]
            else:
                sums = [[self.add_int(a, b) for b in range(q)] for a in range(q)]
                add = [sums[a][b] for a in range(q) for b in range(q)]
            exp, log = self._exp_log()
            mul = [0] * (q * q)
            for a in range(1, q):
                arow = a * q
                la = log[a]
                for b in range(1, q):
                    mul[arow + b] = exp[(la + log[b]) % (q - 1)]
            neg = [self.neg_int(a) for a in range(q)]
            inv = [0] * q
            for a in range(1, q):
                inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
            self._tables = ArithTables(q, add, mul, inv, neg)
        return self._tables

    # -- elements -----------------------------------------------------------

    def element(self, value: int) -> FieldElem:
        return FieldElem(self, self._check(value))

    def from_coeffs(self, coeffs) -> FieldElem:
        return FieldElem(self, self.encode(coeffs))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    @property
    def generator(self) -> FieldElem:
        """The class of x in GF(p)[x]/(modulus); only meaningful for e > 1."""
        return FieldElem(self, self.p if self.e > 1 else 1)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return cls(int(obj["p"]), int(obj["e"]), tuple(obj["modulus"]))


@lru_cache(maxsize=None)
def _cached_spec(p: int, e: int) -> FieldSpec:
    return FieldSpec(p, e)


def GF(q: int, modulus=None) -> FieldSpec:
    """FieldSpec for the field of order q (q any prime power <= 2**16)."""
    p, e = factor_prime_power(q)
    if modulus is None:
        return _cached_spec(p, e)
    return FieldSpec(p, e, modulus)


@dataclass(frozen=True)
class FieldElem:
    """An immutable field element: a FieldSpec plus an integer encoding."""

    spec: FieldSpec
    value: int

    def _same(self, other) -> FieldElem:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch(f"operands from {self.spec!r} and {other.spec!r}")
        return other

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.decode(self.value)

    def __add__(self, other):
        other = self._same(other)
        return FieldElem(self.spec, self.spec.add_int(self.value, other.value))

    def __sub__(self, other):
        other = self._same(other)
        return FieldElem(self.spec, self.spec.sub_int(self.value, other.value))

    def __neg__(self):
        return FieldElem(self.spec, self.spec.neg_int(self.value))

    def __mul__(self, other):
        other = self._same(other)
        return FieldElem(self.spec, self.spec.mul_int(self.value, other.value))

    def __truediv__(self, other):
        other = self._same(other)
        return FieldElem(self.spec, self.spec.div_int(self.value, other.value))

    def __pow__(self, k: int):
        return FieldElem(self.spec, self.spec.pow_int(self.value, k))

    def inverse(self) -> FieldElem:
        return FieldElem(self.spec, self.spec.inv_int(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.spec!r}[{self.value}]"


def arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Dispatch one of {add, sub, mul, div} on two elements."""
    try:
        fn = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}; expected add|sub|mul|div") from None
    return fn(b)


def enumerate_field(spec: FieldSpec) -> list[FieldElem]:
    """All elements in canonical order (encodings ascending, zero first)."""
    if spec.order > MAX_ORDER:  # unreachable through the constructor; kept as the contract
        raise FieldTooLarge(f"enumeration of order {spec.order} not supported")
    return [FieldElem(spec, v) for v in range(spec.order)]


# ---------------------------------------------------------------------------
# Subfield identification and matrix embeddings
# ---------------------------------------------------------------------------


class _SubfieldView:
    """The copy of a base field sitting inside an extension field.

    `lift` maps base-field encodings onto extension encodings (the image
    is exactly the set of elements fixed by x -> x^q).  `coords` writes
    an extension element in the basis {1, alpha, ..., alpha^(deg-1)} over
    the base field, alpha being the class of x in the extension.
    """

    def __init__(self, ext: FieldSpec, base: FieldSpec):
        if ext.p != base.p:
            raise FieldMismatch(f"{base!r} is not a subfield of {ext!r} (different characteristic)")
        if ext.e % base.e:
            raise FieldMismatch(f"{base!r} is not a subfield of {ext!r} (degree {base.e} does not divide {ext.e})")
        self.ext = ext
        self.base = base
        self.degree = ext.e // base.e
        p = ext.p

        if base.e == 1:
            beta = 1
        else:
            beta = next(
                v
                for v in range(ext.order)
                if self._eval_poly(base.modulus, v) == 0
            )
        self.beta = beta

        beta_pows = [1]
        for _ in range(1, base.e):
            beta_pows.append(ext.mul_int(beta_pows[-1], beta))
        self._beta_pows = beta_pows

        alpha = ext.p if ext.e > 1 else 1
        alpha_pows = [1]
        for _ in range(1, self.degree):
            alpha_pows.append(ext.mul_int(alpha_pows[-1], alpha))
        self._alpha_pows = alpha_pows

        # change of basis: columns are beta^i * alpha^k written in the
        # p-digit basis of the extension; invert once and cache.
        dim = ext.e
        cols = []
        for k in range(self.degree):
            for i in range(base.e):
                cols.append(ext.decode(ext.mul_int(beta_pows[i], alpha_pows[k])))
        inv = _invert_mod_p([[cols[c][r] for c in range(dim)] for r in range(dim)], p)
        self._basis_inv = inv

    def _eval_poly(self, poly, x_enc) -> int:
        ext = self.ext
        acc = 0
        for c in reversed(poly):
            acc = ext.add_int(ext.mul_int(acc, x_enc), c % ext.p)
        return acc

    def lift(self, base_value: int) -> int:
        digits = self.base.decode(base_value)
        ext = self.ext
        acc = 0
        for digit, bpow in zip(digits, self._beta_pows):
            if digit:
                # a prime-field digit c encodes the constant element c
                acc = ext.add_int(acc, ext.mul_int(digit, bpow))
        return acc

    def coords(self, ext_value: int) -> tuple[int, ...]:
        p = self.ext.p
        digits = self.ext.decode(ext_value)
        sol = [sum(row[i] * digits[i] for i in range(len(digits))) % p for row in self._basis_inv]
        out = []
        for k in range(self.degree):
            chunk = sol[k * self.base.e : (k + 1) * self.base.e]
            out.append(self.base.encode(chunk))
        return tuple(out)


def _invert_mod_p(rows, p):
    """Inverse of a square 0..p-1 integer matrix mod p (Gauss-Jordan)."""
    n = len(rows)
    aug = [list(rows[r]) + [1 if c == r else 0 for c in range(n)] for r in range(n)]
    for col in range(n):
        sel = next((r for r in range(col, n) if aug[r][col] % p), None)
        if sel is None:
            raise ArithmeticError("matrix not invertible mod p")
        aug[col], aug[sel] = aug[sel], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] % p:
                f = aug[r][col] % p
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def subfield_view(ext: FieldSpec, base: FieldSpec) -> _SubfieldView:
    """Cached identification of `base` inside `ext`."""
    key = (base.p, base.e, base.modulus)
    view = ext._subfields.get(key)
    if view is None:
        view = _SubfieldView(ext, base)
        ext._subfields[key] = view
    return view


def embed_matrix(a: FieldElem, base: FieldSpec | None = None):
    """Matrix of multiplication by `a` over a declared base subfield.

    For a in GF(q^d) and base GF(q), returns the d x d matrix M_a over
    GF(q) whose k-th column holds the base-field coordinates of
    a * alpha^k.  The map a -> M_a is an additive and multiplicative
    embedding: M_{a+b} = M_a + M_b and M_{ab} = M_a M_b, and M_a is
    invertible exactly when a is nonzero.
    """
    from .linalg import Matrix

    spec = a.spec
    if base is None:
        base = GF(spec.p)
    view = subfield_view(spec, base)
    deg = view.degree
    cols = [view.coords(spec.mul_int(a.value, apow)) for apow in view._alpha_pows]
    data = [cols[c][r] for r in range(deg) for c in range(deg)]
    return Matrix(base, deg, deg, data)
