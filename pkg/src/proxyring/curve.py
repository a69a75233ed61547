"""Supersingular pairing curve arithmetic.

Everything here is plain number theory on one fixed parameter set:

    E : y^2 = x^3 + x  over F_p,   p = q * 2^386 - 1,   p = 3 (mod 4)
    q = 2^159 + 2^17 + 1  (prime, low Hamming weight)

E is supersingular with #E(F_p) = p + 1 = q * 2^386, so E(F_p) is cyclic and
has a unique subgroup of prime order q. The pairing is the reduced Tate
pairing with the distortion map phi(x, y) = (-x, i*y), i^2 = -1 in F_p2,
which makes it a symmetric map G x G -> mu_q, mu_q the order-q subgroup of
F_p2*. Verticals are elided from the Miller loop (denominator elimination:
x(phi(Q)) lies in F_p, so vertical line values are killed by the final
exponentiation).

Points are affine (x, y) int pairs, infinity is None. Elements of F_p2 are
(a, b) pairs meaning a + b*i. No constant-time effort is made.
"""

import hashlib

try:
    from gmpy2 import invert, is_prime, mpz, powmod
except ImportError:  # pragma: no cover - gmpy2 is a hard dep, this is a dev aid
    mpz = int
    powmod = pow

    def invert(a, m):
        return pow(a, -1, m)

    def is_prime(n):
        return n == 2 or (n > 2 and pow(2, n - 1, n) == 1)

Q_ORDER = mpz((1 << 159) + (1 << 17) + 1)
COFACTOR_LOG2 = 386
P_MOD = (Q_ORDER << COFACTOR_LOG2) - 1

FIELD_BYTES = 69   # ceil(546 / 8)
SCALAR_BYTES = 20  # ceil(160 / 8)

GT_ONE = (mpz(1), mpz(0))

_QBITS = [int(b) for b in bin(Q_ORDER)[2:]]


def fp_sqrt(a):
    """Square root mod p, or None if a is a non-residue. Uses p = 3 (mod 4)."""
    a = a % P_MOD
    r = powmod(a, (P_MOD + 1) >> 2, P_MOD)
    if r * r % P_MOD != a:
        return None
    return r


def on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    return (y * y - (x * x * x + x)) % P_MOD == 0


def ec_neg(pt):
    if pt is None:
        return None
    x, y = pt
    return (x, (P_MOD - y) % P_MOD)


def ec_add(pt1, pt2):
    if pt1 is None:
        return pt2
    if pt2 is None:
        return pt1
    p = P_MOD
    x1, y1 = pt1
    x2, y2 = pt2
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + 1) * invert(y1 << 1, p) % p
    else:
        lam = (y2 - y1) * invert(x2 - x1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def ec_double(pt):
    return ec_add(pt, pt)


# Jacobian helpers: (X, Y, Z) with x = X/Z^2, y = Y/Z^3; Z = 0 is infinity.
# Used on inversion-free hot paths (scalar mult, cofactor clearing,
# subgroup checks).

def _jac_double(X, Y, Z):
    p = P_MOD
    YY = Y * Y % p
    ZZ = Z * Z % p
    S = (X * YY << 2) % p
    M = (3 * X * X + ZZ * ZZ) % p  # curve coefficient a = 1
    X3 = (M * M - (S << 1)) % p
    Y3 = (M * (S - X3) - (YY * YY << 3)) % p
    Z3 = (Y * Z << 1) % p
    return X3, Y3, Z3


def _jac_add_affine(X1, Y1, Z1, x2, y2):
    p = P_MOD
    if Z1 == 0:
        return mpz(x2), mpz(y2), mpz(1)
    ZZ = Z1 * Z1 % p
    U2 = x2 * ZZ % p
    S2 = y2 * ZZ % p * Z1 % p
    H = (U2 - X1) % p
    R = (S2 - Y1) % p
    if H == 0:
        if R == 0:
            return _jac_double(X1, Y1, Z1)
        return mpz(1), mpz(1), mpz(0)
    HH = H * H % p
    HHH = HH * H % p
    V = X1 * HH % p
    X3 = (R * R - HHH - (V << 1)) % p
    Y3 = (R * (V - X3) - Y1 * HHH) % p
    Z3 = Z1 * H % p
    return X3, Y3, Z3


def _jac_to_affine(X, Y, Z):
    if Z == 0:
        return None
    p = P_MOD
    zi = invert(Z, p)
    zi2 = zi * zi % p
    return X * zi2 % p, Y * zi2 % p * zi % p


def _wnaf(k, width=4):
    """Width-w NAF digits of k, least significant first."""
    digits = []
    full = 1 << width
    half = full >> 1
    mask = full - 1
    while k > 0:
        if k & 1:
            d = k & mask
            if d >= half:
                d -= full
            k -= d
        else:
            d = 0
        digits.append(d)
        k >>= 1
    return digits


def ec_mul(k, pt):
    """Scalar multiple [k]pt, k >= 0, via width-4 NAF in Jacobian coords."""
    k = int(k)
    if k == 0 or pt is None:
        return None
    x, y = pt
    dbl = ec_double(pt)
    odd = [pt]  # 1P, 3P, 5P, ..., 15P
    for _ in range(7):
        odd.append(ec_add(odd[-1], dbl))
    X, Y, Z = mpz(0), mpz(1), mpz(0)
    for d in reversed(_wnaf(k)):
        if Z != 0:
            X, Y, Z = _jac_double(X, Y, Z)
        if d:
            tx, ty = odd[abs(d) >> 1]
            if d < 0:
                ty = P_MOD - ty
            X, Y, Z = _jac_add_affine(X, Y, Z, tx, ty)
    return _jac_to_affine(X, Y, Z)


class FixedBaseTable:
    """Windowed-comb precomputation for repeated multiples of one base point."""

    WINDOW = 4

    def __init__(self, base, bits=160):
        self.base = base
        self.windows = (bits + self.WINDOW - 1) // self.WINDOW
        table = []
        step = base
        for _ in range(self.windows):
            row = [None]
            acc = None
            for _ in range((1 << self.WINDOW) - 1):
                acc = ec_add(acc, step)
                row.append(acc)
            table.append(row)
            for _ in range(self.WINDOW):
                step = ec_double(step)
        self._table = table

    def mul(self, k):
        k = int(k)
        if k == 0:
            return None
        mask = (1 << self.WINDOW) - 1
        X, Y, Z = mpz(0), mpz(1), mpz(0)
        j = 0
        while k:
            d = k & mask
            if d:
                tx, ty = self._table[j][d]
                X, Y, Z = _jac_add_affine(X, Y, Z, tx, ty)
            k >>= self.WINDOW
            j += 1
        return _jac_to_affine(X, Y, Z)


def in_subgroup(pt):
    """True iff pt is in the order-q subgroup (includes infinity)."""
    if pt is None:
        return True
    if not on_curve(pt):
        return False
    # [q]pt with q = 2^159 + 2^17 + 1: doubling chain plus two additions
    x, y = pt
    X, Y, Z = mpz(x), mpz(y), mpz(1)
    for _ in range(142):
        X, Y, Z = _jac_double(X, Y, Z)
    X, Y, Z = _jac_add_affine(X, Y, Z, x, y)
    for _ in range(17):
        X, Y, Z = _jac_double(X, Y, Z)
    X, Y, Z = _jac_add_affine(X, Y, Z, x, y)
    return Z == 0


def clear_cofactor(pt):
    """Multiply by 2^386, mapping any curve point into the order-q subgroup."""
    if pt is None:
        return None
    X, Y, Z = mpz(pt[0]), mpz(pt[1]), mpz(1)
    for _ in range(COFACTOR_LOG2):
        X, Y, Z = _jac_double(X, Y, Z)
    return _jac_to_affine(X, Y, Z)


def map_to_curve(data: bytes):
    """Deterministic hash of bytes to a non-identity subgroup point.

    Try-and-increment on x, y chosen with even parity, then cofactor cleared.
    """
    for counter in range(256):
        seed = data + bytes([counter])
        blob = hashlib.sha512(seed + b"\x00").digest() + hashlib.sha512(
            seed + b"\x01"
        ).digest()
        x = mpz(int.from_bytes(blob, "big") % P_MOD)
        rhs = (x * x * x + x) % P_MOD
        if rhs == 0:
            continue
        y = fp_sqrt(rhs)
        if y is None:
            continue
        if y & 1:
            y = P_MOD - y
        pt = clear_cofactor((x, y))
        if pt is not None:
            return pt
    raise RuntimeError("map_to_curve failed after 256 attempts")


# --- Tate pairing ---------------------------------------------------------
#
# tate(P, Q) = f_{q,P}(phi(Q)) ^ ((p^2-1)/q), the Miller loop running over
# the first argument. The map is symmetric on the order-q subgroup, so a
# pairing against a fixed base can instead evaluate precomputed lines of
# that base at the variable point (precompute_lines / pair_with_lines).

def _miller(pt1, pt2):
    """Raw Miller value f_{q,pt1}(phi(pt2)) in F_p2, verticals elided."""
    p = P_MOD
    xp, yp = pt1
    xq, yq = pt2
    nyq = p - yq
    f0, f1 = mpz(1), mpz(0)
    xt, yt = xp, yp
    for bit in _QBITS[1:]:
        lam = (3 * xt * xt + 1) * invert(yt << 1, p) % p
        a = (lam * (p - xq - xt) + yt) % p
        t0 = (f0 + f1) * (f0 - f1) % p
        t1 = (f0 * f1 << 1) % p
        f0 = (t0 * a - t1 * nyq) % p
        f1 = (t0 * nyq + t1 * a) % p
        x3 = (lam * lam - (xt << 1)) % p
        yt = (lam * (xt - x3) - yt) % p
        xt = x3
        if bit:
            if xt == xp and (yt + yp) % p == 0:
                # the trailing +1 of q lands on a vertical line; it is
                # eliminated, and the loop is already on its last iteration
                continue
            lam = (yt - yp) * invert(xt - xp, p) % p
            a = (lam * (p - xq - xp) + yp) % p
            n0 = (f0 * a - f1 * nyq) % p
            f1 = (f0 * nyq + f1 * a) % p
            f0 = n0
            x3 = (lam * lam - xt - xp) % p
            yt = (lam * (xt - x3) - yt) % p
            xt = x3
    return f0, f1


def _final_exp(f0, f1):
    """Raise to (p^2-1)/q = (p-1) * 2^386.

    f^(p-1) is conj(f)/f (Frobenius is conjugation in F_p2); the result is
    unitary, so the 2^386 part is a chain of cheap unitary squarings.
    """
    p = P_MOD
    norm_inv = invert((f0 * f0 + f1 * f1) % p, p)
    # conj(f)^2 / norm(f) = conj(f) * f^-1
    z0 = (f0 * f0 - f1 * f1) % p * norm_inv % p
    z1 = (p - (f0 * f1 << 1) % p) * norm_inv % p
    for _ in range(COFACTOR_LOG2):
        nz0 = ((z0 * z0 << 1) - 1) % p
        z1 = (z0 * z1 << 1) % p
        z0 = nz0
    return z0, z1


def tate_pairing(pt1, pt2):
    """Reduced Tate pairing of two subgroup points; identity-safe."""
    if pt1 is None or pt2 is None:
        return GT_ONE
    return _final_exp(*_miller(pt1, pt2))


def precompute_lines(pt):
    """Miller-loop line coefficients of a fixed first argument.

    Each entry is (lam, u, is_add) with the line value at phi(Q) being
    (u - lam*x_Q) + i*(-y_Q).
    """
    p = P_MOD
    xp, yp = pt
    lines = []
    xt, yt = xp, yp
    for bit in _QBITS[1:]:
        lam = (3 * xt * xt + 1) * invert(yt << 1, p) % p
        lines.append((lam, (yt - lam * xt) % p, 0))
        x3 = (lam * lam - (xt << 1)) % p
        yt = (lam * (xt - x3) - yt) % p
        xt = x3
        if bit:
            if xt == xp and (yt + yp) % p == 0:
                continue
            lam = (yt - yp) * invert(xt - xp, p) % p
            lines.append((lam, (yp - lam * xp) % p, 1))
            x3 = (lam * lam - xt - xp) % p
            yt = (lam * (xt - x3) - yt) % p
            xt = x3
    return lines


def pair_with_lines(lines, pt):
    """tate(base, pt) via precomputed lines of the base; identity-safe."""
    if pt is None:
        return GT_ONE
    p = P_MOD
    xq, yq = pt
    nyq = p - yq
    f0, f1 = mpz(1), mpz(0)
    for lam, u, is_add in lines:
        a = (u - lam * xq) % p
        if is_add:
            n0 = (f0 * a - f1 * nyq) % p
            f1 = (f0 * nyq + f1 * a) % p
            f0 = n0
        else:
            t0 = (f0 + f1) * (f0 - f1) % p
            t1 = (f0 * f1 << 1) % p
            f0 = (t0 * a - t1 * nyq) % p
            f1 = (t0 * nyq + t1 * a) % p
    return _final_exp(f0, f1)


# --- target group mu_q (unitary subgroup of F_p2*) ------------------------

def gt_mul(z1, z2):
    p = P_MOD
    a, b = z1
    c, d = z2
    return ((a * c - b * d) % p, (a * d + b * c) % p)


def gt_inv(z):
    # unitary: norm 1, so the inverse is the conjugate
    return (z[0], (P_MOD - z[1]) % P_MOD)


def gt_pow(z, k):
    """z^k for unitary z, k >= 0."""
    k = int(k)
    if k == 0:
        return GT_ONE
    p = P_MOD
    z0, z1 = z
    r0, r1 = z0, z1
    for bit in bin(k)[3:]:
        t0 = ((r0 * r0 << 1) - 1) % p
        r1 = (r0 * r1 << 1) % p
        r0 = t0
        if bit == "1":
            n0 = (r0 * z0 - r1 * z1) % p
            r1 = (r0 * z1 + r1 * z0) % p
            r0 = n0
    return r0, r1


def gt_in_subgroup(z):
    """True iff z is in mu_q: unit norm and order dividing q."""
    a, b = z
    if not (0 <= a < P_MOD and 0 <= b < P_MOD):
        return False
    if (a * a + b * b) % P_MOD != 1:
        return False
    return gt_pow((mpz(a), mpz(b)), Q_ORDER) == GT_ONE


assert is_prime(Q_ORDER) and is_prime(P_MOD) and P_MOD % 4 == 3
