"""Bilinear pairing environment.

One suite ("ss546") built on the supersingular curve in `curve`. The pairing
is symmetric, but the API keeps two typed source roles so protocol code
cannot mix slots: HPoint is the hash/signature side (hashed points, ring
glue points, signatures), KPoint is the key side (the generator and all
public keys). TElem is the multiplicative target group.

All operations are pure; a PairingSuite is immutable after construction and
safe to share. Operation counting is explicit: callers own an OpCounter and
pass it in, nothing is counted globally.
"""

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from . import curve
from .curve import FIELD_BYTES, P_MOD, Q_ORDER, SCALAR_BYTES, mpz
from .errors import DecodeError, UsageError

TAG_H2_WARRANT = b"PRS:H2:warrant"
TAG_H2_MSG = b"PRS:H2:msg"
TAG_H1_CHAL = b"PRS:H1:chal"
TAG_H1_GLUE = b"PRS:H1:glue"

SCALAR_TAGS = (TAG_H1_CHAL, TAG_H1_GLUE)
GROUP_TAGS = (TAG_H2_WARRANT, TAG_H2_MSG)

DEFAULT_SUITE_ID = "ss546"

POINT_BYTES = 1 + FIELD_BYTES      # compressed: parity prefix + x
TELEM_BYTES = 2 * FIELD_BYTES      # both F_p2 coefficients


@dataclass
class OpCounter:
    """Tally of group operations performed by one protocol invocation."""

    pairings: int = 0
    h_mults: int = 0
    k_mults: int = 0
    t_exps: int = 0
    hashes: int = 0

    def as_dict(self):
        return {
            "pairings": self.pairings,
            "h_mults": self.h_mults,
            "k_mults": self.k_mults,
            "t_exps": self.t_exps,
            "hashes": self.hashes,
        }


class Scalar:
    """Residue modulo the group order q."""

    __slots__ = ("v",)

    def __init__(self, value):
        self.v = mpz(int(value) % Q_ORDER)

    def __add__(self, other):
        return Scalar(self.v + other.v)

    def __sub__(self, other):
        return Scalar(self.v - other.v)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return Scalar(self.v * other.v)
        if isinstance(other, (HPoint, KPoint)):
            return other.__rmul__(self)
        return NotImplemented

    def __neg__(self):
        return Scalar(-self.v)

    def inverse(self):
        if self.v == 0:
            raise UsageError("zero scalar has no inverse")
        return Scalar(curve.invert(self.v, Q_ORDER))

    def is_zero(self):
        return self.v == 0

    def __int__(self):
        return int(self.v)

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.v == other.v

    def __hash__(self):
        return hash(("Scalar", self.v))

    def __repr__(self):
        return "Scalar(0x%x)" % self.v

    def to_bytes(self) -> bytes:
        return int(self.v).to_bytes(SCALAR_BYTES, "big")

    @classmethod
    def from_bytes(cls, data: bytes) -> "Scalar":
        if len(data) != SCALAR_BYTES:
            raise DecodeError("scalar: bad length %d" % len(data))
        value = int.from_bytes(data, "big")
        if value >= Q_ORDER:
            raise DecodeError("scalar: value out of range")
        return cls(value)


def _encode_point(pt) -> bytes:
    if pt is None:
        return b"\x00" + b"\x00" * FIELD_BYTES
    x, y = pt
    prefix = b"\x03" if y & 1 else b"\x02"
    return prefix + int(x).to_bytes(FIELD_BYTES, "big")


@lru_cache(maxsize=8192)
def _decode_point(data: bytes):
    if len(data) != POINT_BYTES:
        raise DecodeError("point: bad length %d" % len(data))
    prefix = data[0]
    x = int.from_bytes(data[1:], "big")
    if prefix == 0x00:
        if x != 0:
            raise DecodeError("point: nonzero body on identity encoding")
        return None
    if prefix not in (0x02, 0x03):
        raise DecodeError("point: bad prefix byte 0x%02x" % prefix)
    if x >= P_MOD:
        raise DecodeError("point: x out of field range")
    x = mpz(x)
    y = curve.fp_sqrt((x * x * x + x) % P_MOD)
    if y is None:
        raise DecodeError("point: x not on curve")
    if bool(y & 1) != (prefix == 0x03):
        y = P_MOD - y
    pt = (x, y)
    if not curve.in_subgroup(pt):
        raise DecodeError("point: not in the prime-order subgroup")
    return pt


class _SourcePoint:
    """Shared behaviour of the two source-group roles."""

    __slots__ = ("pt",)

    def __init__(self, pt):
        self.pt = pt

    def is_identity(self):
        return self.pt is None

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(curve.ec_add(self.pt, other.pt))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(curve.ec_add(self.pt, curve.ec_neg(other.pt)))

    def __neg__(self):
        return type(self)(curve.ec_neg(self.pt))

    def __rmul__(self, scalar):
        if not isinstance(scalar, Scalar):
            return NotImplemented
        return type(self)(curve.ec_mul(scalar.v, self.pt))

    def __eq__(self, other):
        return type(other) is type(self) and self.pt == other.pt

    def __hash__(self):
        return hash((type(self).__name__, self.pt))

    def __repr__(self):
        if self.pt is None:
            return "%s(identity)" % type(self).__name__
        return "%s(x=0x%x...)" % (type(self).__name__, int(self.pt[0]) >> 466)

    def to_bytes(self) -> bytes:
        return _encode_point(self.pt)

    @classmethod
    def from_bytes(cls, data: bytes):
        return cls(_decode_point(bytes(data)))


class HPoint(_SourcePoint):
    """Hash-side source group element (message/warrant hashes, signatures)."""

    __slots__ = ()


class KPoint(_SourcePoint):
    """Key-side source group element (generator, public keys)."""

    __slots__ = ()


@lru_cache(maxsize=4096)
def _decode_telem(data: bytes):
    if len(data) != TELEM_BYTES:
        raise DecodeError("target element: bad length %d" % len(data))
    a = int.from_bytes(data[:FIELD_BYTES], "big")
    b = int.from_bytes(data[FIELD_BYTES:], "big")
    if a >= P_MOD or b >= P_MOD:
        raise DecodeError("target element: coefficient out of range")
    z = (mpz(a), mpz(b))
    if not curve.gt_in_subgroup(z):
        raise DecodeError("target element: not in the pairing image subgroup")
    return z


class TElem:
    """Target group element (multiplicative, order q)."""

    __slots__ = ("z",)

    def __init__(self, z):
        self.z = z

    def is_one(self):
        return self.z == curve.GT_ONE

    def __mul__(self, other):
        if not isinstance(other, TElem):
            return NotImplemented
        return TElem(curve.gt_mul(self.z, other.z))

    def __pow__(self, scalar):
        if not isinstance(scalar, Scalar):
            return NotImplemented
        return TElem(curve.gt_pow(self.z, scalar.v))

    def inverse(self):
        return TElem(curve.gt_inv(self.z))

    def __eq__(self, other):
        return isinstance(other, TElem) and self.z == other.z

    def __hash__(self):
        return hash(("TElem", self.z))

    def __repr__(self):
        return "TElem(0x%x...)" % (int(self.z[0]) >> 466)

    def to_bytes(self) -> bytes:
        a, b = self.z
        return int(a).to_bytes(FIELD_BYTES, "big") + int(b).to_bytes(
            FIELD_BYTES, "big"
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "TElem":
        return cls(_decode_telem(bytes(data)))


GT_IDENTITY = TElem(curve.GT_ONE)


def _hash_frame(tag: bytes, msg: bytes) -> bytes:
    return len(tag).to_bytes(4, "big") + tag + msg


@lru_cache(maxsize=256)
def _map_frame_to_point(frame: bytes):
    return curve.map_to_curve(frame)


class PairingSuite:
    """The fixed bilinear environment: groups, generator, hashes, encodings."""

    def __init__(self, suite_id: str):
        if suite_id != DEFAULT_SUITE_ID:
            raise UsageError("unknown suite %r" % suite_id)
        self.suite_id = suite_id
        self.order = Q_ORDER
        gen_pt = curve.map_to_curve(b"PRS:base:" + suite_id.encode() + b":K")
        hbase_pt = curve.map_to_curve(b"PRS:base:" + suite_id.encode() + b":H")
        self.generator = KPoint(gen_pt)
        self.h_base = HPoint(hbase_pt)
        self._gen_lines = curve.precompute_lines(gen_pt)
        self._gen_comb = curve.FixedBaseTable(gen_pt)
        self._hbase_comb = curve.FixedBaseTable(hbase_pt)

    # -- pairing -----------------------------------------------------------

    def pair(self, a: HPoint, b: KPoint, ctr: OpCounter = None) -> TElem:
        """e(a, b); bilinear, non-degenerate, counts as one pairing."""
        if not isinstance(a, HPoint):
            raise UsageError("pair: first slot must be an HPoint")
        if not isinstance(b, KPoint):
            raise UsageError("pair: second slot must be a KPoint")
        if ctr is not None:
            ctr.pairings += 1
        if b.pt == self.generator.pt:
            return TElem(curve.pair_with_lines(self._gen_lines, a.pt))
        return TElem(curve.tate_pairing(a.pt, b.pt))

    # -- hashing -----------------------------------------------------------

    def hash_to_scalar(self, tag: bytes, msg: bytes, ctr: OpCounter = None) -> Scalar:
        """Domain-separated hash into Z_q; a zero output is remapped to 1."""
        if tag not in SCALAR_TAGS:
            raise UsageError("hash_to_scalar: unknown tag %r" % tag)
        if ctr is not None:
            ctr.hashes += 1
        digest = hashlib.sha512(_hash_frame(tag, msg)).digest()
        value = int.from_bytes(digest, "big") % Q_ORDER
        if value == 0:
            value = 1
        return Scalar(value)

    def hash_to_group(self, tag: bytes, msg: bytes, ctr: OpCounter = None) -> HPoint:
        """Domain-separated hash onto the hash-side group; never the identity."""
        if tag not in GROUP_TAGS:
            raise UsageError("hash_to_group: unknown tag %r" % tag)
        if ctr is not None:
            ctr.hashes += 1
        return HPoint(_map_frame_to_point(_hash_frame(tag, msg)))

    # -- randomness --------------------------------------------------------

    def random_scalar(self, entropy, nonzero: bool = True) -> Scalar:
        """Uniform scalar; with nonzero=True, uniform over [1, q-1]."""
        # 64 bits of slack keeps the modular bias negligible
        raw = int.from_bytes(entropy.read(SCALAR_BYTES + 8), "big")
        if nonzero:
            return Scalar(1 + raw % (Q_ORDER - 1))
        return Scalar(raw % Q_ORDER)

    def random_h_point(self, entropy) -> HPoint:
        """Uniform non-identity hash-side point, as a random multiple of a
        fixed base."""
        r = self.random_scalar(entropy, nonzero=True)
        return HPoint(self._hbase_comb.mul(r.v))

    def mul_generator(self, s: Scalar) -> KPoint:
        """[s]P with fixed-base precomputation."""
        return KPoint(self._gen_comb.mul(s.v))

    def __repr__(self):
        return "PairingSuite(%r)" % self.suite_id


_SUITES = {}


def get_suite(suite_id: str = DEFAULT_SUITE_ID) -> PairingSuite:
    """Shared singleton per suite identifier."""
    if suite_id not in _SUITES:
        if suite_id != DEFAULT_SUITE_ID:
            raise UsageError("unknown suite %r" % suite_id)
        _SUITES[suite_id] = PairingSuite(suite_id)
    return _SUITES[suite_id]
