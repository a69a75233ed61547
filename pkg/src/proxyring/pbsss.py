"""Pairing-based short signatures.

Keys are (s, [s]P); the signature on a message is [s]H(m) with H hashing
into the hash-side group. Verification checks e(sig, P) = e(H(m), pk) and
costs exactly two pairings regardless of message length. Signatures are
domain-tagged so a warrant signature can never double as an ordinary
message signature.
"""

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import HPoint, KPoint, OpCounter, PairingSuite, Scalar
from .errors import DecodeError, UsageError

CAUSE_MALFORMED = "malformed"
CAUSE_UNAUTHORIZED_RING = "unauthorized-ring"
CAUSE_BAD_SIGNATURE = "bad-signature"


@dataclass(frozen=True)
class VerifyResult:
    """Accept/reject with a machine-readable cause on rejection."""

    accepted: bool
    cause: Optional[str] = None

    def __bool__(self):
        return self.accepted


ACCEPT = VerifyResult(True)


@dataclass(frozen=True)
class SecretKey:
    s: Scalar

    def __post_init__(self):
        if self.s.is_zero():
            raise UsageError("secret key scalar must be nonzero")


@dataclass(frozen=True)
class PublicKey:
    pk: KPoint

    def __post_init__(self):
        if self.pk.is_identity():
            raise UsageError("public key must not be the identity")

    def to_bytes(self) -> bytes:
        return self.pk.to_bytes()


@dataclass(frozen=True)
class ShortSignature:
    sig: HPoint

    def to_bytes(self) -> bytes:
        return self.sig.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "ShortSignature":
        return cls(HPoint.from_bytes(data))


def public_key(suite: PairingSuite, sk: SecretKey) -> PublicKey:
    return PublicKey(suite.mul_generator(sk.s))


def keygen(suite: PairingSuite, entropy) -> "tuple[SecretKey, PublicKey]":
    """Fresh keypair: s uniform over [1, q-1], pk = [s]P."""
    sk = SecretKey(suite.random_scalar(entropy, nonzero=True))
    return sk, public_key(suite, sk)


def sign(suite: PairingSuite, sk: SecretKey, tag: bytes, msg: bytes) -> ShortSignature:
    """Deterministic signature [s]H(tag, msg)."""
    return ShortSignature(sk.s * suite.hash_to_group(tag, msg))


def verify(
    suite: PairingSuite,
    pk: PublicKey,
    tag: bytes,
    msg: bytes,
    sig: Union[ShortSignature, bytes],
    ctr: OpCounter = None,
) -> VerifyResult:
    """Check e(sig, P) = e(H(tag, msg), pk). Exactly two pairings.

    Raw bytes are accepted for the signature; bytes that do not decode
    reject with cause "malformed" rather than "bad-signature".
    """
    if isinstance(sig, (bytes, bytearray)):
        try:
            sig = ShortSignature.from_bytes(sig)
        except DecodeError:
            return VerifyResult(False, CAUSE_MALFORMED)
    lhs = suite.pair(sig.sig, suite.generator, ctr)
    rhs = suite.pair(suite.hash_to_group(tag, msg, ctr), pk.pk, ctr)
    if lhs == rhs:
        return ACCEPT
    return VerifyResult(False, CAUSE_BAD_SIGNATURE)
