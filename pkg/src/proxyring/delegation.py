"""Warrant-based signing delegation.

The original signer writes a warrant (an explicit, machine-readable
statement of who may sign on their behalf), signs its canonical encoding
with the short-signature primitive under the warrant tag, and hands the
(warrant, signature) token to the proxy group. Each authorized proxy folds
in its own secret to derive a proxy signing key bound to that warrant:

    s_key = [s_o]H(w) + [s_p]H(w) = [(s_o + s_p)]H(w)

whose defining check is e(s_key, P) = e(H(w), PK_o + PK_p).
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .algebra import TAG_H2_WARRANT, HPoint, OpCounter, PairingSuite
from .errors import AuthorizationError, DecodeError, UsageError, ValidationError
from .pbsss import (
    ACCEPT,
    CAUSE_BAD_SIGNATURE,
    CAUSE_MALFORMED,
    PublicKey,
    SecretKey,
    VerifyResult,
    public_key,
)

NONCE_BYTES = 16


def _u32(n: int) -> bytes:
    return n.to_bytes(4, "big")


@dataclass(frozen=True)
class Warrant:
    """Delegation statement: free-form terms plus the authorized key list.

    The nonce makes otherwise-identical warrants distinct, so revoking or
    reissuing a delegation never collides with an old one.
    """

    body: bytes
    authorized: Tuple[PublicKey, ...]
    original: PublicKey
    nonce: bytes

    def __post_init__(self):
        if not isinstance(self.authorized, tuple):
            raise UsageError("warrant: authorized keys must be a tuple")
        if len(self.authorized) == 0:
            raise UsageError("warrant: authorized key list is empty")
        seen = {pk.to_bytes() for pk in self.authorized}
        if len(seen) != len(self.authorized):
            raise UsageError("warrant: duplicate authorized key")
        if len(self.nonce) != NONCE_BYTES:
            raise UsageError("warrant: nonce must be %d bytes" % NONCE_BYTES)

    def canonical_bytes(self) -> bytes:
        """Injective encoding; exactly these bytes are hashed by H(w)."""
        out = [
            _u32(len(self.body)),
            self.body,
            self.original.to_bytes(),
            self.nonce,
            _u32(len(self.authorized)),
        ]
        out.extend(pk.to_bytes() for pk in self.authorized)
        return b"".join(out)

    def covers(self, pk: PublicKey) -> bool:
        return pk in self.authorized


def new_warrant(body: bytes, original: PublicKey, authorized, entropy) -> Warrant:
    """Build a warrant with a fresh nonce."""
    return Warrant(
        body=bytes(body),
        authorized=tuple(authorized),
        original=original,
        nonce=entropy.read(NONCE_BYTES),
    )


@dataclass(frozen=True)
class DelegationToken:
    """(w, [s_o]H(w)) as issued to the proxy group."""

    warrant: Warrant
    w_sig: HPoint


@dataclass(frozen=True)
class ProxyKeyMaterial:
    """A proxy's derived signing key, bound to the warrant it came from."""

    warrant: Warrant
    proxy_pk: PublicKey
    s_key: HPoint


def warrant_point(suite: PairingSuite, warrant: Warrant, ctr: OpCounter = None) -> HPoint:
    """H(w): the warrant's canonical bytes hashed onto the curve."""
    return suite.hash_to_group(TAG_H2_WARRANT, warrant.canonical_bytes(), ctr)


def make_delegation(
    suite: PairingSuite, sk_o: SecretKey, warrant: Warrant
) -> DelegationToken:
    """Sign the warrant: token carries [s_o]H(w)."""
    if public_key(suite, sk_o) != warrant.original:
        raise UsageError("delegation: warrant.original is not the signing key")
    return DelegationToken(warrant, sk_o.s * warrant_point(suite, warrant))


def verify_delegation(
    suite: PairingSuite,
    token: Union[DelegationToken, bytes],
    ctr: OpCounter = None,
) -> VerifyResult:
    """Proxy-side token check: e(w_sig, P) = e(H(w), PK_o). Two pairings."""
    if isinstance(token, (bytes, bytearray)):
        from . import wire  # deferred to avoid an import cycle

        try:
            token = wire.decode_token(token)
        except DecodeError:
            return VerifyResult(False, CAUSE_MALFORMED)
    lhs = suite.pair(token.w_sig, suite.generator, ctr)
    rhs = suite.pair(warrant_point(suite, token.warrant, ctr), token.warrant.original.pk, ctr)
    if lhs == rhs:
        return ACCEPT
    return VerifyResult(False, CAUSE_BAD_SIGNATURE)


def derive_proxy_key(
    suite: PairingSuite, token: DelegationToken, sk_p: SecretKey
) -> ProxyKeyMaterial:
    """Fold the proxy secret into the token: s_key = w_sig + [s_p]H(w)."""
    if not verify_delegation(suite, token):
        raise ValidationError("delegation token does not verify")
    pk_p = public_key(suite, sk_p)
    if not token.warrant.covers(pk_p):
        raise AuthorizationError("proxy key is not authorized by the warrant")
    s_key = token.w_sig + sk_p.s * warrant_point(suite, token.warrant)
    return ProxyKeyMaterial(warrant=token.warrant, proxy_pk=pk_p, s_key=s_key)


def material_is_consistent(
    suite: PairingSuite, material: ProxyKeyMaterial, ctr: OpCounter = None
) -> bool:
    """Defining identity of a proxy key:
    e(s_key, P) = e(H(w), PK_o + PK_p)."""
    lhs = suite.pair(material.s_key, suite.generator, ctr)
    keysum = material.warrant.original.pk + material.proxy_pk.pk
    rhs = suite.pair(warrant_point(suite, material.warrant, ctr), keysum, ctr)
    return lhs == rhs
