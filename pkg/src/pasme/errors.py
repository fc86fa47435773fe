"""Exception hierarchy shared by every PASME module."""


class PasmeError(Exception):
    """Base class for all library errors."""


class EmptyPassphrase(PasmeError, ValueError):
    """The passphrase has no symbols, so W would not depend on any key."""


class ZeroLength(PasmeError, ValueError):
    """A key-sheet of length zero was requested."""


class KeyRejected(PasmeError):
    """The passphrase failed the ``P mod W' == K4`` validation."""


class MalformedCiphertext(PasmeError):
    """Decoded digits fall outside the alphabet, or the envelope is inconsistent."""


class IntegrityError(MalformedCiphertext):
    """Plaintext checksum mismatch after a successful key validation."""


class MalformedContainer(PasmeError):
    """A ``.pasme`` byte stream violates the container layout."""


class MalformedStego(PasmeError):
    """A stego file is too short or its trailer length is out of bounds."""


class PayloadTooLarge(PasmeError, ValueError):
    """A payload does not fit the 32-bit stego length trailer."""


class AttackFailed(PasmeError):
    """A cryptanalytic guess did not survive the consistency checks."""
