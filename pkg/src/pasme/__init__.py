"""PASME: base-change encryption with prime garbage, a key-sheet file mode,
append-based hiding, and the attacks that break it."""

from .codec import DigitString, extrair, inflar, rebase_T, sujar
from .core import (
    PublicBundle,
    SecretParams,
    SecurityConfig,
    decrypt,
    derive_W,
    encrypt,
    generate_params,
    validate_key,
)
from .errors import (
    AttackFailed,
    EmptyPassphrase,
    IntegrityError,
    KeyRejected,
    MalformedCiphertext,
    MalformedContainer,
    MalformedStego,
    PasmeError,
    PayloadTooLarge,
    ZeroLength,
)
from .hybrid import HybridContainer, hybrid_decrypt, hybrid_encrypt, stream_xor
from .numtheory import RandomSource, is_probable_prime, next_prime

__version__ = "0.1.0"
