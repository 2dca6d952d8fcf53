"""Password-hardened fuzzy vault over revocable biometric point templates.

Pipeline: a combined user + soft-biometric password translates template
points per quadrant (revocable templates), a degree-8 polynomial over
GF(2^16) locks a CRC-protected 128-bit secret at the transformed points,
chaff hides the genuine set, and the password additionally masks the
secret and keys the stored vault.  ``security`` quantifies the result in
min-entropy bits.
"""

from .errors import (
    AuthenticationFailed,
    DomainError,
    DuplicateAbscissaError,
    EmptyInputError,
    FormatError,
    InsufficientCandidates,
    InsufficientPointsError,
    InvalidPasswordError,
    IrisVaultError,
    LengthError,
    ParseError,
    PlacementFailed,
    SearchExhausted,
    SpaceExhaustedError,
    UnlockError,
    WrongArityError,
    ZeroInverseError,
)
from .password import (
    CombinedPassword,
    EyeColor,
    SoftBiometrics,
    TranslationBlock,
    UserPassword,
    combine_password,
    derive_blocks,
    eye_color_code,
    mask_secret,
    seed_from_password,
)
from .security import EntropyReport, analyze, binom, evaluations, hardened_range, min_entropy
from .templates import (
    parse_template,
    read_vault,
    synth_template,
    write_template,
    write_vault,
)
from .transform import (
    MinutiaPoint,
    Template,
    prune_close,
    quadrant_of,
    transform_point,
    transform_template,
)
from .vault import (
    SecretPolynomial,
    Vault,
    VaultParams,
    VaultPoint,
    build_vault,
    decrypt_vault,
    encode_secret,
    decode_secret,
    encrypt_vault,
    eval_poly,
    generate_chaff,
    lagrange_interpolate,
    lock_units,
    match_candidates,
    open_vault,
)

__version__ = "0.1.0"
