#pragma once

#include <stdexcept>
#include <string>

namespace sqsynth {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A frame or signal contains NaN or infinity.
struct NonFiniteInput : Error { using Error::Error; };

// Frame length is odd (one period must hold an even number of samples).
struct OddLength : Error { using Error::Error; };

// Frame is too short for the requested operation.
struct TooFewSamples : Error { using Error::Error; };

// Significant energy at the Nyquist bin, where phase is unrepresentable.
struct NyquistEnergy : Error { using Error::Error; };

// A candidate basis function is identically zero after mean removal.
struct ZeroFunction : Error { using Error::Error; };

// The requested evaluation mode is not available for this basis kind.
struct UnsupportedMode : Error { using Error::Error; };

// Basis has no energy at its fundamental, so extraction is impossible.
struct NonadmissibleFundamental : Error { using Error::Error; };

// Basis admissibility margin is not positive (strict mode only).
struct NonadmissibleBasis : Error { using Error::Error; };

// An engine was handed a decomposition over the wrong basis.
struct WrongBasisKind : Error { using Error::Error; };

// Lookup table size must be a power of two >= 4.
struct BadLutSize : Error { using Error::Error; };

// Operation requires a power-of-two length.
struct NotPowerOfTwo : Error { using Error::Error; };

// Invalid parameter combination.
struct BadParams : Error { using Error::Error; };

// A file does not match the expected on-disk format.
struct FileFormat : Error { using Error::Error; };

// Underlying I/O failed (open, read, write).
struct IoFailure : Error { using Error::Error; };

} // namespace sqsynth
