#pragma once

#include <stdexcept>

namespace speechml {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// audio / dsp
struct MalformedWav : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct SignalTooShort : Error { using Error::Error; };
struct BinMismatch : Error { using Error::Error; };

// models / eval
struct EmptyInput : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SingleClass : Error { using Error::Error; };
struct NoSplits : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct EmptyConfusion : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };

// synth / file formats / cli
struct InvalidSpec : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };
struct FileNotFound : Error { using Error::Error; };
struct IdMismatch : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// precondition violations
struct InvalidArgument : Error { using Error::Error; };

}  // namespace speechml
