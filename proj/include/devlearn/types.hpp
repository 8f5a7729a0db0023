#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace devlearn {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Encoded observation block: one row per time step, one column per feature.
// Row-major so a step's features are contiguous, matching the on-disk layout.
using EncodedSequence =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class MachineKind {
  EightBit,
  SingleDirect,
  SingleInvert,
  SimpleXOR,
  Parity,
  SerialPort,
};

inline constexpr int kMachineKindCount = 6;
inline constexpr long kMaxBaud = 115200;

bool is_simple(MachineKind kind);
int input_width(MachineKind kind);   // encoded command width
int output_width(MachineKind kind);  // encoded output width

std::string to_string(MachineKind kind);
std::string display_name(MachineKind kind);
MachineKind machine_kind_from_string(const std::string& name);

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain input outside its contract: bad latch index, mixed command types,
// baud out of range, unachievable hello-world target.
struct RejectedInput : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Runtime dimension mismatch between arrays that must agree.
struct ShapeError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct FormatError : Error {
  enum class Kind { Magic, Version, Header, Truncated, Width, Trailing };
  FormatError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
  Kind kind;
};

// Training diverged: a gradient or loss stopped being a finite number.
struct NonFiniteError : Error {
  using Error::Error;
};

// A backward pass was asked to use activations recorded for different
// parameter values.
struct StaleTraceError : Error {
  using Error::Error;
};

}  // namespace devlearn
