#ifndef MARGKIT_ERRORS_HPP
#define MARGKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace margkit {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Calibration failures carry a code so callers can react to the cause,
/// not just the message.
class CalibrationError : public Error {
 public:
  enum class Code {
    InsufficientSamples,
    Coverage,       // samples span fewer octants than required
    NotStationary,  // gyro deviation gate failed
    Degenerate,     // ill-conditioned normal matrix
    NotFitted,      // parameters requested before the session fitted
  };

  CalibrationError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Wire-protocol decode/transport errors.
class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& what) : Error(what) {}
};

/// CSV / key=value file errors; line is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace margkit

#endif  // MARGKIT_ERRORS_HPP
