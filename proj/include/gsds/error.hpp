#pragma once

#include <stdexcept>
#include <string>

namespace gsds {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ZeroDivisionError : public Error {
  public:
    using Error::Error;
};

class FieldMismatchError : public Error {
  public:
    using Error::Error;
};

class EncodingError : public Error {
  public:
    using Error::Error;
};

class ArityError : public Error {
  public:
    using Error::Error;
};

/// Polynomial text that does not conform to the grammar. `position` is the
/// zero-based byte offset of the offending character.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

class ModelError : public Error {
  public:
    using Error::Error;
};

class StateError : public Error {
  public:
    using Error::Error;
};

class LimitError : public Error {
  public:
    using Error::Error;
};

class ContinuityError : public Error {
  public:
    ContinuityError(const std::string &what, double breakpoint, double gap)
        : Error(what), breakpoint_(breakpoint), gap_(gap) {}

    [[nodiscard]] double breakpoint() const noexcept { return breakpoint_; }
    [[nodiscard]] double gap() const noexcept { return gap_; }

  private:
    double breakpoint_;
    double gap_;
};

class ZenoError : public Error {
  public:
    using Error::Error;
};

/// Two observations with the same input state but different outputs.
class ContradictoryDataError : public Error {
  public:
    ContradictoryDataError(const std::string &what, std::size_t first, std::size_t second)
        : Error(what), first_(first), second_(second) {}

    [[nodiscard]] std::size_t first_index() const noexcept { return first_; }
    [[nodiscard]] std::size_t second_index() const noexcept { return second_; }

  private:
    std::size_t first_;
    std::size_t second_;
};

class FormatError : public Error {
  public:
    using Error::Error;
};

} // namespace gsds
