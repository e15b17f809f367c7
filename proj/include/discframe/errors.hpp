#pragma once

#include <stdexcept>
#include <string>

namespace discframe {

// Failure kinds raised by the numerics layers. The CLI maps all of these to a
// single "computation failed" exit class; tests dispatch on the code.
enum class errc {
  point_outside_disc,
  near_collision,
  invalid_spec,
  sequence_too_short,
  invalid_param,
  product_collision,
  dimension_mismatch,
  not_a_frame,
  tolerance_not_reached,
  missing_operator,
  insufficient_vectors,
  missing_base,
  ill_conditioned,
};

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::point_outside_disc: return "PointOutsideDisc";
    case errc::near_collision: return "NearCollision";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::sequence_too_short: return "SequenceTooShort";
    case errc::invalid_param: return "InvalidParam";
    case errc::product_collision: return "ProductCollision";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_a_frame: return "NotAFrame";
    case errc::tolerance_not_reached: return "ToleranceNotReached";
    case errc::missing_operator: return "MissingOperator";
    case errc::insufficient_vectors: return "InsufficientVectors";
    case errc::missing_base: return "MissingBase";
    case errc::ill_conditioned: return "IllConditioned";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace discframe
