#pragma once

#include <optional>
#include <string>

#include "report.hpp"

namespace bratspec::testing {

inline Session session(const std::string& preset, std::optional<double> s = std::nullopt,
                       std::optional<std::string> backend = std::nullopt) {
  SessionOptions o;
  o.s = s;
  if (backend) o.backend = Backend::parse(*backend);
  return Session(load_preset(preset), o);
}

inline Scalar phi() { return Scalar(QuadraticNumber(Rational(1, 2), Rational(1, 2), 5)); }

}  // namespace bratspec::testing
