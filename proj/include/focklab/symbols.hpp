#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

/// A pointwise symbol on the plane. Radial symbols carry a profile so
/// quadratures can collapse to one dimension; indicator symbols carry their
/// geometry so ball-adapted rules can be used.
struct Symbol {
  enum class Kind { generic, radial, indicator };
  Kind kind = Kind::generic;
  std::function<Complex(Complex)> eval;
  std::function<double(double)> radial_profile;  // set when kind == radial
  Complex center = 0.0;                          // indicator geometry
  double radius = 0.0;
  std::string name = "symbol";

  static Symbol constant(Complex c);
  static Symbol from_function(std::function<Complex(Complex)> f, std::string name);
  static Symbol radial(std::function<double(double)> profile, std::string name);
  static Symbol indicator_ball(Complex center, double radius);
};

/// Tiny expression language for configs: numbers, i, z, conj(z), abs2(z),
/// exp(e), indicator(cx, cy, r), sums, differences, products, parentheses.
/// Throws InvalidParameter on malformed input. Radial expressions are
/// detected structurally (abs2(z), constants, exp/sums/products of radial,
/// origin-centered indicators).
Symbol parse_symbol(const std::string& text);

/// Stable catalog of named operator presets for the CLI.
std::vector<std::pair<std::string, std::string>> preset_catalog();

}  // namespace focklab
