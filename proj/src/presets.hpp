#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laplacian.hpp"

namespace bratspec {

// A value c + k*phi^2 in Q(sqrt 5).
struct PhiSquaredForm {
  Rational constant;
  Rational phi_squared;

  Scalar value(const Backend& backend) const;  // quadratic:5 or approx
  std::string to_string() const;
  PhiSquaredForm flip_constant() const { return {-constant, phi_squared}; }
};

// A reference magnitude quoted with a sign error in its constant term.
struct KnownDiscrepancy {
  std::string quantity;     // "root" or a path id
  PhiSquaredForm printed;   // quoted magnitude
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<std::string> letters;
  IntMatrix matrix;
  int dimension = 1;
  int symmetry_order = 1;
  std::optional<SubstitutionRule> rule;
  std::string backend;  // recommended
  bool transversal_faithful = true;
  std::vector<std::pair<std::string, std::string>> constants;
  std::vector<KnownDiscrepancy> discrepancies;

  BratteliDiagram diagram() const;
  Backend recommended_backend() const { return Backend::parse(backend); }
};

const std::vector<std::string>& preset_names();
Preset load_preset(const std::string& name);

// {"letters": [...], "matrix": [[...]], "dimension": d, "symmetry_order": g,
//  "images": {"a": ["a", "b"], ...}} with images optional.
Preset load_matrix_file(const std::string& path);
Preset parse_matrix_json(const std::string& text, const std::string& name = "matrix-file");

// Penrose-family root eigenvalue -2g(g + 1 - 4 phi^2) / (g^2 - 10 g + 5).
Scalar penrose_root_formula(int g, const Backend& backend);

// Thue-Morse counting bounds at magnitude x: (1/2) sqrt(6x/7 + 10/7) and sqrt(6x/7 + 4/7).
std::pair<double, double> thue_morse_weyl_bounds(double x);

// Comparison of computed eigenvalues with the quoted constants of a preset.
struct DiscrepancyCheck {
  std::string quantity;
  Scalar computed_magnitude;
  PhiSquaredForm printed;
  bool matches_printed = false;
  bool matches_flipped = false;
};

std::vector<DiscrepancyCheck> check_discrepancies(const Preset& preset, const LaplacianModel& model);
std::vector<std::string> discrepancy_notes(const std::vector<DiscrepancyCheck>& checks);

}  // namespace bratspec
