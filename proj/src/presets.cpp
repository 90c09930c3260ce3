#include "presets.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace bratspec {

namespace {

Scalar phi_squared_value(const Backend& backend) {
  if (backend.kind == BackendKind::quadratic) {
    if (backend.discriminant != 5) fail(ErrorCode::backend_mismatch, "phi needs the quadratic:5 backend");
    return Scalar(QuadraticNumber(Rational(3, 2), Rational(1, 2), 5));
  }
  if (backend.kind == BackendKind::approx) {
    ApproxReal five(5.0, backend.precision);
    return Scalar((ApproxReal(3.0, backend.precision) + five.sqrt()) / ApproxReal(2.0, backend.precision));
  }
  fail(ErrorCode::backend_mismatch, "phi is not rational");
}

Preset make(std::string name, std::string description, std::vector<std::pair<char, std::string>> images, int d, int g,
            std::string backend) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  SubstitutionRule rule = SubstitutionRule::from_strings(images, d);
  p.letters = rule.alphabet;
  p.matrix = abelianize(rule);
  p.dimension = d;
  p.symmetry_order = g;
  p.rule = std::move(rule);
  p.backend = std::move(backend);
  return p;
}

Preset make_matrix(std::string name, std::string description, IntMatrix a, int d, int g, std::string backend) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.letters = {"a", "b"};
  p.matrix = std::move(a);
  p.dimension = d;
  p.symmetry_order = g;
  p.backend = std::move(backend);
  return p;
}

bool close_relative_double(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
}

std::string penrose_root_text(int g) {
  std::ostringstream os;
  os << "-2*" << g << "*(" << g << " + 1 - 4*phi^2)/(" << g * g - 10 * g + 5 << ")";
  return os.str();
}

}  // namespace

Scalar PhiSquaredForm::value(const Backend& backend) const {
  return Scalar::from_rational(backend, constant) + Scalar::from_rational(backend, phi_squared) * phi_squared_value(backend);
}

std::string PhiSquaredForm::to_string() const {
  return bratspec::to_string(constant) + " + " + bratspec::to_string(phi_squared) + "*phi^2";
}

BratteliDiagram Preset::diagram() const { return BratteliDiagram::build(matrix, symmetry_order, letters, dimension); }

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fibonacci", "fibonacci-conjugate", "thue-morse",
                                              "dyadic-odometer", "penrose", "ammann-a2"};
  return names;
}

Preset load_preset(const std::string& name) {
  if (name == "fibonacci") {
    Preset p = make(name, "Fibonacci substitution a->ab, b->a", {{'a', "ab"}, {'b', "a"}}, 1, 1, "quadratic:5");
    p.transversal_faithful = false;
    p.constants = {{"theta", "phi"},
                   {"Lambda_1", "phi^2"},
                   {"lambda_root", "-(1 + 2*phi)"},
                   {"lambda_a", "-(3 + 6*phi)"},
                   {"u_a", "phi^2*x - phi"},
                   {"u_b", "phi^2*x + phi"}};
    p.discrepancies = {{"root", {Rational(1), Rational(2)}}, {"a", {Rational(3), Rational(6)}}};
    return p;
  }
  if (name == "fibonacci-conjugate") {
    Preset p = make(name, "Conjugate Fibonacci substitution a->baa, b->ba (forces the border)",
                    {{'a', "baa"}, {'b', "ba"}}, 1, 1, "quadratic:5");
    p.constants = {{"theta", "phi^2"}, {"Lambda_1", "phi^4"}};
    return p;
  }
  if (name == "thue-morse") {
    Preset p = make(name, "Thue-Morse substitution 0->01, 1->10", {{'0', "01"}, {'1', "10"}}, 1, 1, "rational");
    p.constants = {{"theta", "2"},
                   {"lambda_1", "-4"},
                   {"recursion", "lambda_{n+1} = 4*lambda_n - 2"},
                   {"multiplicity", "2^(n-1)"},
                   {"lambda_n", "-(2/3)*(7*4^(n-1) - 1)"},
                   {"weyl", "(1/2)sqrt(6x/7 + 10/7) <= N(x) <= sqrt(6x/7 + 4/7)"}};
    return p;
  }
  if (name == "dyadic-odometer") {
    Preset p = make(name, "Dyadic Cantor set: one vertex, two parallel loops", {{'a', "aa"}}, 1, 1, "rational");
    p.constants = {{"theta", "2"}, {"Lambda_1", "4"}};
    return p;
  }
  if (name == "penrose") {
    Preset p = make_matrix(name, "Penrose tiling, symmetry group D10", {{2, 1}, {1, 1}}, 2, 20, "approx:200");
    p.constants = {{"theta", "phi^2"}, {"Lambda_2", "phi^2"}, {"lambda_root", penrose_root_text(20)}};
    return p;
  }
  if (name == "ammann-a2") {
    Preset p = make_matrix(name, "Ammann-A2 tiling, symmetry group C2 x C2", {{2, 1}, {1, 1}}, 2, 4, "approx:200");
    p.constants = {{"theta", "phi^2"}, {"Lambda_2", "phi^2"}, {"lambda_root", penrose_root_text(4)}};
    return p;
  }
  fail(ErrorCode::invalid_argument, "unknown preset '" + name + "'");
}

Preset parse_matrix_json(const std::string& text, const std::string& name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("matrix file: ") + e.what());
  }
  try {
    Preset p;
    p.name = name;
    p.description = "matrix file";
    p.backend = j.value("backend", std::string("approx:200"));
    p.matrix = j.at("matrix").get<IntMatrix>();
    validate_matrix(p.matrix);
    const std::size_t r = p.matrix.size();
    if (j.contains("letters")) {
      p.letters = j.at("letters").get<std::vector<std::string>>();
      if (p.letters.size() != r) fail(ErrorCode::parse, "letters and matrix sizes differ");
    } else {
      for (std::size_t i = 0; i < r; ++i) p.letters.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    p.dimension = j.value("dimension", 1);
    p.symmetry_order = j.value("symmetry_order", 1);
    if (j.contains("images")) {
      std::map<std::string, int> index;
      for (std::size_t i = 0; i < r; ++i) index[p.letters[i]] = static_cast<int>(i);
      SubstitutionRule rule;
      rule.alphabet = p.letters;
      rule.dimension = p.dimension;
      rule.images.resize(r);
      const auto& images = j.at("images");
      for (std::size_t q = 0; q < r; ++q) {
        if (!images.contains(p.letters[q])) fail(ErrorCode::parse, "missing image for letter " + p.letters[q]);
        for (const auto& letter : images.at(p.letters[q]).get<std::vector<std::string>>()) {
          auto it = index.find(letter);
          if (it == index.end()) fail(ErrorCode::parse, "unknown letter '" + letter + "' in images");
          rule.images[q].push_back(it->second);
        }
      }
      if (abelianize(rule) != p.matrix) fail(ErrorCode::parse, "images do not abelianize to the matrix");
      p.rule = std::move(rule);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("matrix file: ") + e.what());
  }
}

Preset load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_json(buffer.str(), path);
}

Scalar penrose_root_formula(int g, const Backend& backend) {
  Scalar gs = Scalar::from_integer(backend, g);
  Scalar num = Scalar::from_integer(backend, -2 * g) * (gs + Scalar::from_integer(backend, 1) -
                                                         Scalar::from_integer(backend, 4) * phi_squared_value(backend));
  return num / Scalar::from_integer(backend, static_cast<long>(g) * g - 10L * g + 5);
}

std::pair<double, double> thue_morse_weyl_bounds(double x) {
  return {0.5 * std::sqrt(6.0 * x / 7.0 + 10.0 / 7.0), std::sqrt(6.0 * x / 7.0 + 4.0 / 7.0)};
}

std::vector<DiscrepancyCheck> check_discrepancies(const Preset& preset, const LaplacianModel& model) {
  std::vector<DiscrepancyCheck> out;
  if (preset.discrepancies.empty() || std::abs(model.s() - preset.dimension) > 1e-12) return out;
  const auto& diagram = model.diagram();
  const Backend& backend = model.backend();
  PathTable first = enumerate_paths(diagram, 1);
  for (const auto& k : preset.discrepancies) {
    Scalar computed;
    if (k.quantity == "root") {
      computed = model.root_eigenvalue();
    } else {
      bool found = false;
      for (const auto& p : first.paths)
        if (path_id(diagram, p) == k.quantity) {
          computed = model.eigenvalue(p);
          found = true;
        }
      if (!found) fail(ErrorCode::invalid_argument, "no generation-1 path " + k.quantity);
    }
    DiscrepancyCheck c{k.quantity, computed.abs(), k.printed};
    Scalar printed = k.printed.value(backend);
    Scalar flipped = k.printed.flip_constant().value(backend);
    if (backend.exact()) {
      c.matches_printed = c.computed_magnitude == printed;
      c.matches_flipped = c.computed_magnitude == flipped;
    } else {
      c.matches_printed = close_relative_double(c.computed_magnitude.to_double(), printed.to_double());
      c.matches_flipped = close_relative_double(c.computed_magnitude.to_double(), flipped.to_double());
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::string> discrepancy_notes(const std::vector<DiscrepancyCheck>& checks) {
  std::vector<std::string> notes;
  for (const auto& c : checks) {
    std::string line = "eigenvalue " + c.quantity + ": reference magnitude " + c.printed.to_string() +
                       ", computed magnitude " + c.computed_magnitude.exact_string() + " (" +
                       format_double(c.computed_magnitude.to_double()) + ")";
    if (c.matches_printed)
      line += "; matches the reference value";
    else if (c.matches_flipped)
      line += "; equals the reference value with the sign of its constant term flipped (" +
              c.printed.flip_constant().to_string() + "); the reference constant is treated as a sign typo";
    else
      line += "; does not match the reference value under the sign-typo correction either";
    notes.push_back(std::move(line));
  }
  return notes;
}

}  // namespace bratspec
