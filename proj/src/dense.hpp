#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "laplacian.hpp"

namespace bratspec {

inline constexpr std::size_t kDefaultDenseCap = 4096;
inline constexpr std::size_t kExactDenseCap = 1024;

// Matrix of the Laplacian on span{chi_gamma : gamma in Pi_n}; column j holds
// the coordinates of the image of chi_{basis[j]}.
struct DenseOperator {
  int generation = 0;
  double s = 0;
  PathTable basis;
  std::vector<double> numeric;  // row-major
  std::vector<Scalar> exact;    // row-major, empty unless built exactly

  std::size_t size() const { return basis.paths.size(); }
  double at(std::size_t i, std::size_t j) const { return numeric[i * size() + j]; }
  bool has_exact() const { return !exact.empty(); }
};

DenseOperator dense_restriction(const LaplacianModel& model, int n, std::size_t cap = kDefaultDenseCap,
                                bool build_exact = true);

// Sorted ascending. With use_symmetry, slot permutations split the matrix
// into a symmetric-sector block and a standard-sector block.
std::vector<double> dense_eigenvalues(const DenseOperator& op, const LaplacianModel& model, bool use_symmetry = true);

struct EigenGroup {
  double value;
  long multiplicity;
};

std::vector<EigenGroup> group_eigenvalues(const std::vector<double>& sorted, double gap);

struct VerifyOptions {
  double tolerance = 1e-8;
  double grouping_gap = 1e-6;
  std::size_t cap = kDefaultDenseCap;
  std::size_t exact_cap = kExactDenseCap;
  bool use_symmetry = true;
};

struct VerifyReport {
  int generation = 0;
  double s = 0;
  std::size_t dimension = 0;
  long total_multiplicity = 0;
  double max_deviation = 0;
  bool numeric_passed = false;
  bool exact_checked = false;
  bool exact_passed = false;
  bool passed = false;
  std::vector<EigenGroup> expected;
  std::vector<EigenGroup> found;
  std::vector<std::string> failures;
};

VerifyReport verify_spectrum(const LaplacianModel& model, int n, const VerifyOptions& options = {});

// Expanded into Pi_n coordinates (n > the eigenvector path length).
std::vector<Scalar> expand_eigenvector(const LaplacianModel& model, const EigenVectorSpec& spec, const PathTable& table);

}  // namespace bratspec
