#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cuntz.hpp"

namespace bratspec {

using LatticeVector = std::vector<Rational>;

// Multiplication by theta^(2/d) on Q[x]/(Q), Q(x) = P(x^(d/2)) for even d and
// P(x^d) (companion squared) for odd d, in the power basis of x.
struct CompanionData {
  int degree = 0;
  int dimension = 1;
  IntPolynomial minimal_polynomial;
  IntPolynomial q_polynomial;
  std::vector<std::vector<Rational>> c;
  std::vector<std::complex<double>> eigenvalues;
  bool pisot = false;
  bool hyperbolic = false;
  bool action_verified = false;
  bool action_exact = false;
  double stable_norm = 0;     // largest modulus below 1
  double p_inverse_norm = 1;  // spectral norm, unit eigenvector columns
  std::vector<std::vector<double>> unstable_basis;  // orthonormal columns, stored as rows

  double distance_to_unstable(const LatticeVector& x) const;
};

// perron (exact backend, d <= 2) enables the exact action check.
CompanionData companion_embedding(const IntPolynomial& minimal_polynomial, int d, const PerronData* perron = nullptr);

LatticeVector apply_companion(const CompanionData& data, const LatticeVector& x);

// Coordinates of an exact scalar in the basis (1, theta, ...), d in {1, 2}.
LatticeVector lattice_coords(const CompanionData& data, const PerronData& perron, const Scalar& value);
Scalar from_coords(const PerronData& perron, const LatticeVector& coords);

struct StripRow {
  Path path;
  int generation;
  double distance;
};

struct StripReport {
  int depth = 0;
  std::vector<StripRow> rows;
  std::vector<double> max_by_generation;
  double max_distance = 0;
  double bound = 0;
  double m = 0;
  double ratio = 0;
  bool within_bound = true;
};

StripReport strip_check(const CompanionData& data, const std::vector<SpectralRecord>& records,
                        const std::vector<LatticeVector>& beta_coords, const std::vector<LatticeVector>& seed_coords,
                        double s);

// Everything strip_check needs for one model: table, coordinates, records to max_length.
struct StripRun {
  CompanionData companion;
  AffineMapTable table;
  std::vector<LatticeVector> beta_coords;
  std::vector<LatticeVector> seed_coords;
  std::vector<SpectralRecord> records;
  StripReport report;
};

StripRun run_strip(const LaplacianModel& model, int max_length);

}  // namespace bratspec
