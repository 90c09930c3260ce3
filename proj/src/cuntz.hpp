#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "laplacian.hpp"

namespace bratspec {

// U_e: (eps, e1, ...) -> (eps', e, e1, ...) when adjacency[e][e1] = 1, where
// eps' is the root edge to s(e) in the slot of eps. Needs length >= 2.
std::optional<Path> path_shift_down(const BratteliDiagram& diagram, int edge, const Path& path,
                                    const IntMatrix* adjacency = nullptr);
// U_e*: (eps, e, e2, ...) -> (eps', e2, ...). Needs length >= 3.
std::optional<Path> path_shift_up(const BratteliDiagram& diagram, int edge, const Path& path);
// U_e extended to generation-1 paths: defined iff r(e) is the end of the root edge.
std::optional<Path> prepend_edge(const BratteliDiagram& diagram, int edge, const Path& path);

struct CkReport {
  bool passed = true;
  int depth = 0;
  std::size_t paths_checked = 0;
  std::string witness;
};

// Checks U_e* U_e = sum_f a~_{ef} U_f U_f* and the projection identities on
// every path of length 3..depth. `adjacency` replaces the composability matrix.
CkReport ck_relations_check(const BratteliDiagram& diagram, int depth, const IntMatrix* adjacency = nullptr);

struct AffineMapTable {
  Scalar lambda;
  std::vector<Scalar> beta;  // per edge model
  std::size_t calibration_checks = 0;

  Scalar apply(int edge, const Scalar& x) const { return lambda * x + beta[edge]; }
};

int epsilon_prime(const BratteliDiagram& diagram, int edge, int slot);

// Builds u_e(x) = Lambda x + beta_e and checks it against direct eigenvalues
// on all paths up to length 3; throws on any disagreement.
AffineMapTable affine_table(const LaplacianModel& model);

// Generation-1 path records (the seeds of the recursion).
std::vector<SpectralRecord> seed_records(const LaplacianModel& model);

struct CompanionData;

struct RecursionOptions {
  const CompanionData* companion = nullptr;
  std::vector<std::vector<Rational>> beta_coords;  // per edge, needed with companion
  std::size_t cap = kDefaultPathCap;
};

// Zero, root and seed records plus every splitting path up to max_length,
// obtained by applying the affine maps; same order as full_spectrum.
// With max_length <= 1 the seeds come back unchanged.
std::vector<SpectralRecord> recursive_spectrum(const LaplacianModel& model, const AffineMapTable& table,
                                               const std::vector<SpectralRecord>& seeds, int max_length,
                                               const RecursionOptions& options = {});

bool close_relative(const Scalar& x, const Scalar& y, double tolerance);

}  // namespace bratspec
