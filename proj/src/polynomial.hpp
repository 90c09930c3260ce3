#pragma once

#include <string>
#include <vector>

#include "scalar.hpp"

namespace bratspec {

using IntMatrix = std::vector<std::vector<long>>;

// Coefficients from the constant term upward.
using IntPolynomial = std::vector<Integer>;

IntPolynomial characteristic_polynomial(const IntMatrix& a);
// Remainder of f modulo a monic g; empty when g divides f.
IntPolynomial remainder_monic(const IntPolynomial& f, const IntPolynomial& g);
IntPolynomial multiply(const IntPolynomial& f, const IntPolynomial& g);
int degree(const IntPolynomial& f);
std::string to_string(const IntPolynomial& f, const std::string& var = "x");

// Monic irreducible factor of the characteristic polynomial vanishing at
// the spectral radius; found by grouping numeric roots, confirmed by exact division.
IntPolynomial perron_minimal_polynomial(const IntMatrix& a);

// Largest real eigenvalue in double precision, with its positive eigenvector.
double perron_estimate(const IntMatrix& a, std::vector<double>* vector = nullptr, bool transpose = false);

}  // namespace bratspec
