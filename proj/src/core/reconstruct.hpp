// Copyright 2026 The qswiso Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Recovery of the tilted characteristic polynomial from cumulants of the
// dominant branch, and of the spectrum from its roots.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "counting.hpp"
#include "precision.hpp"
#include "spectral.hpp"

namespace qswiso {

// P(nu, chi) = sum_i (q_i + (e^chi - 1) q_i') nu^i.
template <class T>
struct CharPolyPair {
  std::vector<T> q;       // q_0..q_degree
  std::vector<T> qprime;  // q_0'..q_degree'

  int degree() const noexcept { return static_cast<int>(q.size()) - 1; }
  std::vector<double> q_double() const;
  std::vector<double> qprime_double() const;
};

template <class T>
CharPolyPair<T> char_poly_pair(const SplitCharPoly<T>& split);

enum class Unknown { q, qprime };

struct ColumnLabel {
  Unknown kind;
  int index;
  std::string name() const;
};

template <class T>
struct LinearSystem {
  int degree = 0;  // degree of the polynomial whose coefficients are sought
  DenseMatrix<T> matrix;
  std::vector<T> rhs;
  std::vector<ColumnLabel> columns;
  int first_row = 1;  // derivative order of row 0

  std::size_t size() const noexcept { return rhs.size(); }
};

// Coefficients on q_i and q_i' of the l-th chi-derivative of the monomial
// term at chi = 0. cumulants[k-1] = c_k, at least l entries.
template <class T>
std::pair<T, T> monomial_derivative(int l, int i, const std::vector<T>& cumulants);

// Square system in 2(degree - 1) unknowns from rows l = 1..2(degree - 1).
template <class T>
LinearSystem<T> assemble_system(const std::vector<T>& cumulants, int degree);

// The full system for an n-vertex graph (degree n^2).
template <class T>
LinearSystem<T> assemble_system(const CumulantSet<T>& cumulants, int n);

// Rows l = first..last for a fixed degree; used to test consistency of a
// candidate solution beyond the square block.
template <class T>
LinearSystem<T> assemble_rows(const std::vector<T>& cumulants, int degree, int first, int last);

template <class T>
struct SolveReport {
  CharPolyPair<T> pair;
  double residual = 0.0;   // ||A x - b|| / ||b||
  double condition = 0.0;  // 2-norm condition after column equilibration
};

// Default limit: condition * unit roundoff must stay below 1e-6.
template <class T>
double default_condition_limit();

template <class T>
SolveReport<T> solve_coefficients(const LinearSystem<T>& sys,
                                  std::optional<double> condition_limit = std::nullopt);

// Condition number alone (equilibrated, Jacobi SVD); never throws on singularity.
template <class T>
double system_condition(const LinearSystem<T>& sys);

// Roots of the monic polynomial with ascending coefficients q.
Spectrum spectrum_from_coeffs(const std::vector<double>& q);

template <class T>
Spectrum spectrum_from_coeffs(const std::vector<T>& q);

enum class CumulantSource { forward, contour };
enum class Precision { extended, deep };

std::string to_string(CumulantSource s);
std::string to_string(Precision p);

struct ReconstructionOptions {
  CumulantSource source = CumulantSource::forward;
  Precision precision = Precision::deep;
  int order = 0;  // 0 selects 2(n^2 - 1)
  ContourOptions contour{};
  // When the full system is singular, recover the chi-dependent factor
  // instead of failing. Its roots are a subset of the spectrum.
  bool visible_fallback = false;
};

struct ReconstructionResult {
  std::vector<double> q;
  std::vector<double> qprime;
  double residual = 0.0;
  double condition = 0.0;
  Spectrum spectrum;
  Spectrum direct;  // eigenvalues of the chi = 0 generator with the aux edge
  double delta = 0.0;  // spectral distance; for a partial result, max distance to the nearest direct eigenvalue
  std::vector<double> cumulants;
  int degree = 0;        // degree of the recovered polynomial
  bool partial = false;  // true when only the visible factor was recovered
};

// Full pipeline. Errors carry the failing stage name as a prefix.
ReconstructionResult reconstruct_spectrum(const Graph& g, double omega, const AuxEdge& aux,
                                          const ReconstructionOptions& options = {});

// Largest factor of P that depends on chi and so is visible through the
// cumulants. P = R(nu) S(nu, chi) with R free of chi; returns S, found as the
// lowest degree whose square system is consistent with the remaining rows.
// noise is the relative accuracy of the cumulants when worse than roundoff.
template <class T>
struct VisibleFactor {
  int degree = 0;
  CharPolyPair<T> factor;
  double consistency = 0.0;  // relative residual on rows beyond the square block
  double condition = 0.0;
};

template <class T>
VisibleFactor<T> visible_factor(const std::vector<T>& cumulants, int max_degree,
                                std::optional<double> tol = std::nullopt, double noise = 0.0);

// Number of eigenvalues of the tilted generator that do not move with chi
// (roots shared by P0 and P1), counted with multiplicity. tol <= 0 picks
// sqrt(unit roundoff) of T; regular instances at small epsilon already have
// Sylvester singular values far below 1e-12.
template <class T>
int hidden_root_count(const SplitCharPoly<T>& split, double tol = 0.0);

}  // namespace qswiso
