// Copyright 2026 The ffec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ffec/curve.hpp"
#include "ffec/finitecurve.hpp"

namespace ffec {

/// 2x2 matrix over Z/N, entries in [0, N), row-major (a b; c d).
struct Mat2 {
  std::uint32_t a = 1, b = 0, c = 0, d = 1;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Arithmetic in GL_2(Z/N), or in its quotient by +-1 when `projective`.
/// Elements pack into one 64-bit key, so N is limited to 2^16.
class MatrixRing {
 public:
  explicit MatrixRing(std::uint32_t n, bool projective = false);

  std::uint32_t modulus() const { return n_; }
  bool projective() const { return projective_; }

  Mat2 make(long long a, long long b, long long c, long long d) const;
  Mat2 mul(const Mat2& x, const Mat2& y) const;
  /// Throws PreconditionError if det is not a unit.
  Mat2 inv(const Mat2& x) const;
  Mat2 commutator(const Mat2& x, const Mat2& y) const;  // x y x^-1 y^-1
  std::uint32_t det(const Mat2& x) const;
  std::uint32_t trace(const Mat2& x) const;
  /// Representative of x's class (+-x identified when projective).
  Mat2 canonical(const Mat2& x) const;

  std::uint64_t pack(const Mat2& x) const;
  Mat2 unpack(std::uint64_t key) const;

 private:
  std::uint32_t n_;
  bool projective_;
};

/// Explicit subgroup of GL_2(Z/N) (or its projective quotient).
class Subgroup {
 public:
  Subgroup(MatrixRing ring, std::unordered_set<std::uint64_t> elems) : ring_(ring), elems_(std::move(elems)) {}
  const MatrixRing& ring() const { return ring_; }
  std::uint64_t order() const { return elems_.size(); }
  bool contains(const Mat2& m) const { return elems_.count(ring_.pack(ring_.canonical(m))) != 0; }
  std::vector<Mat2> elements() const;

 private:
  MatrixRing ring_;
  std::unordered_set<std::uint64_t> elems_;
};

constexpr std::uint64_t kSubgroupCap = 10000000;

/// Closure of the generators under multiplication (breadth first from the
/// identity, multiplying by generators and their inverses). Throws
/// ResourceCapError once more than `cap` elements are reached.
Subgroup bfs_subgroup(const MatrixRing& ring, const std::vector<Mat2>& generators,
                      std::uint64_t cap = kSubgroupCap);

/// Smallest subgroup containing `seeds` and closed under conjugation by
/// `conjugators`.
Subgroup normal_closure(const MatrixRing& ring, const std::vector<Mat2>& seeds, const std::vector<Mat2>& conjugators,
                        std::uint64_t cap = kSubgroupCap);

/// ker(SL_2(Z/l^m) -> SL_2(Z/l^level)), enumerated.
std::vector<Mat2> congruence_kernel(std::uint32_t ell, int m, int level);

struct GammaSpec {
  std::uint64_t n = 0;
  std::uint64_t r = 0;        // r mod n
  std::uint64_t h_order = 0;  // order of r in (Z/n)^x
  std::uint64_t sl2_order = 0;
  std::uint64_t gamma_order = 0;
};

/// Orders of H_n = <r> and of Gamma_n = det^-1(H_n) in GL_2(Z/n).
GammaSpec gamma_spec(std::uint64_t r, std::uint64_t n);

/// Exact frequencies of (trace, det) classes, keyed by (t, d) mod l.
using CharpolyDistribution = std::map<std::pair<long, long>, mpq_class>;

/// (trace, det) distribution over Gamma_l, by enumeration. l <= 13.
CharpolyDistribution gamma_charpoly_distribution(std::uint64_t r, std::uint64_t ell);

using ClassCounts = std::map<std::pair<long, long>, long>;

struct SurveyReport {
  std::uint64_t ell = 0;
  int dmax = 0;
  std::uint64_t q = 0;
  long places = 0;          // good places sampled
  long det_violations = 0;  // observed dets outside H_l
  long matrix_checks = 0;   // places where the Frobenius matrix on E[l] was computed
  long matrix_failures = 0; // of those, det or trace disagreeing with (#k, a)
  ClassCounts observed;
  CharpolyDistribution expected;
  double tv = 0;              // total variation against Gamma_l
  double tv_det_matched = 0;  // same, comparing distributions conditioned on det
  bool subset = false;        // every observed class lies in Gamma_l's support
  bool coverage = false;      // every class of Gamma_l observed
  std::vector<std::pair<long, long>> missing;
};

constexpr double kTvThreshold = 0.15;
constexpr int kMaxSurveyDegree = 4;

/// Frobenius classes at all good places of degree <= dmax. Requires a
/// non-isotrivial curve, l prime to p, l <= 13, dmax <= 4.
SurveyReport frobenius_survey(const WeierstrassCurve& e, std::uint64_t ell, int dmax);

struct ContrastReport {
  GaloisTag two_division;
  bool abelian = false;
  long places = 0;
  long det_violations = 0;
  ClassCounts observed;
  std::size_t gamma_support = 0;
  bool strictly_smaller = false;
};

/// Symptoms of non-openness for an isotrivial curve.
ContrastReport isotriviality_contrast(const WeierstrassCurve& e, std::uint64_t ell, int dmax);

struct LemmaReport {
  bool holds = false;
  bool vacuous = false;
  std::uint64_t subgroup_order = 0;  // order of the generated subgroup
  std::uint64_t target_order = 0;    // size of the kernel that must be contained
};

/// [S_n, S_n] contains S_{2n+2} inside SL_2(Z/l^m), m = 2n+3 by default,
/// where S_k = ker(SL_2 -> SL_2 mod l^k).
LemmaReport check_commutator_lemma(std::uint32_t ell, int n, int m = 0);

/// <(1 l; 0 1), (1 0; l 1)> contains ker(SL_2(Z/l^m) -> SL_2(Z/l^2)).
LemmaReport check_unipotent_lemma(std::uint32_t ell, int m);

/// Is PSL_2(F_l) simple (normal closure of every nonidentity element is the
/// whole group)? l prime, l <= 13.
bool psl2_simplicity(std::uint32_t ell);

}  // namespace ffec
