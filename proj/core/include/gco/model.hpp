#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gco/cones.hpp"

namespace gco {

using cones::ConeSpec;
using cones::ConeVec;
using linalg::Vec;

/// One entry of a constraint row, attached to a cone block.
/// rank_one (Psd blocks only) encodes sign * a a^T without storing the matrix.
struct ConstraintElement {
  int block = 0;
  bool rank_one = false;
  double sign = 1.0;  // rank-one coefficient, +1 or -1
  Vec data;           // dense: flat block data; rank-one: the vector a
};

struct ConicProblem {
  ConeSpec cone;
  int m = 0;
  std::vector<std::vector<ConstraintElement>> rows;
  Vec b;
  ConeVec c;
  std::optional<Vec> y_start;

  Vec apply_A(const ConeVec& x) const;
  double apply_A_row(int i, const ConeVec& x) const;
  ConeVec apply_A_adjoint(const Vec& y) const;
  /// s = c - A* y
  ConeVec dual_slack(const Vec& y) const;
  /// <c,x> - <b,y>
  double duality_gap(const ConeVec& x, const Vec& y) const;

  /// Full dense ConeVec of row i (rank-one entries densified).
  ConeVec densify_row(int i) const;

  void validate() const;  // throws ValidationError
};

ConicProblem read_problem(std::istream& in);
ConicProblem read_problem_string(const std::string& text);
ConicProblem read_problem_file(const std::string& path);
std::string write_problem(const ConicProblem& p);

/// Shortest round-trip decimal formatting used by all file formats.
std::string format_double(double v);

/// Detected structure of an interpolation instance: cone Psd(n) x Psd(n),
/// c = (I, I), row i = (+a_i a_i^T, -a_i a_i^T).  Enables the short dual
/// barrier with Gram matrix G = A A^T.
struct LrqiStructure {
  int m = 0;
  int n = 0;
  std::vector<Vec> a;
};

std::optional<LrqiStructure> detect_lrqi(const ConicProblem& p);

}  // namespace gco
