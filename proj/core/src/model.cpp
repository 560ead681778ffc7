#include "gco/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "gco/errors.hpp"

namespace gco {

using cones::BlockKind;
using cones::ConeBlock;

double ConicProblem::apply_A_row(int i, const ConeVec& x) const {
  if (static_cast<int>(x.v.size()) != cone.dim) throw DimensionMismatch("apply_A: bad x");
  double r = 0.0;
  for (const auto& e : rows[i]) {
    const ConeBlock& blk = cone.blocks[e.block];
    if (e.rank_one) {
      // sign * <X a, a>
      const int n = blk.n;
      double acc = 0.0;
      for (int row = 0; row < n; ++row) {
        double w = 0.0;
        const double* xr = x.v.data() + blk.offset + static_cast<size_t>(row) * n;
        for (int col = 0; col < n; ++col) w += xr[col] * e.data[col];
        acc += w * e.data[row];
      }
      r += e.sign * acc;
    } else {
      const double* xd = x.v.data() + blk.offset;
      for (int k = 0; k < blk.size; ++k) r += e.data[k] * xd[k];
    }
  }
  return r;
}

Vec ConicProblem::apply_A(const ConeVec& x) const {
  Vec out(m, 0.0);
  for (int i = 0; i < m; ++i) out[i] = apply_A_row(i, x);
  return out;
}

ConeVec ConicProblem::apply_A_adjoint(const Vec& y) const {
  if (static_cast<int>(y.size()) != m) throw DimensionMismatch("apply_A_adjoint: bad y");
  ConeVec out(cone.dim);
  for (int i = 0; i < m; ++i) {
    const double yi = y[i];
    if (yi == 0.0) continue;
    for (const auto& e : rows[i]) {
      const ConeBlock& blk = cone.blocks[e.block];
      double* od = out.v.data() + blk.offset;
      if (e.rank_one) {
        const int n = blk.n;
        const double coef = yi * e.sign;
        for (int r = 0; r < n; ++r) {
          const double ar = coef * e.data[r];
          for (int c2 = 0; c2 < n; ++c2) od[static_cast<size_t>(r) * n + c2] += ar * e.data[c2];
        }
      } else {
        for (int k = 0; k < blk.size; ++k) od[k] += yi * e.data[k];
      }
    }
  }
  return out;
}

ConeVec ConicProblem::dual_slack(const Vec& y) const {
  ConeVec s = apply_A_adjoint(y);
  for (int k = 0; k < cone.dim; ++k) s.v[k] = c.v[k] - s.v[k];
  return s;
}

double ConicProblem::duality_gap(const ConeVec& x, const Vec& y) const {
  return cones::dot(c, x) - linalg::dot(b, y);
}

ConeVec ConicProblem::densify_row(int i) const {
  ConeVec out(cone.dim);
  for (const auto& e : rows[i]) {
    const ConeBlock& blk = cone.blocks[e.block];
    double* od = out.v.data() + blk.offset;
    if (e.rank_one) {
      const int n = blk.n;
      for (int r = 0; r < n; ++r)
        for (int c2 = 0; c2 < n; ++c2)
          od[static_cast<size_t>(r) * n + c2] += e.sign * e.data[r] * e.data[c2];
    } else {
      for (int k = 0; k < blk.size; ++k) od[k] += e.data[k];
    }
  }
  return out;
}

void ConicProblem::validate() const {
  if (cone.blocks.empty()) throw ValidationError("problem has no cone blocks");
  if (m < 1) throw ValidationError("problem needs m >= 1 constraints");
  if (static_cast<int>(rows.size()) != m) throw ValidationError("row count does not match m");
  if (static_cast<int>(b.size()) != m) throw ValidationError("b length does not match m");
  if (static_cast<int>(c.v.size()) != cone.dim) throw ValidationError("c does not match the cone");
  bool b_nonzero = false;
  for (double v : b) b_nonzero = b_nonzero || v != 0.0;
  if (!b_nonzero) throw ValidationError("b must be nonzero");
  if (y_start && static_cast<int>(y_start->size()) != m)
    throw ValidationError("y0 length does not match m");
  for (int i = 0; i < m; ++i) {
    std::vector<char> seen(cone.blocks.size(), 0);
    for (const auto& e : rows[i]) {
      if (e.block < 0 || e.block >= static_cast<int>(cone.blocks.size()))
        throw ValidationError("constraint element references a missing block");
      if (seen[e.block]) throw ValidationError("duplicate block entry in a constraint row");
      seen[e.block] = 1;
      const ConeBlock& blk = cone.blocks[e.block];
      if (e.rank_one) {
        if (blk.kind != BlockKind::Psd)
          throw ValidationError("rank-one entries are only valid on sdp blocks");
        if (static_cast<int>(e.data.size()) != blk.n)
          throw ValidationError("rank-one vector length does not match the block");
        if (e.sign != 1.0 && e.sign != -1.0)
          throw ValidationError("rank-one sign must be +1 or -1");
      } else if (static_cast<int>(e.data.size()) != blk.size) {
        throw ValidationError("dense entry size does not match the block");
      }
    }
  }
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

struct Tokens {
  std::vector<std::string> t;
  int line;
};

double parse_real(const std::string& s, int line) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(line, "expected a real number, got '" + s + "'");
  return v;
}

long parse_int(const std::string& s, int line) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

// Expands a row-major upper triangle into a full dense symmetric block.
Vec expand_upper(const std::vector<double>& tri, int n) {
  Vec full(static_cast<size_t>(n) * n, 0.0);
  size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      full[static_cast<size_t>(i) * n + j] = tri[k];
      full[static_cast<size_t>(j) * n + i] = tri[k];
      ++k;
    }
  return full;
}

std::vector<double> compress_upper(const Vec& full, int n) {
  std::vector<double> tri;
  tri.reserve(static_cast<size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) tri.push_back(full[static_cast<size_t>(i) * n + j]);
  return tri;
}

int block_value_count(const ConeBlock& b) {
  return b.kind == BlockKind::Psd ? b.n * (b.n + 1) / 2 : b.n;
}

}  // namespace

ConicProblem read_problem(std::istream& in) {
  ConicProblem p;
  bool have_cones = false, have_m = false, have_b = false;
  std::vector<char> have_c;

  std::string raw;
  int lineno = 0;
  std::vector<Tokens> pending;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Tokens tk{{}, lineno};
    std::string w;
    while (ls >> w) tk.t.push_back(w);
    if (tk.t.empty()) continue;
    pending.push_back(std::move(tk));
  }

  for (const auto& tk : pending) {
    const auto& t = tk.t;
    const int ln = tk.line;
    const std::string& dir = t[0];
    if (dir == "cones") {
      if (have_cones) throw ParseError(ln, "duplicate cones directive");
      std::vector<std::pair<BlockKind, int>> defs;
      size_t i = 1;
      while (i < t.size()) {
        BlockKind kind;
        if (t[i] == "lp")
          kind = BlockKind::Orthant;
        else if (t[i] == "soc")
          kind = BlockKind::Lorentz;
        else if (t[i] == "sdp")
          kind = BlockKind::Psd;
        else
          throw ParseError(ln, "unknown cone block '" + t[i] + "'");
        if (i + 1 >= t.size()) throw ParseError(ln, "cone block is missing its dimension");
        const long n = parse_int(t[i + 1], ln);
        if (n < 1) throw ParseError(ln, "cone block dimension must be positive");
        defs.emplace_back(kind, static_cast<int>(n));
        i += 2;
      }
      if (defs.empty()) throw ParseError(ln, "cones directive lists no blocks");
      p.cone = ConeSpec::make(defs);
      p.c = ConeVec(p.cone.dim);
      have_c.assign(p.cone.blocks.size(), 0);
      have_cones = true;
    } else if (dir == "m") {
      if (have_m) throw ParseError(ln, "duplicate m directive");
      if (t.size() != 2) throw ParseError(ln, "m directive takes one integer");
      const long m = parse_int(t[1], ln);
      if (m < 1) throw ParseError(ln, "m must be positive");
      p.m = static_cast<int>(m);
      p.rows.assign(p.m, {});
      have_m = true;
    } else if (dir == "c") {
      if (!have_cones) throw ParseError(ln, "c before cones directive");
      if (t.size() < 3 || t[2] != "dense") throw ParseError(ln, "expected: c <block> dense v...");
      const long blk1 = parse_int(t[1], ln);
      if (blk1 < 1 || blk1 > static_cast<long>(p.cone.blocks.size()))
        throw ParseError(ln, "c block index out of range");
      const ConeBlock& blk = p.cone.blocks[blk1 - 1];
      const int want = block_value_count(blk);
      if (static_cast<int>(t.size()) - 3 != want)
        throw ParseError(ln, "c block expects " + std::to_string(want) + " values");
      std::vector<double> vals;
      for (size_t i = 3; i < t.size(); ++i) vals.push_back(parse_real(t[i], ln));
      if (have_c[blk1 - 1]) throw ParseError(ln, "duplicate c line for a block");
      have_c[blk1 - 1] = 1;
      Vec full = blk.kind == BlockKind::Psd ? expand_upper(vals, blk.n) : Vec(vals);
      std::copy(full.begin(), full.end(), p.c.v.begin() + blk.offset);
    } else if (dir == "b") {
      if (!have_m) throw ParseError(ln, "b before m directive");
      if (have_b) throw ParseError(ln, "duplicate b directive");
      if (static_cast<int>(t.size()) - 1 != p.m)
        throw ParseError(ln, "b expects " + std::to_string(p.m) + " values");
      for (size_t i = 1; i < t.size(); ++i) p.b.push_back(parse_real(t[i], ln));
      have_b = true;
    } else if (dir == "a") {
      if (!have_cones || !have_m) throw ParseError(ln, "a before cones/m directives");
      if (t.size() < 4) throw ParseError(ln, "expected: a <row> <block> dense|rankone ...");
      const long row1 = parse_int(t[1], ln);
      const long blk1 = parse_int(t[2], ln);
      if (row1 < 1 || row1 > p.m) throw ParseError(ln, "a row index out of range");
      if (blk1 < 1 || blk1 > static_cast<long>(p.cone.blocks.size()))
        throw ParseError(ln, "a block index out of range");
      const ConeBlock& blk = p.cone.blocks[blk1 - 1];
      ConstraintElement e;
      e.block = static_cast<int>(blk1 - 1);
      if (t[3] == "dense") {
        const int want = block_value_count(blk);
        if (static_cast<int>(t.size()) - 4 != want)
          throw ParseError(ln, "dense entry expects " + std::to_string(want) + " values");
        std::vector<double> vals;
        for (size_t i = 4; i < t.size(); ++i) vals.push_back(parse_real(t[i], ln));
        e.data = blk.kind == BlockKind::Psd ? expand_upper(vals, blk.n) : Vec(vals);
      } else if (t[3] == "rankone") {
        if (blk.kind != BlockKind::Psd) throw ParseError(ln, "rankone is only valid on sdp blocks");
        if (t.size() < 5) throw ParseError(ln, "rankone entry is missing its sign");
        if (t[4] == "+1")
          e.sign = 1.0;
        else if (t[4] == "-1")
          e.sign = -1.0;
        else
          throw ParseError(ln, "rankone sign must be +1 or -1");
        e.rank_one = true;
        if (static_cast<int>(t.size()) - 5 != blk.n)
          throw ParseError(ln, "rankone entry expects " + std::to_string(blk.n) + " values");
        for (size_t i = 5; i < t.size(); ++i) e.data.push_back(parse_real(t[i], ln));
      } else {
        throw ParseError(ln, "unknown entry encoding '" + t[3] + "'");
      }
      p.rows[row1 - 1].push_back(std::move(e));
    } else if (dir == "y0") {
      if (!have_m) throw ParseError(ln, "y0 before m directive");
      if (p.y_start) throw ParseError(ln, "duplicate y0 directive");
      if (static_cast<int>(t.size()) - 1 != p.m)
        throw ParseError(ln, "y0 expects " + std::to_string(p.m) + " values");
      Vec y;
      for (size_t i = 1; i < t.size(); ++i) y.push_back(parse_real(t[i], ln));
      p.y_start = std::move(y);
    } else {
      throw ParseError(ln, "unknown directive '" + dir + "'");
    }
  }

  if (!have_cones) throw ValidationError("missing cones directive");
  if (!have_m) throw ValidationError("missing m directive");
  if (!have_b) throw ValidationError("missing b directive");
  for (size_t i = 0; i < have_c.size(); ++i)
    if (!have_c[i]) throw ValidationError("missing c line for block " + std::to_string(i + 1));
  p.validate();
  return p;
}

ConicProblem read_problem_string(const std::string& text) {
  std::istringstream in(text);
  return read_problem(in);
}

ConicProblem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file: " + path);
  return read_problem(in);
}

std::string write_problem(const ConicProblem& p) {
  std::ostringstream out;
  out << "cones";
  for (const auto& b : p.cone.blocks) {
    switch (b.kind) {
      case BlockKind::Orthant: out << " lp " << b.n; break;
      case BlockKind::Lorentz: out << " soc " << b.n; break;
      case BlockKind::Psd: out << " sdp " << b.n; break;
    }
  }
  out << "\n";
  out << "m " << p.m << "\n";
  for (size_t bi = 0; bi < p.cone.blocks.size(); ++bi) {
    const ConeBlock& blk = p.cone.blocks[bi];
    out << "c " << bi + 1 << " dense";
    Vec blockvals(p.c.v.begin() + blk.offset, p.c.v.begin() + blk.offset + blk.size);
    if (blk.kind == BlockKind::Psd) {
      for (double v : compress_upper(blockvals, blk.n)) out << " " << format_double(v);
    } else {
      for (double v : blockvals) out << " " << format_double(v);
    }
    out << "\n";
  }
  out << "b";
  for (double v : p.b) out << " " << format_double(v);
  out << "\n";
  for (int i = 0; i < p.m; ++i) {
    for (const auto& e : p.rows[i]) {
      const ConeBlock& blk = p.cone.blocks[e.block];
      out << "a " << i + 1 << " " << e.block + 1;
      if (e.rank_one) {
        out << " rankone " << (e.sign > 0 ? "+1" : "-1");
        for (double v : e.data) out << " " << format_double(v);
      } else {
        out << " dense";
        if (blk.kind == BlockKind::Psd) {
          for (double v : compress_upper(e.data, blk.n)) out << " " << format_double(v);
        } else {
          for (double v : e.data) out << " " << format_double(v);
        }
      }
      out << "\n";
    }
  }
  if (p.y_start) {
    out << "y0";
    for (double v : *p.y_start) out << " " << format_double(v);
    out << "\n";
  }
  return out.str();
}

std::optional<LrqiStructure> detect_lrqi(const ConicProblem& p) {
  if (p.cone.blocks.size() != 2) return std::nullopt;
  const auto& b0 = p.cone.blocks[0];
  const auto& b1 = p.cone.blocks[1];
  if (b0.kind != BlockKind::Psd || b1.kind != BlockKind::Psd || b0.n != b1.n) return std::nullopt;
  const int n = b0.n;
  // c must be the identity on both blocks
  for (const auto& blk : p.cone.blocks)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.c.v[blk.offset + static_cast<size_t>(i) * n + j] != (i == j ? 1.0 : 0.0))
          return std::nullopt;
  LrqiStructure st;
  st.m = p.m;
  st.n = n;
  for (int i = 0; i < p.m; ++i) {
    if (p.rows[i].size() != 2) return std::nullopt;
    const ConstraintElement* plus = nullptr;
    const ConstraintElement* minus = nullptr;
    for (const auto& e : p.rows[i]) {
      if (!e.rank_one) return std::nullopt;
      if (e.block == 0 && e.sign == 1.0) plus = &e;
      if (e.block == 1 && e.sign == -1.0) minus = &e;
    }
    if (!plus || !minus || plus->data != minus->data) return std::nullopt;
    st.a.push_back(plus->data);
  }
  return st;
}

}  // namespace gco
