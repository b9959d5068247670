#pragma once

// 01* matrices, zone classification, corners, divisions, contraction,
// deletions and (almost-)mixed minor search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twwchi/graph.hpp"

namespace twwchi {

/// Entry of a 01* matrix. The enumerator order is the contraction order 0 < 1 < *.
enum class Tri : std::uint8_t { Zero = 0, One = 1, Star = 2 };

inline char to_char(Tri t) { return t == Tri::Zero ? '0' : t == Tri::One ? '1' : '*'; }

class TriMatrix {
 public:
  TriMatrix() = default;
  TriMatrix(std::size_t rows, std::size_t cols, Tri fill = Tri::Zero)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Parses rows of characters from {0,1,*}, one row per line.
  static TriMatrix parse(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      lines.push_back(line);
    }
    if (lines.empty()) return {};
    TriMatrix m(lines.size(), lines[0].size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
      if (lines[r].size() != m.cols_) throw ParseError("matrix rows differ in length");
      for (std::size_t c = 0; c < m.cols_; ++c) {
        switch (lines[r][c]) {
          case '0': m.set(r, c, Tri::Zero); break;
          case '1': m.set(r, c, Tri::One); break;
          case '*': m.set(r, c, Tri::Star); break;
          default: throw ParseError(std::string("bad matrix character '") + lines[r][c] + "'");
        }
      }
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Tri at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Tri t) { data_[r * cols_ + c] = t; }

  TriMatrix transpose() const {
    TriMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if (at(r, c) != at(c, r)) return false;
    return true;
  }

  bool has_star() const {
    return std::find(data_.begin(), data_.end(), Tri::Star) != data_.end();
  }

  TriMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    TriMatrix s(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s.set(i, j, at(rs[i], cs[j]));
    return s;
  }

  std::string dump() const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out += to_char(at(r, c));
      out += '\n';
    }
    return out;
  }

  friend bool operator==(const TriMatrix&, const TriMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Tri> data_;
};

/// 1 on edges, 0 on non-edges, * on the diagonal.
inline TriMatrix adjacency_matrix(const OrderedGraph& g) {
  TriMatrix m(g.size(), g.size());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = 0; v < g.size(); ++v)
      m.set(u, v, u == v ? Tri::Star : g.adjacent(u, v) ? Tri::One : Tri::Zero);
  return m;
}

// ---------------------------------------------------------------------------
// Classification

enum class ZoneKind { Horizontal, Vertical, Constant, Mixed, None };

inline const char* to_string(ZoneKind k) {
  switch (k) {
    case ZoneKind::Horizontal: return "horizontal";
    case ZoneKind::Vertical: return "vertical";
    case ZoneKind::Constant: return "constant";
    case ZoneKind::Mixed: return "mixed";
    case ZoneKind::None: return "none";
  }
  return "?";
}

/// Classifies the zone rows [r.lo, r.hi) x cols [c.lo, c.hi).
///
/// A matrix is horizontal when all rows are constant, vertical when all
/// columns are constant, and mixed when it is neither, or when it has at
/// least two rows and two columns and contains a *. By exhaustion a non-mixed
/// matrix is horizontal or vertical, so `None` is never produced; it stays in
/// the enum for callers that want to signal an unclassified zone.
inline ZoneKind classify_zone(const TriMatrix& m, Interval r, Interval c) {
  if (r.size() == 0 || c.size() == 0) throw std::invalid_argument("cannot classify an empty matrix");
  bool horizontal = true, vertical = true, star = false;
  for (auto i = r.lo; i < r.hi; ++i)
    for (auto j = c.lo; j < c.hi; ++j) {
      const Tri t = m.at(i, j);
      star = star || t == Tri::Star;
      horizontal = horizontal && t == m.at(i, c.lo);
      vertical = vertical && t == m.at(r.lo, j);
    }
  if ((!horizontal && !vertical) || (star && r.size() >= 2 && c.size() >= 2)) return ZoneKind::Mixed;
  if (horizontal && vertical) return ZoneKind::Constant;
  if (horizontal) return ZoneKind::Horizontal;
  if (vertical) return ZoneKind::Vertical;
  return ZoneKind::None;
}

inline ZoneKind classify(const TriMatrix& m) {
  return classify_zone(m, {0, m.rows()}, {0, m.cols()});
}

inline bool zone_mixed(const TriMatrix& m, Interval r, Interval c) {
  return classify_zone(m, r, c) == ZoneKind::Mixed;
}

/// A 1xk or kx1 matrix containing a * is vertical (resp. horizontal) by the
/// letter of the definition; callers may want to flag these.
inline bool is_thin_star(const TriMatrix& m) {
  return (m.rows() == 1 || m.cols() == 1) && m.has_star();
}

// ---------------------------------------------------------------------------
// Corners

struct Corner {
  std::size_t r1 = 0, r2 = 0, c1 = 0, c2 = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
};

inline bool is_corner(const TriMatrix& m, const Corner& k) {
  if (!(k.r1 < k.r2 && k.c1 < k.c2)) return false;
  return classify(m.submatrix({k.r1, k.r2}, {k.c1, k.c2})) == ZoneKind::Mixed;
}

namespace detail {
inline Corner make_corner(std::size_t ra, std::size_t rb, std::size_t ca, std::size_t cb) {
  return {std::min(ra, rb), std::max(ra, rb), std::min(ca, cb), std::max(ca, cb)};
}

// Non-constant row r in [rows x cols], non-constant column c' in
// [rows2 x cols2]; then c in cols with m(r,c) != m(r,c') and r' in rows2 with
// m(r',c') != m(r,c').
inline std::optional<Corner> corner_from_rows_cols(const TriMatrix& m, Interval rows, Interval cols,
                                                   Interval rows2, Interval cols2) {
  std::optional<std::size_t> r, c2;
  for (auto i = rows.lo; i < rows.hi && !r; ++i)
    for (auto j = cols.lo + 1; j < cols.hi; ++j)
      if (m.at(i, j) != m.at(i, cols.lo)) {
        r = i;
        break;
      }
  for (auto j = cols2.lo; j < cols2.hi && !c2; ++j)
    for (auto i = rows2.lo + 1; i < rows2.hi; ++i)
      if (m.at(i, j) != m.at(rows2.lo, j)) {
        c2 = j;
        break;
      }
  if (!r || !c2) return std::nullopt;
  const Tri e = m.at(*r, *c2);
  std::optional<std::size_t> c, r2;
  for (auto j = cols.lo; j < cols.hi; ++j)
    if (m.at(*r, j) != e) {
      c = j;
      break;
    }
  for (auto i = rows2.lo; i < rows2.hi; ++i)
    if (m.at(i, *c2) != e) {
      r2 = i;
      break;
    }
  if (!c || !r2) return std::nullopt;
  return make_corner(*r, *r2, *c, *c2);
}
}  // namespace detail

/// Returns a corner iff the matrix is mixed.
inline std::optional<Corner> find_corner(const TriMatrix& m) {
  if (m.empty() || classify(m) != ZoneKind::Mixed) return std::nullopt;
  if (m.rows() >= 2 && m.cols() >= 2) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j) == Tri::Star)
          return detail::make_corner(i, i == 0 ? 1 : 0, j, j == 0 ? 1 : 0);
  }
  const Interval all_r{0, m.rows()}, all_c{0, m.cols()};
  auto k = detail::corner_from_rows_cols(m, all_r, all_c, all_r, all_c);
  if (!k || !is_corner(m, *k)) throw VerificationFailure("corner construction failed on a mixed matrix");
  return k;
}

// ---------------------------------------------------------------------------
// Divisions

struct Division {
  IntervalPartition rows;
  IntervalPartition cols;

  bool is_k_division() const { return rows.part_count() == cols.part_count(); }
  std::size_t k() const { return rows.part_count(); }
  friend bool operator==(const Division&, const Division&) = default;
};

namespace detail {
inline std::string ranges_to_string(const IntervalPartition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.part_count(); ++i) {
    if (i) s += ',';
    auto iv = p.part(i);
    s += std::to_string(iv.lo) + '-' + std::to_string(iv.hi - 1);
  }
  return s;
}

inline IntervalPartition parse_ranges(const std::string& s) {
  std::vector<std::size_t> bounds{0};
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    auto dash = tok.find('-');
    if (dash == std::string::npos) throw ParseError("range '" + tok + "' lacks '-'");
    std::size_t lo = 0, hi = 0;
    try {
      std::size_t used = 0;
      lo = std::stoul(tok.substr(0, dash), &used);
      if (used != dash) throw ParseError("bad range '" + tok + "'");
      auto rest = tok.substr(dash + 1);
      hi = std::stoul(rest, &used);
      if (used != rest.size()) throw ParseError("bad range '" + tok + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad range '" + tok + "'");
    }
    if (lo != bounds.back() || hi < lo)
      throw ParseError("ranges must be consecutive and cover from 0: '" + s + "'");
    bounds.push_back(hi + 1);
  }
  if (bounds.size() < 2) throw ParseError("empty range list");
  return IntervalPartition(bounds);
}
}  // namespace detail

/// Notation `rows=0-1,2-4;cols=0-2,3-4` with inclusive ranges.
inline std::string to_string(const Division& d) {
  return "rows=" + detail::ranges_to_string(d.rows) + ";cols=" + detail::ranges_to_string(d.cols);
}

inline Division parse_division(const std::string& s) {
  auto semi = s.find(';');
  if (semi == std::string::npos || s.rfind("rows=", 0) != 0 || s.compare(semi + 1, 5, "cols=") != 0)
    throw ParseError("division must look like rows=...;cols=...");
  return {detail::parse_ranges(s.substr(5, semi - 5)), detail::parse_ranges(s.substr(semi + 6))};
}

inline void check_division(const TriMatrix& m, const Division& d) {
  if (d.rows.universe() != m.rows() || d.cols.universe() != m.cols())
    throw std::invalid_argument("division does not match matrix dimensions");
}

inline std::size_t count_mixed_zones(const TriMatrix& m, const Division& d) {
  check_division(m, d);
  std::size_t count = 0;
  for (std::size_t i = 0; i < d.rows.part_count(); ++i)
    for (std::size_t j = 0; j < d.cols.part_count(); ++j)
      if (zone_mixed(m, d.rows.part(i), d.cols.part(j))) ++count;
  return count;
}

inline bool is_mixed_minor(const TriMatrix& m, const Division& d) {
  check_division(m, d);
  if (!d.is_k_division()) return false;
  for (std::size_t i = 0; i < d.k(); ++i)
    for (std::size_t j = 0; j < d.k(); ++j)
      if (!zone_mixed(m, d.rows.part(i), d.cols.part(j))) return false;
  return true;
}

inline bool is_almost_mixed_minor(const TriMatrix& m, const Division& d) {
  check_division(m, d);
  if (!d.is_k_division()) return false;
  for (std::size_t i = 0; i < d.k(); ++i)
    for (std::size_t j = 0; j < d.k(); ++j)
      if (i != j && !zone_mixed(m, d.rows.part(i), d.cols.part(j))) return false;
  return true;
}

/// Corner with one row in each row block and one column in each column
/// block of a 2x2 division whose four zones are mixed.
inline Corner find_spanning_corner(const TriMatrix& m, const Division& d) {
  check_division(m, d);
  if (d.rows.part_count() != 2 || d.cols.part_count() != 2)
    throw std::invalid_argument("spanning corner needs a 2x2 division");
  for (std::size_t i = 0; i < 2; ++i)
    if (d.rows.part(i).size() < 2 || d.cols.part(i).size() < 2)
      throw std::invalid_argument("spanning corner needs blocks of size >= 2");
  if (count_mixed_zones(m, d) != 4) throw std::invalid_argument("all four zones must be mixed");

  const auto R = d.rows.part(0), R2 = d.rows.part(1), C = d.cols.part(0), C2 = d.cols.part(1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) == Tri::Star) {
        auto other_r = R.contains(i) ? R2.lo : R.lo;
        auto other_c = C.contains(j) ? C2.lo : C.lo;
        return detail::make_corner(i, other_r, j, other_c);
      }
  auto k = detail::corner_from_rows_cols(m, R, C, R2, C2);
  if (!k || !is_corner(m, *k)) throw VerificationFailure("spanning corner construction failed");
  return *k;
}

/// Each entry is the maximum of its zone under 0 < 1 < *.
inline TriMatrix contract(const TriMatrix& m, const Division& d) {
  check_division(m, d);
  TriMatrix out(d.rows.part_count(), d.cols.part_count());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) {
      Tri best = Tri::Zero;
      auto r = d.rows.part(i), c = d.cols.part(j);
      for (auto a = r.lo; a < r.hi; ++a)
        for (auto b = c.lo; b < c.hi; ++b) best = std::max(best, m.at(a, b));
      out.set(i, j, best);
    }
  return out;
}

namespace detail {
inline TriMatrix deletion(const TriMatrix& m, const Division& d, ZoneKind zeroed) {
  check_division(m, d);
  if (m.has_star()) throw std::invalid_argument("deletion is defined on *-free matrices");
  TriMatrix out = m;
  for (std::size_t i = 0; i < d.rows.part_count(); ++i)
    for (std::size_t j = 0; j < d.cols.part_count(); ++j) {
      auto r = d.rows.part(i), c = d.cols.part(j);
      auto kind = classify_zone(m, r, c);
      if (kind == ZoneKind::Mixed) throw std::invalid_argument("deletion requires no mixed zone");
      if (kind != zeroed) continue;
      for (auto a = r.lo; a < r.hi; ++a)
        for (auto b = c.lo; b < c.hi; ++b) out.set(a, b, Tri::Zero);
    }
  return out;
}
}  // namespace detail

/// Zeroes every zone that is not vertical (horizontal and non-constant).
inline TriMatrix horizontal_deletion(const TriMatrix& m, const Division& d) {
  return detail::deletion(m, d, ZoneKind::Horizontal);
}

/// Zeroes every zone that is not horizontal (vertical and non-constant).
inline TriMatrix vertical_deletion(const TriMatrix& m, const Division& d) {
  return detail::deletion(m, d, ZoneKind::Vertical);
}

// ---------------------------------------------------------------------------
// Minor search. Exhaustive over compositions; the first witness in
// lexicographic order of (row bounds, column bounds) is returned, so an
// absent result certifies freeness.

enum class DivisionMode { Symmetric, General };

namespace detail {

// Enumerates bounds b_0 = 0 < ... < b_k = n with every part >= min_part.
// `accept(bounds, j)` is called after block j is fixed and may prune.
inline bool compose(std::size_t n, std::size_t k, std::size_t min_part, std::vector<std::size_t>& b,
                    const std::function<bool(const std::vector<std::size_t>&, std::size_t)>& accept,
                    const std::function<bool(const std::vector<std::size_t>&)>& leaf) {
  const std::size_t j = b.size() - 1;  // block being placed
  if (j == k) return leaf(b);
  const std::size_t start = b.back();
  const std::size_t remaining_blocks = k - j - 1;
  if (j + 1 == k) {
    if (n - start < min_part) return false;
    b.push_back(n);
    bool found = accept(b, j) && leaf(b);
    b.pop_back();
    return found;
  }
  for (std::size_t end = start + min_part; end + remaining_blocks * min_part <= n; ++end) {
    if (end == n) break;
    b.push_back(end);
    if (accept(b, j) && compose(n, k, min_part, b, accept, leaf)) return true;
    b.pop_back();
  }
  return false;
}

inline Interval block(const std::vector<std::size_t>& b, std::size_t i) { return {b[i], b[i + 1]}; }

}  // namespace detail

/// Searches a d-division whose d^2 zones are all mixed.
inline std::optional<Division> find_mixed_minor(const TriMatrix& m, std::size_t d,
                                                DivisionMode mode = DivisionMode::General) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (mode == DivisionMode::Symmetric && !m.is_symmetric())
    throw std::invalid_argument("symmetric search needs a symmetric matrix");
  if (m.rows() < 2 * d || m.cols() < 2 * d) return std::nullopt;
  std::optional<Division> found;
  std::vector<std::size_t> rb{0};
  auto no_prune = [](const std::vector<std::size_t>&, std::size_t) { return true; };

  if (mode == DivisionMode::Symmetric) {
    auto accept = [&](const std::vector<std::size_t>& b, std::size_t j) {
      for (std::size_t i = 0; i <= j; ++i)
        if (!zone_mixed(m, detail::block(b, i), detail::block(b, j)) ||
            !zone_mixed(m, detail::block(b, j), detail::block(b, i)))
          return false;
      return true;
    };
    detail::compose(m.rows(), d, 2, rb, accept, [&](const std::vector<std::size_t>& b) {
      found = Division{IntervalPartition(b), IntervalPartition(b)};
      return true;
    });
    return found;
  }

  detail::compose(m.rows(), d, 2, rb, no_prune, [&](const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> cb{0};
    auto accept = [&](const std::vector<std::size_t>& b, std::size_t j) {
      for (std::size_t i = 0; i < d; ++i)
        if (!zone_mixed(m, detail::block(rows, i), detail::block(b, j))) return false;
      return true;
    };
    return detail::compose(m.cols(), d, 2, cb, accept, [&](const std::vector<std::size_t>& cols) {
      found = Division{IntervalPartition(rows), IntervalPartition(cols)};
      return true;
    });
  });
  return found;
}

/// Searches a d-division whose off-diagonal zones are all mixed. The default
/// symmetric mode only considers divisions with identical row and column
/// partitions and requires a symmetric matrix.
inline std::optional<Division> find_almost_mixed_minor(const TriMatrix& m, std::size_t d,
                                                       DivisionMode mode = DivisionMode::Symmetric) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (mode == DivisionMode::Symmetric && !m.is_symmetric())
    throw std::invalid_argument("almost mixed minor search needs a symmetric matrix");
  if (m.empty()) return std::nullopt;
  if (d == 1) return Division{IntervalPartition::whole(m.rows()), IntervalPartition::whole(m.cols())};
  if (m.rows() < 2 * d || m.cols() < 2 * d) return std::nullopt;

  std::optional<Division> found;
  std::vector<std::size_t> rb{0};
  if (mode == DivisionMode::Symmetric) {
    auto accept = [&](const std::vector<std::size_t>& b, std::size_t j) {
      for (std::size_t i = 0; i < j; ++i)
        if (!zone_mixed(m, detail::block(b, i), detail::block(b, j))) return false;
      return true;
    };
    detail::compose(m.rows(), d, 2, rb, accept, [&](const std::vector<std::size_t>& b) {
      found = Division{IntervalPartition(b), IntervalPartition(b)};
      return true;
    });
    return found;
  }

  auto no_prune = [](const std::vector<std::size_t>&, std::size_t) { return true; };
  detail::compose(m.rows(), d, 2, rb, no_prune, [&](const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> cb{0};
    auto accept = [&](const std::vector<std::size_t>& b, std::size_t j) {
      for (std::size_t i = 0; i < d; ++i)
        if (i != j && !zone_mixed(m, detail::block(rows, i), detail::block(b, j))) return false;
      return true;
    };
    return detail::compose(m.cols(), d, 2, cb, accept, [&](const std::vector<std::size_t>& cols) {
      found = Division{IntervalPartition(rows), IntervalPartition(cols)};
      return true;
    });
  });
  return found;
}

/// Turns a 2d-almost mixed minor into a d-mixed minor by merging the first
/// d+1 row blocks and the last d+1 column blocks.
inline Division merge_to_mixed_minor(const Division& amm, const TriMatrix& m) {
  if (!amm.is_k_division() || amm.k() < 2 || amm.k() % 2 != 0 || !is_almost_mixed_minor(m, amm))
    throw std::invalid_argument("input must be a 2d-almost mixed minor");
  const std::size_t d = amm.k() / 2;
  const auto& rb = amm.rows.bounds();
  const auto& cb = amm.cols.bounds();
  std::vector<std::size_t> rows{0};
  rows.insert(rows.end(), rb.begin() + static_cast<std::ptrdiff_t>(d + 1), rb.end());
  std::vector<std::size_t> cols(cb.begin(), cb.begin() + static_cast<std::ptrdiff_t>(d));
  cols.push_back(cb.back());
  Division out{IntervalPartition(rows), IntervalPartition(cols)};
  if (!is_mixed_minor(m, out)) throw VerificationFailure("merged division is not a mixed minor");
  return out;
}

}  // namespace twwchi
