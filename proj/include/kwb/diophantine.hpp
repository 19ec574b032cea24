#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kwb/fibers.hpp"
#include "kwb/polynomial.hpp"

namespace kwb {

/// Nonempty list of equations p = 0 over one variable list.
class EquationSystem {
 public:
  explicit EquationSystem(std::vector<Polynomial> equations);

  const std::vector<Polynomial>& equations() const noexcept { return eqs_; }
  const VarList& variables() const { return eqs_.front().variables(); }
  const std::shared_ptr<const VarList>& ring() const { return eqs_.front().ring(); }
  std::size_t nvars() const { return eqs_.front().nvars(); }
  bool satisfied_by(std::span<const BigInt> point) const;

 private:
  std::vector<Polynomial> eqs_;
};

/// F_1 = F_2 = ... = F_n as the n - 1 equations F_i - F_{i+1}.
EquationSystem curve_CF(const PolyMap& f);

/// F_1 = ... = F_m = 0 together with F_{m+1} = ... = F_n (chained). 0 <= m < n.
EquationSystem curve_CFm(const PolyMap& f, std::size_t m);

/// {x : F(x) on the line}: with p the first index where v_p != 0, the
/// equations (F_i - u_i) v_p - (F_p - u_p) v_i for i != p.
EquationSystem line_preimage(const PolyMap& f, const Line& line);

/// F_1^2 + ... + F_{n-1}^2.
Polynomial sum_of_squares(const PolyMap& f);

struct SearchOptions {
  long radius = 10;
  std::uint64_t node_budget = 50'000'000;
  unsigned threads = 1;
};

/// Integer points of a system in the box max|x_i| <= radius.
struct SearchReport {
  long radius = 0;
  std::vector<IntVector> points;  // sorted lexicographically
  bool exhausted = true;          // false when the node budget ran out
  std::uint64_t nodes_visited = 0;
};

/// Depth-first assignment with exact integer root extraction for every
/// equation that has become univariate; each node is one variable assignment.
SearchReport search_box(const EquationSystem& sys, const SearchOptions& options);

/// Points one per line, then `exhausted: yes|no` and `nodes: N`.
std::string write_report(const SearchReport& report);
/// Inverse of write_report; the radius is not part of the text.
SearchReport parse_report(const std::string& text);

struct PointVerdict {
  enum class Kind { found, none_in_box, budget_exceeded };
  Kind kind;
  long radius;
  std::optional<IntVector> point;

  std::string describe() const;
};

/// A nonzero point in the box, preferring least max-norm, then a positive
/// first nonzero coordinate, then lexicographic order. `none_in_box` says
/// nothing about points outside the box.
PointVerdict nonzero_point_exists(const EquationSystem& sys, const SearchOptions& options);

}  // namespace kwb
