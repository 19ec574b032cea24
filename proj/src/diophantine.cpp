#include "kwb/diophantine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

namespace kwb {

EquationSystem::EquationSystem(std::vector<Polynomial> equations) : eqs_(std::move(equations)) {
  if (eqs_.empty()) throw DomainError("equation system is empty");
  for (const auto& e : eqs_) eqs_.front().check_same_ring(e, "equation system");
}

bool EquationSystem::satisfied_by(std::span<const BigInt> point) const {
  RatVector x(point.begin(), point.end());
  return std::all_of(eqs_.begin(), eqs_.end(), [&](const Polynomial& e) { return e.evaluate(x) == 0; });
}

EquationSystem curve_CF(const PolyMap& f) { return curve_CFm(f, 0); }

EquationSystem curve_CFm(const PolyMap& f, std::size_t m) {
  const std::size_t n = f.size();
  if (n < 2) throw DomainError("curve system needs at least two components");
  if (m >= n) throw DomainError("curve_CFm: m must be below n");
  std::vector<Polynomial> eqs;
  for (std::size_t i = 0; i < m; ++i) eqs.push_back(f[i]);
  for (std::size_t i = m; i + 1 < n; ++i) eqs.push_back(f[i] - f[i + 1]);
  return EquationSystem(std::move(eqs));
}

EquationSystem line_preimage(const PolyMap& f, const Line& line) {
  const std::size_t n = f.size();
  if (line.dimension() != n) throw DomainError("line_preimage: line has wrong dimension");
  if (n < 2) throw DomainError("line_preimage: needs at least two components");
  const auto& u = line.u();
  const auto& v = line.v();
  const auto p = static_cast<std::size_t>(
      std::find_if(v.begin(), v.end(), [](const Rational& c) { return c != 0; }) - v.begin());
  const Polynomial fp = f[p] - Polynomial::constant(f[p], u[p]);
  std::vector<Polynomial> eqs;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == p) continue;
    eqs.push_back((f[i] - Polynomial::constant(f[i], u[i])) * v[p] - fp * v[i]);
  }
  return EquationSystem(std::move(eqs));
}

Polynomial sum_of_squares(const PolyMap& f) {
  if (f.size() < 2) throw DomainError("sum_of_squares: needs at least two components");
  Polynomial sum(f.ring());
  for (std::size_t i = 0; i + 1 < f.size(); ++i) sum += f[i] * f[i];
  return sum;
}

namespace {

// Integer polynomial with terms stored row-wise for cheap partial evaluation.
struct IntPoly {
  std::size_t n = 0;
  std::vector<std::uint16_t> exps;  // size() rows of n exponents
  std::vector<BigInt> coef;

  std::size_t size() const { return coef.size(); }
  const std::uint16_t* row(std::size_t t) const { return exps.data() + t * n; }

  std::uint64_t support() const {
    std::uint64_t mask = 0;
    for (std::size_t t = 0; t < size(); ++t)
      for (std::size_t v = 0; v < n; ++v)
        if (row(t)[v] != 0) mask |= std::uint64_t{1} << v;
    return mask;
  }

  int degree() const {
    int best = 0;
    for (std::size_t t = 0; t < size(); ++t)
      best = std::max(best, std::accumulate(row(t), row(t) + n, 0));
    return best;
  }
};

IntPoly to_int_poly(const Polynomial& p) {
  BigInt denom = 1;
  for (const auto& [m, c] : p.terms()) denom = lcm(denom, c.get_den());
  IntPoly out;
  out.n = p.nvars();
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t v = 0; v < out.n; ++v) {
      if (m[v] > UINT16_MAX) throw DomainError("search: exponent too large");
      out.exps.push_back(static_cast<std::uint16_t>(m[v]));
    }
    out.coef.push_back(c.get_num() * (denom / c.get_den()));
  }
  return out;
}

// Sets variable `var` to `value` and merges colliding terms.
IntPoly assign(const IntPoly& p, std::size_t var, long value) {
  const std::size_t n = p.n;
  std::vector<std::uint16_t> exps(p.exps);
  std::vector<BigInt> coef(p.coef);
  std::vector<BigInt> powers{1};
  for (std::size_t t = 0; t < coef.size(); ++t) {
    std::uint16_t& e = exps[t * n + var];
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    coef[t] *= powers[e];
    e = 0;
  }
  std::vector<std::size_t> order(coef.size());
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t t) { return exps.begin() + static_cast<std::ptrdiff_t>(t * n); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + n, row(b), row(b) + n);
  });
  IntPoly out;
  out.n = n;
  for (std::size_t k = 0; k < order.size();) {
    BigInt sum = 0;
    std::size_t j = k;
    while (j < order.size() && std::equal(row(order[k]), row(order[k]) + n, row(order[j])))
      sum += coef[order[j++]];
    if (sum != 0) {
      out.exps.insert(out.exps.end(), row(order[k]), row(order[k]) + n);
      out.coef.push_back(std::move(sum));
    }
    k = j;
  }
  return out;
}

// Integer roots in [-radius, radius] of sum c_k t^k (not all c_k zero).
std::vector<long> integer_roots(std::vector<BigInt> c, long radius) {
  std::vector<long> roots;
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) roots.push_back(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() > 1) {
    const BigInt c0 = abs(c[0]);
    auto is_root = [&](long t) {
      BigInt acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
      return acc == 0;
    };
    const long limit = c0 < radius ? c0.get_si() : radius;
    for (long t = 1; t <= limit; ++t) {
      if (c0 % t != 0) continue;
      if (is_root(t)) roots.push_back(t);
      if (is_root(-t)) roots.push_back(-t);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<BigInt> univariate_coefficients(const IntPoly& p, std::size_t var) {
  std::vector<BigInt> c;
  for (std::size_t t = 0; t < p.size(); ++t) {
    const std::size_t e = p.row(t)[var];
    if (c.size() <= e) c.resize(e + 1, BigInt(0));
    c[e] += p.coef[t];
  }
  return c;
}

struct Search {
  std::size_t n;
  long radius;
  std::uint64_t budget;
  std::vector<std::size_t> order;  // static branching order
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stopped{false};

  // Next variable and its candidate values, or false when the node is dead.
  bool choose(const std::vector<IntPoly>& eqs, std::uint64_t assigned, std::size_t& var,
              std::vector<long>& candidates) const {
    bool have = false;
    for (const auto& e : eqs) {
      const std::uint64_t s = e.support();
      if (std::popcount(s) != 1) continue;
      const auto v = static_cast<std::size_t>(std::countr_zero(s));
      std::vector<long> roots = integer_roots(univariate_coefficients(e, v), radius);
      if (have && v == var) {
        std::vector<long> both;
        std::set_intersection(candidates.begin(), candidates.end(), roots.begin(), roots.end(),
                              std::back_inserter(both));
        candidates = std::move(both);
      } else if (!have || roots.size() < candidates.size()) {
        var = v;
        candidates = std::move(roots);
        have = true;
      }
      if (candidates.empty()) return false;
    }
    if (have) return true;
    // Branch where an equation is closest to becoming univariate; among
    // those, on the variable shared by most equations; then static rank.
    std::tuple<int, int, std::size_t> best{INT32_MAX, 0, 0};
    bool any = false;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const std::size_t v = order[rank];
      if (assigned >> v & 1) continue;
      int fewest = INT32_MAX, shared = 0;
      for (const auto& e : eqs) {
        const std::uint64_t s = e.support();
        if (!(s >> v & 1)) continue;
        fewest = std::min(fewest, std::popcount(s));
        ++shared;
      }
      const std::tuple<int, int, std::size_t> key{fewest, -shared, rank};
      if (!any || key < best) {
        best = key;
        var = v;
        any = true;
      }
    }
    if (!any) return false;
    candidates.clear();
    for (long x = -radius; x <= radius; ++x) candidates.push_back(x);
    return true;
  }

  // Substitutes x_var = value; false when some equation became a nonzero constant.
  static bool reduce(const std::vector<IntPoly>& eqs, std::size_t var, long value,
                     std::vector<IntPoly>& out) {
    out.clear();
    for (const auto& e : eqs) {
      if (!(e.support() >> var & 1)) {
        out.push_back(e);
        continue;
      }
      IntPoly r = assign(e, var, value);
      if (r.size() == 0) continue;
      if (r.support() == 0) return false;
      out.push_back(std::move(r));
    }
    return true;
  }

  void dfs(const std::vector<IntPoly>& eqs, std::uint64_t assigned, std::vector<long>& point,
           std::vector<IntVector>& found) {
    if (static_cast<std::size_t>(std::popcount(assigned)) == n) {
      found.emplace_back(point.begin(), point.end());
      return;
    }
    std::size_t var = 0;
    std::vector<long> candidates;
    if (!choose(eqs, assigned, var, candidates)) return;
    branch(eqs, assigned, var, candidates, point, found);
  }

  void branch(const std::vector<IntPoly>& eqs, std::uint64_t assigned, std::size_t var,
              std::span<const long> candidates, std::vector<long>& point,
              std::vector<IntVector>& found) {
    std::vector<IntPoly> next;
    for (long value : candidates) {
      if (stopped.load(std::memory_order_relaxed)) return;
      if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget) {
        stopped = true;
        return;
      }
      if (!reduce(eqs, var, value, next)) continue;
      point[var] = value;
      dfs(next, assigned | std::uint64_t{1} << var, point, found);
    }
  }
};

}  // namespace

SearchReport search_box(const EquationSystem& sys, const SearchOptions& options) {
  if (options.radius < 0) throw DomainError("search: radius must be nonnegative");
  const std::size_t n = sys.nvars();
  if (n > 64) throw DomainError("search: at most 64 variables");

  Search s;
  s.n = n;
  s.radius = options.radius;
  s.budget = options.node_budget;
  std::vector<IntPoly> eqs;
  for (const auto& e : sys.equations()) eqs.push_back(to_int_poly(e));

  // Variables of low-degree equations first; free variables last.
  std::vector<int> score(n, INT32_MAX);
  for (const auto& e : eqs) {
    const int d = e.degree();
    for (std::size_t v = 0; v < n; ++v)
      if (e.support() >> v & 1) score[v] = std::min(score[v], d);
  }
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

  SearchReport report;
  report.radius = options.radius;
  std::vector<IntPoly> live;
  bool consistent = true;
  for (auto& e : eqs) {
    if (e.size() == 0) continue;
    if (e.support() == 0) consistent = false;
    live.push_back(std::move(e));
  }
  if (consistent && n == 0) report.points.emplace_back();
  if (consistent && n > 0) {
    std::size_t var = 0;
    std::vector<long> candidates;
    if (s.choose(live, 0, var, candidates)) {
      const std::size_t threads =
          std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, candidates.size()));
      std::vector<std::vector<IntVector>> found(threads);
      auto work = [&](std::size_t k) {
        const std::size_t lo = candidates.size() * k / threads;
        const std::size_t hi = candidates.size() * (k + 1) / threads;
        std::vector<long> point(n, 0);
        s.branch(live, 0, var, std::span(candidates).subspan(lo, hi - lo), point, found[k]);
      };
      if (threads == 1) {
        work(0);
      } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(work, k);
      }
      for (auto& f : found)
        report.points.insert(report.points.end(), std::make_move_iterator(f.begin()),
                             std::make_move_iterator(f.end()));
    }
  }
  std::sort(report.points.begin(), report.points.end());
  report.exhausted = !s.stopped;
  report.nodes_visited = std::min(s.nodes.load(), s.budget);
  for (const auto& p : report.points)
    if (!sys.satisfied_by(p)) throw InternalError("search: reported point fails the system");
  return report;
}

std::string write_report(const SearchReport& report) {
  std::ostringstream out;
  for (const auto& p : report.points) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
  }
  out << "exhausted: " << (report.exhausted ? "yes" : "no") << '\n';
  out << "nodes: " << report.nodes_visited << '\n';
  return out.str();
}

SearchReport parse_report(const std::string& text) {
  SearchReport report;
  std::istringstream in(text);
  std::string line;
  bool saw_exhausted = false, saw_nodes = false;
  while (std::getline(in, line)) {
    if (line.rfind("exhausted: ", 0) == 0) {
      const std::string v = line.substr(11);
      if (v != "yes" && v != "no") throw ParseError("bad exhausted flag", 0, 12);
      report.exhausted = v == "yes";
      saw_exhausted = true;
    } else if (line.rfind("nodes: ", 0) == 0) {
      report.nodes_visited = std::stoull(line.substr(7));
      saw_nodes = true;
    } else {
      std::istringstream row(line);
      IntVector p;
      std::string tok;
      while (row >> tok) p.emplace_back(tok);
      report.points.push_back(std::move(p));
    }
  }
  if (!saw_exhausted || !saw_nodes) throw ParseError("report footer missing", 0, 0);
  return report;
}

std::string PointVerdict::describe() const {
  switch (kind) {
    case Kind::found: {
      std::string s = "found:";
      for (const auto& c : *point) s += " " + c.get_str();
      return s;
    }
    case Kind::none_in_box:
      return "no nonzero integer point with max-norm ≤ " + std::to_string(radius);
    case Kind::budget_exceeded:
      return "budget exceeded before a nonzero point was found (radius " + std::to_string(radius) + ")";
  }
  return {};
}

PointVerdict nonzero_point_exists(const EquationSystem& sys, const SearchOptions& options) {
  const SearchReport report = search_box(sys, options);
  auto key = [](const IntVector& p) {
    BigInt norm = 0;
    for (const auto& c : p) norm = std::max<BigInt>(norm, abs(c));
    const auto first = std::find_if(p.begin(), p.end(), [](const BigInt& c) { return c != 0; });
    return std::make_tuple(norm, first != p.end() && *first < 0, p);
  };
  std::optional<IntVector> best;
  for (const auto& p : report.points) {
    if (std::all_of(p.begin(), p.end(), [](const BigInt& c) { return c == 0; })) continue;
    if (!best || key(p) < key(*best)) best = p;
  }
  if (best) return {PointVerdict::Kind::found, options.radius, best};
  if (!report.exhausted) return {PointVerdict::Kind::budget_exceeded, options.radius, std::nullopt};
  return {PointVerdict::Kind::none_in_box, options.radius, std::nullopt};
}

}  // namespace kwb
