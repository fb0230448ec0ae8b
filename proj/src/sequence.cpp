#include "olt/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "olt/errors.hpp"

namespace olt {

RealSequence::RealSequence(std::vector<double> vals) : values(std::move(vals)) {
  if (values.size() < 2) throw std::invalid_argument("RealSequence: n >= 2 required");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("RealSequence: values must be finite");
  }
}

bool LocalPropertySpec::holds(const RealSequence& f) const {
  for (uint64_t i = 1; i < f.n(); ++i) {
    if (forbidden(f.at(i), f.at(i + 1))) return false;
  }
  return true;
}

namespace {

uint64_t lnds_length(const std::vector<double>& v) {
  // Patience sieve for the longest non-decreasing subsequence.
  std::vector<double> tails;
  for (double x : v) {
    auto it = std::upper_bound(tails.begin(), tails.end(), x);
    if (it == tails.end())
      tails.push_back(x);
    else
      *it = x;
  }
  return tails.size();
}

}  // namespace

Rational distance_to_sortedness(const RealSequence& f) {
  uint64_t n = f.n();
  return Rational(static_cast<int64_t>(n - lnds_length(f.values)), static_cast<int64_t>(n));
}

Rational distance_to_lipschitz(const RealSequence& f) {
  uint64_t n = f.n();
  std::vector<uint32_t> dp(n, 1);
  uint32_t best = 1;
  for (uint64_t i = 1; i < n; ++i) {
    for (uint64_t j = 0; j < i; ++j) {
      if (std::fabs(f.values[i] - f.values[j]) <= static_cast<double>(i - j) && dp[j] + 1 > dp[i])
        dp[i] = dp[j] + 1;
    }
    best = std::max(best, dp[i]);
  }
  return Rational(static_cast<int64_t>(n - best), static_cast<int64_t>(n));
}

const LocalPropertySpec& sortedness_property() {
  static const LocalPropertySpec prop = [] {
    LocalPropertySpec p;
    p.name = "sortedness";
    p.forbidden = [](double a, double b) { return a > b; };
    // Reals are dense: any non-decreasing pair spans a fillable gap.
    p.gap_fillable = [](uint64_t, uint64_t, double a, double b) { return a <= b; };
    p.prefix_fillable = [](uint64_t, double) { return true; };
    p.suffix_fillable = [](uint64_t, double) { return true; };
    p.exact_distance = distance_to_sortedness;
    return p;
  }();
  return prop;
}

const LocalPropertySpec& lipschitz_property() {
  static const LocalPropertySpec prop = [] {
    LocalPropertySpec p;
    p.name = "lipschitz";
    p.forbidden = [](double a, double b) { return std::fabs(a - b) > 1.0; };
    p.gap_fillable = [](uint64_t x, uint64_t y, double a, double b) {
      return std::fabs(b - a) <= static_cast<double>(y - x);
    };
    p.prefix_fillable = [](uint64_t, double) { return true; };
    p.suffix_fillable = [](uint64_t, double) { return true; };
    p.exact_distance = distance_to_lipschitz;
    return p;
  }();
  return prop;
}

const LocalPropertySpec* find_property(const std::string& name) {
  if (name == "sortedness") return &sortedness_property();
  if (name == "lipschitz") return &lipschitz_property();
  return nullptr;
}

bool pair_unrepairable(const LocalPropertySpec& prop, uint64_t n, uint64_t x, uint64_t y, double vx,
                       double vy) {
  if (x == y) throw std::invalid_argument("pair_unrepairable: x != y required");
  if (x < 1 || y < 1 || x > n || y > n) throw OutOfDomainError("pair_unrepairable: position out of range");
  uint64_t p = std::min(x, y);
  uint64_t q = std::max(x, y);
  double vp = x < y ? vx : vy;
  double vq = x < y ? vy : vx;
  return !(prop.prefix_fillable(p, vp) && prop.gap_fillable(p, q, vp, vq) &&
           prop.suffix_fillable(q, vq));
}

Rational distance_brute_force(const RealSequence& f, const LocalPropertySpec& prop) {
  uint64_t n = f.n();
  if (n > 18) throw std::invalid_argument("distance_brute_force: n too large");
  uint64_t best_kept = 0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    // Kept positions must admit a completion: every consecutive kept pair
    // spans a fillable gap, and the ends leave fillable prefix/suffix.
    uint64_t prev = 0;
    bool ok = true;
    uint64_t kept = 0;
    for (uint64_t pos = 1; pos <= n && ok; ++pos) {
      if (!((mask >> (pos - 1)) & 1)) continue;
      ++kept;
      if (prev == 0) {
        ok = prop.prefix_fillable(pos, f.at(pos));
      } else {
        ok = prop.gap_fillable(prev, pos, f.at(prev), f.at(pos));
      }
      prev = pos;
    }
    if (ok && prev != 0) ok = prop.suffix_fillable(prev, f.at(prev));
    if (ok && kept > best_kept) best_kept = kept;
  }
  return Rational(static_cast<int64_t>(n - best_kept), static_cast<int64_t>(n));
}

bool pair_unrepairable_brute_force(const LocalPropertySpec& prop, uint64_t n, uint64_t x, uint64_t y,
                                   double vx, double vy) {
  uint64_t p = std::min(x, y);
  uint64_t q = std::max(x, y);
  double vp = x < y ? vx : vy;
  double vq = x < y ? vy : vx;
  // Candidate grid: the endpoint values, their pairwise midpoints, and the
  // linear interpolation between the pinned positions (the canonical repair).
  std::set<double> grid_set{vp, vq, std::min(vp, vq) - 1.0, std::max(vp, vq) + 1.0, (vp + vq) / 2};
  for (uint64_t j = 0; j <= q - p; ++j) {
    grid_set.insert(vp + (vq - vp) * static_cast<double>(j) / static_cast<double>(q - p));
  }
  std::vector<double> grid(grid_set.begin(), grid_set.end());
  size_t g = grid.size();
  // Forward feasibility over assignments of every free position.
  std::vector<char> feasible(g, 0);
  bool started = false;
  auto value_fixed = [&](uint64_t pos, double* v) {
    if (pos == p) {
      *v = vp;
      return true;
    }
    if (pos == q) {
      *v = vq;
      return true;
    }
    return false;
  };
  for (uint64_t pos = 1; pos <= n; ++pos) {
    double fixed_val = 0;
    bool fixed = value_fixed(pos, &fixed_val);
    std::vector<char> next(g, 0);
    for (size_t j = 0; j < g; ++j) {
      if (fixed && grid[j] != fixed_val) continue;
      if (!started) {
        next[j] = 1;
      } else {
        for (size_t i = 0; i < g; ++i) {
          if (feasible[i] && !prop.forbidden(grid[i], grid[j])) {
            next[j] = 1;
            break;
          }
        }
      }
    }
    feasible = std::move(next);
    started = true;
    bool any = false;
    for (char c : feasible) any |= c;
    if (!any) return true;  // no completion survives
  }
  return false;
}

RealSequence parse_sequence(const std::string& text) {
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::invalid_argument("parse_sequence: empty input");
  std::vector<double> vals;
  if (text[first] == '[') {
    auto j = nlohmann::json::parse(text);
    for (const auto& v : j) vals.push_back(v.get<double>());
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      size_t a = line.find_first_not_of(" \t\r,");
      if (a == std::string::npos) continue;
      vals.push_back(std::stod(line));
    }
  }
  return RealSequence(std::move(vals));
}

}  // namespace olt
