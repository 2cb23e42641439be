#include "costlab/rotation.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <unordered_set>

#include "costlab/error.hpp"
#include "costlab/rel_core.hpp"

namespace costlab::rotation {

namespace {

using u128 = unsigned __int128;

std::uint64_t reduce(std::int64_t s, std::size_t n) {
  auto m = static_cast<std::int64_t>(n);
  auto r = s % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) + b) % n);
}

}  // namespace

std::optional<std::uint64_t> first_multiple_in_range(std::uint64_t a, std::uint64_t m, std::uint64_t low,
                                                     std::uint64_t high) {
  if (m == 0 || low > high || high >= m) throw Error("first_multiple_in_range: need low <= high < m");
  if (low == 0) return 0;
  a %= m;
  if (a == 0) return std::nullopt;
  // No wrap-around before the first multiple of a at or above low.
  const u128 k = (static_cast<u128>(low) + a - 1) / a;
  if (k * a <= high) return static_cast<std::uint64_t>(k);
  // Otherwise a x = low + m y + r with 0 <= r <= high - low < a for the
  // least y, i.e. (-m y) mod a in [low mod a, high mod a] (no multiple of a
  // lies in [low, high], so that range does not wrap). Recurse on (.., a).
  const std::uint64_t c = (a - m % a) % a;
  const std::uint64_t lo = low % a;
  const std::uint64_t hi = high % a;
  std::optional<std::uint64_t> y;
  if (2 * static_cast<u128>(c) <= a) {
    y = first_multiple_in_range(c, a, lo, hi);
  } else {
    // v in [lo, hi] iff (a - v) in [a - hi, a - lo]; keeps the step <= a/2.
    y = first_multiple_in_range(a - c, a, a - hi, a - lo);
  }
  if (!y) return std::nullopt;
  const u128 target = static_cast<u128>(low) + static_cast<u128>(m) * *y;
  return static_cast<std::uint64_t>((target + a - 1) / a);
}

RotationSystem::RotationSystem(std::size_t n, const std::vector<std::pair<std::string, std::int64_t>>& steps)
    : n_(n) {
  if (n == 0) throw Error("rotation modulus must be at least 1");
  std::unordered_set<std::string> names;
  for (const auto& [name, amount] : steps) {
    if (!names.insert(name).second) throw Error("duplicate step name '" + name + "'");
    steps_.push_back({name, reduce(amount, n)});
  }
}

const Step& RotationSystem::step(const std::string& name) const {
  for (const auto& s : steps_) {
    if (s.name == name) return s;
  }
  throw Error("unknown step '" + name + "'");
}

void Arc::validate(std::size_t n) const {
  if (start >= n) throw Error("arc start " + std::to_string(start) + " outside [0, " + std::to_string(n) + ")");
  if (len > n) throw Error("arc length " + std::to_string(len) + " exceeds " + std::to_string(n));
}

Subset Arc::to_subset(std::size_t n) const {
  validate(n);
  std::vector<Atom> members(len);
  for (std::size_t i = 0; i < len; ++i) members[i] = (start + i) % n;
  return Subset(FiniteSpace(n), std::move(members));
}

PartialMap rotation_map(std::size_t n, const Step& step, const Subset& domain) {
  std::vector<AtomPair> pairs;
  pairs.reserve(domain.size());
  for (Atom x : domain.members()) pairs.emplace_back(x, add_mod(x, step.amount, n));
  return PartialMap(step.name, FiniteSpace(n), std::move(pairs));
}

Relation expected_relation(const RotationSystem& sys) {
  const std::size_t n = sys.modulus();
  std::uint64_t g = n;
  for (const auto& s : sys.steps()) g = std::gcd(g, s.amount);
  std::vector<std::size_t> labels(n);
  for (Atom x = 0; x < n; ++x) labels[x] = x % g;
  return Relation::from_labels(sys.space(), labels);
}

Graphing full_graphing(const RotationSystem& sys) {
  const auto all = Subset::all(sys.space());
  std::vector<PartialMap> maps;
  for (const auto& s : sys.steps()) maps.push_back(rotation_map(sys.modulus(), s, all));
  return Graphing(sys.space(), std::move(maps));
}

Graphing epsilon_graphing(const RotationSystem& sys, const std::string& full_step, const Arc& arc) {
  if (sys.steps().size() < 2) throw Error("the restricted family needs at least two steps");
  const auto& full = sys.step(full_step);
  const std::size_t n = sys.modulus();
  const auto all = Subset::all(sys.space());
  const auto restricted = arc.to_subset(n);
  std::vector<PartialMap> maps;
  for (const auto& s : sys.steps()) {
    maps.push_back(rotation_map(n, s, s.name == full.name ? all : restricted));
  }
  return Graphing(sys.space(), std::move(maps));
}

std::uint64_t first_hitting_time(std::size_t n, std::int64_t step, Atom x, const Arc& arc) {
  arc.validate(n);
  if (x >= n) throw Error("atom " + std::to_string(x) + " out of range");
  const std::uint64_t s = reduce(step, n);
  auto unreachable = [&] {
    return Error("arc [" + std::to_string(arc.start) + ", +" + std::to_string(arc.len) + ") unreachable from " +
                 std::to_string(x) + " by steps of " + std::to_string(s) + " mod " + std::to_string(n));
  };
  if (arc.len == 0) throw unreachable();
  if (arc.contains(n, x)) return 0;
  // x + m s lands in the arc iff (m s) mod n lies in [n - b, n - b + len - 1],
  // where b = x - start mod n; x outside the arc means this does not wrap.
  const std::uint64_t b = (x + n - arc.start) % n;
  const std::uint64_t low = n - b;
  auto m = first_multiple_in_range(s, n, low, low + arc.len - 1);
  if (!m) throw unreachable();
  return *m;
}

std::uint64_t ConnectionPath::length() const {
  std::uint64_t total = 0;
  for (const auto& run : runs) total += run.count;
  return total;
}

ConnectionPath connection_path(const RotationSystem& sys, const std::string& full_step,
                               const std::string& restricted_step, const Arc& arc, Atom x) {
  const std::size_t n = sys.modulus();
  const auto& a = sys.step(full_step);
  const auto& b = sys.step(restricted_step);
  if (a.name == b.name) throw Error("full and restricted steps must differ");

  ConnectionPath path;
  path.source = x;
  path.hitting_time = first_hitting_time(n, static_cast<std::int64_t>(a.amount), x, arc);
  const std::uint64_t m = path.hitting_time;
  if (m > 0) path.runs.push_back({a.name, false, m});
  path.runs.push_back({b.name, false, 1});
  if (m > 0) path.runs.push_back({a.name, true, m});

  // Apply the runs; a run of m rotations by s is a rotation by m*s.
  std::uint64_t z = x;
  for (const auto& run : path.runs) {
    const auto& s = sys.step(run.map);
    if (run.map == b.name && !arc.contains(n, z)) {
      throw Error("restricted jump from " + std::to_string(z) + " leaves the arc");
    }
    const std::uint64_t shift = mul_mod(s.amount, run.count % n, n);
    z = add_mod(z, run.inverse ? (n - shift) % n : shift, n);
  }
  path.endpoint = z;
  if (z != add_mod(x, b.amount, n)) {
    throw Error("path from " + std::to_string(x) + " ends at " + std::to_string(z) + ", expected x + " +
                std::to_string(b.amount));
  }
  return path;
}

Atom replay_path(const Graphing& g, const ConnectionPath& path) {
  Atom z = path.source;
  for (const auto& run : path.runs) {
    const PartialMap* map = g.find(run.map);
    if (map == nullptr) throw Error("path uses unknown map '" + run.map + "'");
    auto forward = map->image_table();
    std::vector<Atom> table = forward;
    if (run.inverse) {
      table.assign(forward.size(), PartialMap::npos);
      for (auto [u, v] : map->pairs()) table[v] = u;
    }
    for (std::uint64_t k = 0; k < run.count; ++k) {
      Atom next = table[z];
      if (next == PartialMap::npos) {
        throw Error("jump by '" + run.map + "' from " + std::to_string(z) + " leaves its domain");
      }
      z = next;
    }
  }
  return z;
}

PathCheckSummary verify_connection_paths(const RotationSystem& sys, const std::string& full_step,
                                         const std::string& restricted_step, const Arc& arc,
                                         const std::vector<Atom>& xs) {
  sys.step(full_step);
  sys.step(restricted_step);
  arc.validate(sys.modulus());
  std::vector<std::uint64_t> lengths(xs.size(), 0);
  std::vector<char> ok(xs.size(), 0);
  const auto count = static_cast<std::int64_t>(xs.size());

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      lengths[k] = connection_path(sys, full_step, restricted_step, arc, xs[k]).length();
      ok[k] = 1;
    } catch (const Error&) {
      ok[k] = 0;
    }
  }

  PathCheckSummary summary;
  summary.checked = xs.size();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    summary.max_length = std::max(summary.max_length, lengths[k]);
    if (!ok[k]) {
      ++summary.failures;
      if (!summary.first_failure) summary.first_failure = xs[k];
    }
  }
  return summary;
}

std::size_t arc_length_for(const Rational& eps, std::size_t n) {
  if (eps <= 0 || eps > 1) throw Error("eps must lie in (0, 1], got " + to_string(eps));
  return static_cast<std::size_t>(costlab::ceil(eps * static_cast<long long>(n)));
}

EpsilonCurve cost_epsilon_curve(const RotationSystem& sys, const std::string& full_step,
                                const std::vector<Rational>& eps_list) {
  const auto& full = sys.step(full_step);
  if (sys.steps().size() < 2) throw Error("the restricted family needs at least two steps");
  const std::size_t n = sys.modulus();
  EpsilonCurve curve;
  curve.rows.resize(eps_list.size());
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    curve.rows[i].eps = eps_list[i];
    curve.rows[i].arc_len = arc_length_for(eps_list[i], n);
  }
  const Relation target = expected_relation(sys);
  const auto rows = static_cast<std::int64_t>(curve.rows.size());
  std::vector<std::exception_ptr> failures(curve.rows.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < rows; ++i) {
    auto& row = curve.rows[static_cast<std::size_t>(i)];
    try {
      const auto g = epsilon_graphing(sys, full_step, Arc{0, row.arc_len});
      row.cost = rel::cost(g);
      row.generates = rel::generates(g, target);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  if (std::gcd<std::uint64_t>(full.amount, n) == 1) curve.infimum = Rational(1);
  return curve;
}

}  // namespace costlab::rotation
