#pragma once

// Rotations of Z/N as a discretized circle, and the restricted generating
// family that keeps one rotation whole and the others only on an arc.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "costlab/space.hpp"

namespace costlab::rotation {

struct Step {
  std::string name;
  std::uint64_t amount;  // reduced mod n
};

class RotationSystem {
 public:
  /// Steps are reduced mod n (negative amounts allowed). Names must be unique.
  RotationSystem(std::size_t n, const std::vector<std::pair<std::string, std::int64_t>>& steps);

  std::size_t modulus() const { return n_; }
  const std::vector<Step>& steps() const { return steps_; }
  const Step& step(const std::string& name) const;  // throws Error
  FiniteSpace space() const { return FiniteSpace(n_); }

 private:
  std::size_t n_;
  std::vector<Step> steps_;
};

/// {start, start+1, ..., start+len-1} mod n.
struct Arc {
  Atom start = 0;
  std::size_t len = 0;

  void validate(std::size_t n) const;  // throws Error
  bool contains(std::size_t n, Atom x) const { return (x + n - start) % n < len; }
  Subset to_subset(std::size_t n) const;
};

/// The full rotation x -> x + amount mod n, restricted to `domain`.
PartialMap rotation_map(std::size_t n, const Step& step, const Subset& domain);

/// Cosets of g Z/nZ, g = gcd(n, steps...).
Relation expected_relation(const RotationSystem& sys);
/// Every rotation on the full space.
Graphing full_graphing(const RotationSystem& sys);
/// `full_step` on the whole space, every other step restricted to `arc`.
Graphing epsilon_graphing(const RotationSystem& sys, const std::string& full_step, const Arc& arc);

/// Least x >= 0 with (a x) mod m in [low, high]; nullopt if there is none.
/// Requires low <= high < m. O(log m) by a Euclid-style descent.
std::optional<std::uint64_t> first_multiple_in_range(std::uint64_t a, std::uint64_t m, std::uint64_t low,
                                                     std::uint64_t high);

/// Least m >= 0 with x + m*step mod n in the arc. Throws Error if none.
std::uint64_t first_hitting_time(std::size_t n, std::int64_t step, Atom x, const Arc& arc);

/// A run of `count` identical jumps. `inverse` applies the rotation backwards.
struct JumpRun {
  std::string map;
  bool inverse = false;
  std::uint64_t count = 0;
};

/// A jump path stored run-length encoded: a^m, then b restricted to the arc,
/// then a^{-m}.
struct ConnectionPath {
  Atom source = 0;
  Atom endpoint = 0;
  std::uint64_t hitting_time = 0;  // m
  std::vector<JumpRun> runs;

  std::uint64_t length() const;  // 2m + 1
};

/// Builds the path from x to x + s_b, checking that every jump of
/// `restricted_step` starts in the arc and that the endpoint is x + s_b.
/// Throws Error when the arc is unreachable or a check fails.
ConnectionPath connection_path(const RotationSystem& sys, const std::string& full_step,
                               const std::string& restricted_step, const Arc& arc, Atom x);

/// Replays the path one jump at a time through `g`'s maps; returns the final
/// atom or throws Error if a jump leaves a map's domain. O(length).
Atom replay_path(const Graphing& g, const ConnectionPath& path);

struct PathCheckSummary {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::uint64_t max_length = 0;
  std::optional<Atom> first_failure;
};

/// connection_path for every x in `xs`, in parallel. Never throws for a
/// failing point; failures are counted instead.
PathCheckSummary verify_connection_paths(const RotationSystem& sys, const std::string& full_step,
                                         const std::string& restricted_step, const Arc& arc,
                                         const std::vector<Atom>& xs);

struct CurveRow {
  Rational eps;
  std::size_t arc_len = 0;
  Rational cost;
  bool generates = false;
};

struct EpsilonCurve {
  std::vector<CurveRow> rows;  // in input order
  /// 1 when gcd(full step, n) = 1; unset otherwise.
  std::optional<Rational> infimum;
};

/// Arc [0, ceil(eps * n)) for each eps in (0, 1]. Rows are computed in
/// parallel; order follows `eps_list`.
EpsilonCurve cost_epsilon_curve(const RotationSystem& sys, const std::string& full_step,
                                const std::vector<Rational>& eps_list);

/// ceil(eps * n), validating 0 < eps <= 1.
std::size_t arc_length_for(const Rational& eps, std::size_t n);

}  // namespace costlab::rotation
