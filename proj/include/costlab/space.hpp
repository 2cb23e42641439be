#pragma once

// Finite models of a probability space and of the objects that live on it:
// partial measure-preserving bijections, graphings, equivalence relations,
// edge sets inside X x X, and subsets.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "costlab/rational.hpp"

namespace costlab {

using Atom = std::size_t;
using AtomPair = std::pair<Atom, Atom>;

/// N atoms of weight 1/N each.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::size_t n);

  std::size_t size() const { return n_; }
  Rational atom_measure() const { return Rational(1, static_cast<long long>(n_)); }
  /// Measure of `count` atoms.
  Rational measure(std::size_t count) const;
  bool contains(Atom x) const { return x < n_; }

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  std::size_t n_;
};

/// An injective partial self-map of the atoms. Pairs are kept sorted by
/// source. Under uniform weights injectivity is exactly measure preservation.
class PartialMap {
 public:
  /// Throws Error naming the map and the offending atom when the pairs are
  /// not functional, not injective, or out of range.
  PartialMap(std::string name, FiniteSpace space, std::vector<AtomPair> pairs);

  const std::string& name() const { return name_; }
  const FiniteSpace& space() const { return space_; }
  const std::vector<AtomPair>& pairs() const { return pairs_; }
  std::size_t domain_size() const { return pairs_.size(); }
  Rational domain_measure() const { return space_.measure(pairs_.size()); }

  /// Image of x, if x is in the domain.
  std::optional<Atom> operator()(Atom x) const;
  /// Dense table: image[x] or npos outside the domain.
  std::vector<Atom> image_table() const;
  /// True when the domain is every atom (then the map is a permutation).
  bool is_permutation() const { return pairs_.size() == space_.size(); }

  PartialMap renamed(std::string name) const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

  static constexpr Atom npos = static_cast<Atom>(-1);

 private:
  std::string name_;
  FiniteSpace space_;
  std::vector<AtomPair> pairs_;
};

/// An ordered family of named partial maps on one space.
class Graphing {
 public:
  explicit Graphing(FiniteSpace space, std::vector<PartialMap> maps = {});

  const FiniteSpace& space() const { return space_; }
  const std::vector<PartialMap>& maps() const { return maps_; }
  const PartialMap* find(const std::string& name) const;
  /// Every (source, target) pair across all maps, in map order.
  std::vector<AtomPair> all_pairs() const;

  friend bool operator==(const Graphing&, const Graphing&) = default;

 private:
  FiniteSpace space_;
  std::vector<PartialMap> maps_;
};

/// A partition of the atoms. rep()[x] is the minimum atom of x's class.
class Relation {
 public:
  /// Canonicalizes arbitrary labels: atoms with equal labels share a class.
  static Relation from_labels(FiniteSpace space, std::span<const std::size_t> labels);
  /// Throws Error unless `classes` is a partition of the atoms.
  static Relation from_classes(FiniteSpace space, const std::vector<std::vector<Atom>>& classes);
  /// Every atom alone.
  static Relation diagonal(FiniteSpace space);

  const FiniteSpace& space() const { return space_; }
  const std::vector<Atom>& rep() const { return rep_; }
  Atom rep(Atom x) const { return rep_[x]; }
  bool same_class(Atom x, Atom y) const { return rep_[x] == rep_[y]; }
  std::size_t class_count() const { return class_count_; }
  /// Classes sorted by representative, members ascending.
  std::vector<std::vector<Atom>> classes() const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.space_ == b.space_ && a.rep_ == b.rep_;
  }

 private:
  Relation(FiniteSpace space, std::vector<Atom> rep);

  FiniteSpace space_;
  std::vector<Atom> rep_;
  std::size_t class_count_ = 0;
};

/// A set of ordered pairs in X x X (sorted, no duplicates).
class EdgeSet {
 public:
  EdgeSet(FiniteSpace space, std::vector<AtomPair> edges);

  const FiniteSpace& space() const { return space_; }
  const std::vector<AtomPair>& edges() const { return edges_; }
  std::size_t loop_count() const;

 private:
  FiniteSpace space_;
  std::vector<AtomPair> edges_;
};

/// A set of atoms (sorted, no duplicates).
class Subset {
 public:
  Subset(FiniteSpace space, std::vector<Atom> members);
  static Subset all(FiniteSpace space);

  const FiniteSpace& space() const { return space_; }
  const std::vector<Atom>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  Rational measure() const { return space_.measure(members_.size()); }
  std::vector<bool> mask() const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  FiniteSpace space_;
  std::vector<Atom> members_;
};

}  // namespace costlab
