#include "costlab/space.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "costlab/error.hpp"

namespace costlab {

FiniteSpace::FiniteSpace(std::size_t n) : n_(n) {
  if (n == 0) throw Error("a finite space needs at least one atom");
}

Rational FiniteSpace::measure(std::size_t count) const {
  return Rational(static_cast<long long>(count), static_cast<long long>(n_));
}

PartialMap::PartialMap(std::string name, FiniteSpace space, std::vector<AtomPair> pairs)
    : name_(std::move(name)), space_(space), pairs_(std::move(pairs)) {
  const std::size_t n = space_.size();
  auto where = [&](const char* what, Atom x) {
    return Error("map '" + name_ + "': " + what + " atom " + std::to_string(x));
  };
  std::sort(pairs_.begin(), pairs_.end());
  std::vector<bool> seen_target(n, false);
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    auto [x, y] = pairs_[i];
    if (x >= n) throw where("source out of range:", x);
    if (y >= n) throw where("target out of range:", y);
    if (i > 0 && pairs_[i - 1].first == x) throw where("duplicate source", x);
    if (seen_target[y]) throw where("duplicate target (not injective)", y);
    seen_target[y] = true;
  }
}

std::optional<Atom> PartialMap::operator()(Atom x) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), AtomPair{x, 0});
  if (it == pairs_.end() || it->first != x) return std::nullopt;
  return it->second;
}

std::vector<Atom> PartialMap::image_table() const {
  std::vector<Atom> table(space_.size(), npos);
  for (auto [x, y] : pairs_) table[x] = y;
  return table;
}

PartialMap PartialMap::renamed(std::string name) const {
  PartialMap copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

Graphing::Graphing(FiniteSpace space, std::vector<PartialMap> maps)
    : space_(space), maps_(std::move(maps)) {
  std::unordered_set<std::string> names;
  for (const auto& m : maps_) {
    if (m.space() != space_) {
      throw Error("map '" + m.name() + "' lives on " + std::to_string(m.space().size()) +
                  " atoms, graphing on " + std::to_string(space_.size()));
    }
    if (!names.insert(m.name()).second) throw Error("duplicate map name '" + m.name() + "'");
  }
}

const PartialMap* Graphing::find(const std::string& name) const {
  for (const auto& m : maps_) {
    if (m.name() == name) return &m;
  }
  return nullptr;
}

std::vector<AtomPair> Graphing::all_pairs() const {
  std::vector<AtomPair> out;
  std::size_t total = 0;
  for (const auto& m : maps_) total += m.domain_size();
  out.reserve(total);
  for (const auto& m : maps_) out.insert(out.end(), m.pairs().begin(), m.pairs().end());
  return out;
}

Relation::Relation(FiniteSpace space, std::vector<Atom> rep) : space_(space), rep_(std::move(rep)) {
  for (Atom x = 0; x < rep_.size(); ++x) {
    if (rep_[x] == x) ++class_count_;
  }
}

Relation Relation::from_labels(FiniteSpace space, std::span<const std::size_t> labels) {
  if (labels.size() != space.size()) throw Error("label count does not match the space");
  std::unordered_map<std::size_t, Atom> first;
  first.reserve(labels.size());
  std::vector<Atom> rep(labels.size());
  for (Atom x = 0; x < labels.size(); ++x) {
    auto [it, inserted] = first.try_emplace(labels[x], x);
    rep[x] = it->second;
  }
  return Relation(space, std::move(rep));
}

Relation Relation::from_classes(FiniteSpace space, const std::vector<std::vector<Atom>>& classes) {
  const std::size_t n = space.size();
  std::vector<Atom> rep(n, PartialMap::npos);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw Error("class " + std::to_string(c) + " is empty");
    Atom lo = *std::min_element(classes[c].begin(), classes[c].end());
    if (lo >= n) throw Error("class " + std::to_string(c) + ": atom " + std::to_string(lo) + " out of range");
    for (Atom x : classes[c]) {
      if (x >= n) throw Error("class " + std::to_string(c) + ": atom " + std::to_string(x) + " out of range");
      if (rep[x] != PartialMap::npos) throw Error("atom " + std::to_string(x) + " appears in two classes");
      rep[x] = lo;
    }
  }
  for (Atom x = 0; x < n; ++x) {
    if (rep[x] == PartialMap::npos) throw Error("atom " + std::to_string(x) + " belongs to no class");
  }
  return Relation(space, std::move(rep));
}

Relation Relation::diagonal(FiniteSpace space) {
  std::vector<Atom> rep(space.size());
  for (Atom x = 0; x < rep.size(); ++x) rep[x] = x;
  return Relation(space, std::move(rep));
}

std::vector<std::vector<Atom>> Relation::classes() const {
  std::vector<std::size_t> slot(rep_.size(), 0);
  std::vector<std::vector<Atom>> out;
  out.reserve(class_count_);
  for (Atom x = 0; x < rep_.size(); ++x) {
    if (rep_[x] == x) {
      slot[x] = out.size();
      out.emplace_back();
    }
    out[slot[rep_[x]]].push_back(x);
  }
  return out;
}

EdgeSet::EdgeSet(FiniteSpace space, std::vector<AtomPair> edges) : space_(space), edges_(std::move(edges)) {
  for (auto [x, y] : edges_) {
    if (x >= space_.size() || y >= space_.size()) {
      throw Error("edge (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

std::size_t EdgeSet::loop_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const AtomPair& e) { return e.first == e.second; }));
}

Subset::Subset(FiniteSpace space, std::vector<Atom> members) : space_(space), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= space_.size()) {
    throw Error("subset atom " + std::to_string(members_.back()) + " out of range");
  }
}

Subset Subset::all(FiniteSpace space) {
  std::vector<Atom> members(space.size());
  for (Atom x = 0; x < members.size(); ++x) members[x] = x;
  return Subset(space, std::move(members));
}

std::vector<bool> Subset::mask() const {
  std::vector<bool> m(space_.size(), false);
  for (Atom x : members_) m[x] = true;
  return m;
}

}  // namespace costlab
