#pragma once

#include "fbl/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fbl {

// Input form of a finite lattice: element labels plus order pairs, either
// Hasse covers or arbitrary <=-pairs. The builder canonicalizes both.
struct LatticeSpec {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> order;  // (lo, hi)
  bool covers = true;
};

class FiniteLattice;
using LatticePtr = std::shared_ptr<const FiniteLattice>;

// A validated finite distributive lattice: full order matrix, meet/join
// tables, Hasse covers, join-irreducibles. Immutable after construction and
// safe to share read-only across threads.
class FiniteLattice {
 public:
  static LatticePtr build(const LatticeSpec& spec);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  int index(const std::string& label) const;
  std::optional<int> find(const std::string& label) const;

  bool leq(int x, int y) const { return leq_[x][y]; }
  bool lt(int x, int y) const { return x != y && leq_[x][y]; }
  int meet(int x, int y) const { return meet_[x][y]; }
  int join(int x, int y) const { return join_[x][y]; }
  bool covers(int lo, int hi) const { return covers_[lo][hi]; }

  int bottom() const { return bottom_; }
  int top() const { return top_; }

  const std::vector<int>& irreducibles() const { return irreducibles_; }
  bool is_irreducible(int x) const { return irreducible_mask_[x]; }

  // {p join-irreducible : p <= z}; join of the result is z (empty = bottom).
  std::vector<int> join_irreducible_decomposition(int z) const;

  LatticeSpec to_spec() const;  // canonical cover form

 private:
  FiniteLattice() = default;

  std::string name_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<bool>> covers_;
  std::vector<std::vector<int>> meet_;
  std::vector<std::vector<int>> join_;
  std::vector<int> irreducibles_;
  std::vector<bool> irreducible_mask_;
  int bottom_ = 0;
  int top_ = 0;
};

// Structural identity: same labels in the same order and the same order
// matrix. Distinct builds of equal lattices are interchangeable.
bool same_lattice(const FiniteLattice& a, const FiniteLattice& b);
bool same_lattice(const LatticePtr& a, const LatticePtr& b);

// A validated lattice homomorphism between two finite lattices.
class LatticeHom {
 public:
  static LatticeHom build(LatticePtr source, LatticePtr target,
                          const std::vector<int>& map);
  static LatticeHom build_by_labels(
      LatticePtr source, LatticePtr target,
      const std::vector<std::pair<std::string, std::string>>& assignments);
  static LatticeHom identity(LatticePtr lattice);

  const LatticePtr& source() const { return source_; }
  const LatticePtr& target() const { return target_; }
  int apply(int x) const { return map_.at(x); }
  const std::vector<int>& table() const { return map_; }

  bool is_surjective() const;
  bool is_injective() const;

 private:
  LatticeHom(LatticePtr s, LatticePtr t, std::vector<int> m)
      : source_(std::move(s)), target_(std::move(t)), map_(std::move(m)) {}

  LatticePtr source_, target_;
  std::vector<int> map_;
};

LatticeHom compose(const LatticeHom& after, const LatticeHom& first);

// Same carrier, order reversed; meet and join tables swap.
LatticePtr opposite_lattice(const LatticePtr& lattice);

// The interval [a,b] = {x : a <= x <= b} as a lattice of its own.
struct IntervalSublattice {
  LatticePtr parent;
  int a = 0, b = 0;
  std::vector<int> carrier;  // parent indices, in parent element order
  LatticePtr lattice;        // the interval as a standalone lattice
};

IntervalSublattice interval_sublattice(const LatticePtr& lattice,
                                       const std::string& a,
                                       const std::string& b);

// inclusion i : [a,b] -> L and retraction r(x) = a v (x ^ b), with
// r(i(x)) = x on the interval. Throws OrderViolation unless a <= b.
struct IntervalRetraction {
  IntervalSublattice interval;
  LatticeHom inclusion;
  LatticeHom retraction;
};

IntervalRetraction interval_retraction(const LatticePtr& lattice,
                                       const std::string& a,
                                       const std::string& b);

// Built-in families. Descriptors: "chain:n", "powerset:n",
// "bottomed_powerset:n", "diamond", "pentagon", "five_point".
// diamond (M3) and pentagon (N5) fail the distributivity check by design;
// builtin_lattice throws for them while builtin_lattice_spec does not.
LatticeSpec builtin_lattice_spec(const std::string& descriptor);
LatticePtr builtin_lattice(const std::string& descriptor);
std::vector<std::string> builtin_lattice_names();

// Exhaustive search for a lattice isomorphism (desk scale only).
bool lattices_isomorphic(const FiniteLattice& a, const FiniteLattice& b);

}  // namespace fbl
