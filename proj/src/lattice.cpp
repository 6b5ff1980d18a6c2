#include "fbl/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace fbl {

namespace {

std::string pair_str(const std::string& a, const std::string& b) {
  return "(" + a + ", " + b + ")";
}

}  // namespace

int FiniteLattice::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw Error(Errc::unknown_name, "unknown element '" + label + "' in lattice " + name_);
  return it->second;
}

std::optional<int> FiniteLattice::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LatticePtr FiniteLattice::build(const LatticeSpec& spec) {
  auto lat = std::shared_ptr<FiniteLattice>(new FiniteLattice());
  lat->name_ = spec.name;
  lat->labels_ = spec.elements;
  const int n = static_cast<int>(spec.elements.size());
  if (n == 0) throw Error(Errc::param_error, "lattice needs at least one element");

  for (int i = 0; i < n; ++i) {
    if (!lat->index_.emplace(lat->labels_[i], i).second)
      throw Error(Errc::parse, "duplicate element label '" + lat->labels_[i] + "'");
  }

  // Relation closure: both cover pairs and <=-pairs canonicalize through the
  // same reflexive-transitive closure.
  auto& leq = lat->leq_;
  leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  for (const auto& [lo, hi] : spec.order) {
    leq[lat->index(lo)][lat->index(hi)] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (int j = 0; j < n; ++j)
        if (leq[k][j]) leq[i][j] = true;
    }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq[i][j] && leq[j][i])
        throw Error(Errc::cyclic_order,
                    "order cycle through " + pair_str(lat->labels_[i], lat->labels_[j]));

  // Meet/join tables as greatest lower / least upper bounds.
  lat->meet_.assign(n, std::vector<int>(n, -1));
  lat->join_.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      // the running candidate is always a common bound, so the true
      // extremum (if any) replaces it when scanned and then sticks
      int m = -1;
      for (int z = 0; z < n; ++z)
        if (leq[z][x] && leq[z][y] && (m == -1 || leq[m][z])) m = z;
      if (m != -1)
        for (int z = 0; z < n; ++z)
          if (leq[z][x] && leq[z][y] && !leq[z][m]) { m = -1; break; }
      if (m == -1)
        throw Error(Errc::not_a_lattice,
                    "pair " + pair_str(lat->labels_[x], lat->labels_[y]) + " has no meet");
      int j = -1;
      for (int z = 0; z < n; ++z)
        if (leq[x][z] && leq[y][z] && (j == -1 || leq[z][j])) j = z;
      if (j != -1)
        for (int z = 0; z < n; ++z)
          if (leq[x][z] && leq[y][z] && !leq[j][z]) { j = -1; break; }
      if (j == -1)
        throw Error(Errc::not_a_lattice,
                    "pair " + pair_str(lat->labels_[x], lat->labels_[y]) + " has no join");
      lat->meet_[x][y] = lat->meet_[y][x] = m;
      lat->join_[x][y] = lat->join_[y][x] = j;
    }
  }

  // Eager distributivity validation; desk-scale lattices keep O(n^3) cheap.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int lhs = lat->meet_[x][lat->join_[y][z]];
        int rhs = lat->join_[lat->meet_[x][y]][lat->meet_[x][z]];
        if (lhs != rhs)
          throw Error(Errc::not_distributive,
                      "distributivity fails at triple (" + lat->labels_[x] + ", " +
                          lat->labels_[y] + ", " + lat->labels_[z] + ")");
      }

  // Transitive reduction -> covers.
  lat->covers_.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool direct = true;
      for (int k = 0; k < n; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) { direct = false; break; }
      lat->covers_[i][j] = direct;
    }

  // Join-irreducibles: exactly one lower cover. The bottom has none, so the
  // empty-join convention excludes it automatically.
  lat->irreducible_mask_.assign(n, false);
  for (int j = 0; j < n; ++j) {
    int lower = 0;
    for (int i = 0; i < n; ++i)
      if (lat->covers_[i][j]) ++lower;
    if (lower == 1) {
      lat->irreducible_mask_[j] = true;
      lat->irreducibles_.push_back(j);
    }
  }

  int bot = 0, top = 0;
  for (int i = 0; i < n; ++i) {
    bot = lat->meet_[bot][i];
    top = lat->join_[top][i];
  }
  lat->bottom_ = bot;
  lat->top_ = top;
  return lat;
}

std::vector<int> FiniteLattice::join_irreducible_decomposition(int z) const {
  std::vector<int> out;
  for (int p : irreducibles_)
    if (leq_[p][z]) out.push_back(p);
  return out;
}

LatticeSpec FiniteLattice::to_spec() const {
  LatticeSpec spec;
  spec.name = name_;
  spec.elements = labels_;
  spec.covers = true;
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (covers_[i][j]) spec.order.emplace_back(labels_[i], labels_[j]);
  return spec;
}

bool same_lattice(const FiniteLattice& a, const FiniteLattice& b) {
  if (&a == &b) return true;
  if (a.labels() != b.labels()) return false;
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.leq(i, j) != b.leq(i, j)) return false;
  return true;
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (!a || !b) return a == b;
  return same_lattice(*a, *b);
}

LatticeHom LatticeHom::build(LatticePtr source, LatticePtr target,
                             const std::vector<int>& map) {
  if (!source || !target) throw Error(Errc::param_error, "homomorphism needs both lattices");
  const int n = source->size();
  if (static_cast<int>(map.size()) != n)
    throw Error(Errc::param_error, "homomorphism map must cover every source element");
  for (int v : map)
    if (v < 0 || v >= target->size())
      throw Error(Errc::param_error, "homomorphism map hits an unknown target element");
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (map[source->meet(x, y)] != target->meet(map[x], map[y]) ||
          map[source->join(x, y)] != target->join(map[x], map[y]))
        throw Error(Errc::not_a_hom,
                    "map does not preserve meet/join at (" + source->label(x) + ", " +
                        source->label(y) + ")");
    }
  return LatticeHom(std::move(source), std::move(target), map);
}

LatticeHom LatticeHom::build_by_labels(
    LatticePtr source, LatticePtr target,
    const std::vector<std::pair<std::string, std::string>>& assignments) {
  if (!source || !target) throw Error(Errc::param_error, "homomorphism needs both lattices");
  std::vector<int> map(source->size(), -1);
  for (const auto& [from, to] : assignments) {
    map[source->index(from)] = target->index(to);
  }
  for (int i = 0; i < source->size(); ++i)
    if (map[i] < 0)
      throw Error(Errc::param_error, "element '" + source->label(i) + "' is unmapped");
  return build(std::move(source), std::move(target), map);
}

LatticeHom LatticeHom::identity(LatticePtr lattice) {
  std::vector<int> map(lattice->size());
  std::iota(map.begin(), map.end(), 0);
  LatticePtr copy = lattice;
  return LatticeHom(std::move(lattice), std::move(copy), std::move(map));
}

bool LatticeHom::is_surjective() const {
  std::vector<bool> hit(target_->size(), false);
  for (int v : map_) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool LatticeHom::is_injective() const {
  std::set<int> seen(map_.begin(), map_.end());
  return static_cast<int>(seen.size()) == source_->size();
}

LatticeHom compose(const LatticeHom& after, const LatticeHom& first) {
  if (!same_lattice(first.target(), after.source()))
    throw Error(Errc::lattice_mismatch, "homomorphisms do not compose");
  std::vector<int> map(first.source()->size());
  for (int i = 0; i < first.source()->size(); ++i) map[i] = after.apply(first.apply(i));
  return LatticeHom::build(first.source(), after.target(), map);
}

LatticePtr opposite_lattice(const LatticePtr& lattice) {
  LatticeSpec spec;
  spec.name = lattice->name() + "^op";
  spec.elements = lattice->labels();
  spec.covers = false;
  const int n = lattice->size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && lattice->leq(j, i)) spec.order.emplace_back(lattice->label(i), lattice->label(j));
  return FiniteLattice::build(spec);
}

IntervalSublattice interval_sublattice(const LatticePtr& lattice,
                                       const std::string& a_label,
                                       const std::string& b_label) {
  int a = lattice->index(a_label);
  int b = lattice->index(b_label);
  if (!lattice->leq(a, b))
    throw Error(Errc::order_violation,
                "interval endpoints must satisfy " + a_label + " <= " + b_label);
  IntervalSublattice iv;
  iv.parent = lattice;
  iv.a = a;
  iv.b = b;
  LatticeSpec spec;
  spec.name = lattice->name() + "[" + a_label + "," + b_label + "]";
  spec.covers = false;
  for (int x = 0; x < lattice->size(); ++x)
    if (lattice->leq(a, x) && lattice->leq(x, b)) {
      iv.carrier.push_back(x);
      spec.elements.push_back(lattice->label(x));
    }
  for (int x : iv.carrier)
    for (int y : iv.carrier)
      if (x != y && lattice->leq(x, y))
        spec.order.emplace_back(lattice->label(x), lattice->label(y));
  iv.lattice = FiniteLattice::build(spec);
  return iv;
}

IntervalRetraction interval_retraction(const LatticePtr& lattice,
                                       const std::string& a_label,
                                       const std::string& b_label) {
  IntervalSublattice iv = interval_sublattice(lattice, a_label, b_label);
  std::vector<int> inc(iv.lattice->size());
  for (int i = 0; i < iv.lattice->size(); ++i)
    inc[i] = lattice->index(iv.lattice->label(i));
  LatticeHom inclusion = LatticeHom::build(iv.lattice, lattice, inc);

  // r(x) = a v (x ^ b); a lattice homomorphism because L is distributive.
  std::vector<int> ret(lattice->size());
  for (int x = 0; x < lattice->size(); ++x) {
    int clipped = lattice->join(iv.a, lattice->meet(x, iv.b));
    ret[x] = iv.lattice->index(lattice->label(clipped));
  }
  LatticeHom retraction = LatticeHom::build(lattice, iv.lattice, ret);
  return IntervalRetraction{std::move(iv), std::move(inclusion), std::move(retraction)};
}

namespace {

std::string subset_label(unsigned mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

LatticeSpec powerset_spec(int n, bool bottomed) {
  if (n < 0 || n > 10) throw Error(Errc::param_error, "powerset size out of range");
  LatticeSpec spec;
  spec.name = (bottomed ? "bottomed_powerset(" : "powerset(") + std::to_string(n) + ")";
  spec.covers = true;
  if (bottomed) spec.elements.push_back("0hat");
  const unsigned total = 1u << n;
  for (unsigned m = 0; m < total; ++m) spec.elements.push_back(subset_label(m, n));
  if (bottomed) spec.order.emplace_back("0hat", subset_label(0, n));
  for (unsigned m = 0; m < total; ++m)
    for (int i = 0; i < n; ++i)
      if (!(m & (1u << i)))
        spec.order.emplace_back(subset_label(m, n), subset_label(m | (1u << i), n));
  return spec;
}

}  // namespace

LatticeSpec builtin_lattice_spec(const std::string& descriptor) {
  std::string name = descriptor;
  int param = -1;
  if (auto colon = descriptor.find(':'); colon != std::string::npos) {
    name = descriptor.substr(0, colon);
    try {
      param = std::stoi(descriptor.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(Errc::param_error, "bad parameter in lattice descriptor '" + descriptor + "'");
    }
  }
  if (name == "chain") {
    if (param < 1 || param > 64) throw Error(Errc::param_error, "chain length out of range");
    LatticeSpec spec;
    spec.name = "chain(" + std::to_string(param) + ")";
    spec.covers = true;
    for (int i = 0; i < param; ++i) spec.elements.push_back("e" + std::to_string(i));
    for (int i = 0; i + 1 < param; ++i)
      spec.order.emplace_back("e" + std::to_string(i), "e" + std::to_string(i + 1));
    return spec;
  }
  if (name == "powerset") {
    if (param < 0) throw Error(Errc::missing_param, "powerset needs a size, e.g. powerset:2");
    return powerset_spec(param, false);
  }
  if (name == "bottomed_powerset") {
    if (param < 0)
      throw Error(Errc::missing_param, "bottomed_powerset needs a size, e.g. bottomed_powerset:2");
    return powerset_spec(param, true);
  }
  if (name == "diamond") {
    LatticeSpec spec;
    spec.name = "diamond";
    spec.covers = true;
    spec.elements = {"0", "x", "y", "z", "1"};
    spec.order = {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "1"}, {"y", "1"}, {"z", "1"}};
    return spec;
  }
  if (name == "pentagon") {
    LatticeSpec spec;
    spec.name = "pentagon";
    spec.covers = true;
    spec.elements = {"0", "a", "c", "b", "1"};
    spec.order = {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}};
    return spec;
  }
  if (name == "five_point") {
    LatticeSpec spec;
    spec.name = "five_point";
    spec.covers = true;
    spec.elements = {"0", "a", "b", "c", "1"};
    spec.order = {{"0", "a"}, {"a", "b"}, {"a", "c"}, {"b", "1"}, {"c", "1"}};
    return spec;
  }
  throw Error(Errc::unknown_name, "unknown builtin lattice '" + descriptor + "'");
}

LatticePtr builtin_lattice(const std::string& descriptor) {
  return FiniteLattice::build(builtin_lattice_spec(descriptor));
}

std::vector<std::string> builtin_lattice_names() {
  return {"chain:n", "powerset:n", "bottomed_powerset:n", "diamond", "pentagon", "five_point"};
}

bool lattices_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  const int n = a.size();
  if (n != b.size()) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (a.leq(i, j) != b.leq(perm[i], perm[j])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace fbl
