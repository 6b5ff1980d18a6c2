#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fbl {

// Exact rational scalar used throughout. Values crossing module boundaries
// are always exact; floating point is confined to local search heuristics
// and every float-found witness is rationalized and re-verified exactly.
// Expression templates are off so the types compose with std::min/max.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

enum class Errc {
  parse,
  io,
  cyclic_order,
  not_a_lattice,
  not_distributive,
  not_a_hom,
  not_irreducible,
  order_violation,
  coordinate_order_violation,
  range_violation,
  lattice_mismatch,
  trivial_lattice,
  empty_separating_set,
  unknown_name,
  missing_param,
  param_error,
  unknown_scenario,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse: return "ParseError";
    case Errc::io: return "IoError";
    case Errc::cyclic_order: return "CyclicOrder";
    case Errc::not_a_lattice: return "NotALattice";
    case Errc::not_distributive: return "NotDistributive";
    case Errc::not_a_hom: return "NotAHomomorphism";
    case Errc::not_irreducible: return "NotIrreducible";
    case Errc::order_violation: return "OrderViolation";
    case Errc::coordinate_order_violation: return "CoordinateOrderViolation";
    case Errc::range_violation: return "RangeViolation";
    case Errc::lattice_mismatch: return "LatticeMismatch";
    case Errc::trivial_lattice: return "TrivialLattice";
    case Errc::empty_separating_set: return "EmptySeparatingSet";
    case Errc::unknown_name: return "UnknownName";
    case Errc::missing_param: return "MissingParam";
    case Errc::param_error: return "ParamError";
    case Errc::unknown_scenario: return "UnknownScenario";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

// Canonical form: reduced, denominator > 0, "p" when the denominator is 1,
// "p/q" otherwise. cpp_rational keeps this normal form for us.
inline std::string rat_str(const Rat& q) { return q.str(); }

inline Rat parse_rat(std::string_view text) {
  size_t a = text.find_first_not_of(" \t");
  size_t b = text.find_last_not_of(" \t");
  if (a == std::string_view::npos)
    throw Error(Errc::parse, "empty rational literal");
  std::string s(text.substr(a, b - a + 1));
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw Error(Errc::parse, "bad rational literal '" + s + "'");
  }
}

inline double rat_double(const Rat& q) { return q.convert_to<double>(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Best rational approximation with denominator <= max_den (continued
// fraction convergents). Lifts float search results back into exact
// arithmetic before re-verification.
inline Rat rationalize(double x, std::uint64_t max_den = (1ull << 20)) {
  if (std::isnan(x)) throw Error(Errc::internal, "cannot rationalize NaN");
  if (std::isinf(x)) throw Error(Errc::internal, "cannot rationalize infinity");
  bool neg = x < 0;
  double v = neg ? -x : x;
  std::uint64_t h1 = 1, h0 = 0, k1 = 0, k0 = 1;  // convergent recurrence
  std::uint64_t num = 0, den = 1;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double ip = std::floor(frac);
    if (ip > 9e18) break;
    std::uint64_t a = static_cast<std::uint64_t>(ip);
    // overflow-safe cap check: stop before a*k1 + k0 exceeds max_den
    if (k1 != 0 && (a > max_den || a > (max_den - k0) / k1)) break;
    if (h1 != 0 && a > (UINT64_MAX - h0) / h1) break;
    std::uint64_t h = a * h1 + h0;
    std::uint64_t k = a * k1 + k0;
    h0 = h1; h1 = h;
    k0 = k1; k1 = k;
    num = h1;
    den = k1 == 0 ? 1 : k1;
    double rem = frac - ip;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r{Int(num), Int(den)};
  return neg ? Rat(-r) : r;
}

// Deterministic PRNG wrapper. std::uniform_* distributions are not
// portable across standard libraries, so all reductions are explicit.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  // uniform in [0, n), n >= 1
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(u64()) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

  // uniform dyadic rational in [-1, 1] with denominator 2^bits
  Rat dyadic(unsigned bits = 16) {
    std::uint64_t den = 1ull << bits;
    std::uint64_t pick = below(2 * den + 1);  // numerator in [-den, den]
    Int num = Int(pick) - Int(den);
    return Rat{num, Int(den)};
  }

  double unit_double() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  // derive an independent, reproducible stream
  static SplitRng seeded(std::uint64_t seed, std::uint64_t salt) {
    return SplitRng(seed ^ (salt * 0x9e3779b97f4a7c15ull) ^ 0x2545f4914f6cdd1dull);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fbl
