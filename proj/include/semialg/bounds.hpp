#pragma once
//
// Exact big-integer evaluators for bounds on zero-nonzero patterns, sign
// conditions and Betti numbers.
//
// Where a bound is only known up to an unspecified constant, the constant is
// read from a ConstantProfile (default 1) and the report says so. Rational
// constants give rational values; such reports carry the exact value and
// round it up.
//

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semialg/polycore.hpp"

namespace semialg {

class ConstantProfile {
 public:
  ConstantProfile() = default;
  // Throws InputError unless every constant is > 0.
  explicit ConstantProfile(std::map<std::string, Rational> constants);

  // 1 when the name is not set.
  Rational get(const std::string& name) const;
  const std::map<std::string, Rational>& constants() const { return constants_; }

 private:
  std::map<std::string, Rational> constants_;
};

ConstantProfile constant_profile_from_json(const Json& j);
Json to_json(const ConstantProfile& c);

struct BoundReport {
  std::string theorem_id;
  Json params = Json::object();
  BigInt value = 0;
  Rational exact = 0;
  std::string formula;
  bool constant_parameterized = false;
  // Set for inequality checks (minimal_degree_check).
  std::optional<bool> check;
};

Json to_json(const BoundReport& r);

// D * sum_{i=0}^{p} C(s,i) d^i
BigInt zero_nonzero_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d);
// The explicit aggregation bounding the sum of b0 over all sign conditions.
BigInt sign_bound_explicit(unsigned long D, unsigned long p, unsigned long s, unsigned long d);
// 2^(2p+3) D^(p+1)
BigInt components_bound(unsigned long D, unsigned long p);
// Total Betti number of a non-singular complete intersection of the given
// equation degrees in projective N-space.
BigInt ci_betti(const std::vector<unsigned long>& degrees, unsigned long N);
// s^(p-i) D^2 (c d)^p, requires d >= D.
BigInt ci_sign_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                     unsigned long i, const ConstantProfile& c = {});
// D^4 (c s d)^(2p), requires d >= D.
BigInt cc_meeting_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                        const ConstantProfile& c = {});
BigInt bprplus_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                     unsigned long i);

enum class OpKind { algebraic_set, nonsingular_complement };
// 2d(4d-1)^(m-1) or 14d(4d-1)^(m-1).
BigInt op_bound(unsigned long d, unsigned long m, OpKind kind);

// Older bounds by name: warren, rbg, bpr, barone_basu, walsh,
// laszlo_viterbo, kharlamov, minimal_degree_check.
BoundReport legacy_bound(const std::string& theorem_id, const Json& params,
                         const ConstantProfile& c = {});

// Any calculator by name, parameters from a JSON object. Used by the CLI.
BoundReport compute_bound(const std::string& theorem_id, const Json& params,
                          const ConstantProfile& c = {});

// Names accepted by compute_bound.
std::vector<std::string> bound_ids();

}  // namespace semialg
