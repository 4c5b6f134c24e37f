#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "afc/errors.hpp"
#include "afc/fpset.hpp"
#include "afc/rng.hpp"

namespace afc {

// Set-literal grammar, shared by the CLI and file ingestion:
//   "1,5,9"          explicit elements
//   "0..100"         half-open range
//   "ap:start,step,len"   arithmetic progression (mod p)
//   "gp:g,len"       geometric progression g^0 .. g^{len-1}
//   "subgroup:d"     the order-d subgroup of Z_p^*, requires d | p-1
//   "random:size[,seed]"  uniform without replacement; "seed=N" also accepted
// The trailing seed argument is used when the literal does not embed one.

namespace detail {

inline u64 parse_u64(const std::string& s, const char* what) {
  require(!s.empty(), "bad_setspec", std::string("missing number in ") + what);
  u64 v = 0;
  for (char c : s) {
    require(c >= '0' && c <= '9', "bad_setspec",
            std::string("bad number '") + s + "' in " + what);
    require(v <= (UINT64_MAX - (c - '0')) / 10, "bad_setspec", "number too large: " + s);
    v = v * 10 + static_cast<u64>(c - '0');
  }
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace detail

inline FpSet generate_set(const Prime& prime, const std::string& spec, u64 seed = 0) {
  using detail::parse_u64;
  using detail::split;
  const u64 p = prime.value();
  require(!spec.empty(), "bad_setspec", "empty set spec");

  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    auto args = split(rest, ',');
    if (kind == "ap") {
      require(args.size() == 3, "bad_setspec", "ap wants start,step,len: " + spec);
      u64 start = parse_u64(args[0], "ap") % p;
      u64 step = parse_u64(args[1], "ap") % p;
      u64 len = parse_u64(args[2], "ap");
      require(len <= p, "bad_setspec", "ap length exceeds p");
      BitVec bits(p);
      u64 x = start;
      for (u64 i = 0; i < len; ++i) {
        bits.set(x);
        x = addmod(x, step, p);
      }
      return FpSet(prime, std::move(bits));
    }
    if (kind == "gp") {
      require(args.size() == 2, "bad_setspec", "gp wants g,len: " + spec);
      u64 g = parse_u64(args[0], "gp") % p;
      u64 len = parse_u64(args[1], "gp");
      require(g != 0, "bad_setspec", "gp ratio must be nonzero");
      require(len <= p, "bad_setspec", "gp length exceeds p");
      BitVec bits(p);
      u64 x = 1 % p;
      for (u64 i = 0; i < len; ++i) {
        bits.set(x);
        x = mulmod(x, g, p);
      }
      return FpSet(prime, std::move(bits));
    }
    if (kind == "subgroup") {
      require(args.size() == 1, "bad_setspec", "subgroup wants an order: " + spec);
      u64 d = parse_u64(args[0], "subgroup");
      require(d >= 1 && (p - 1) % d == 0, "bad_setspec",
              "subgroup order " + std::to_string(d) + " does not divide p-1");
      u64 h = powmod(prime.generator(), (p - 1) / d, p);
      BitVec bits(p);
      u64 x = 1;
      for (u64 i = 0; i < d; ++i) {
        bits.set(x);
        x = mulmod(x, h, p);
      }
      return FpSet(prime, std::move(bits));
    }
    if (kind == "random") {
      require(args.size() == 1 || args.size() == 2, "bad_setspec",
              "random wants size[,seed]: " + spec);
      u64 size = parse_u64(args[0], "random");
      require(size <= p, "bad_setspec", "random size exceeds p");
      u64 s = seed;
      if (args.size() == 2) {
        std::string a = args[1];
        if (a.rfind("seed=", 0) == 0) a = a.substr(5);
        s = parse_u64(a, "random seed");
      }
      return FpSet(prime, sample_without_replacement(p, size, hash_seed({p, size, s})));
    }
    fail_contract("bad_setspec", "unknown set generator '" + kind + "'");
  }

  auto dots = spec.find("..");
  if (dots != std::string::npos) {
    u64 lo = parse_u64(spec.substr(0, dots), "range");
    u64 hi = parse_u64(spec.substr(dots + 2), "range");
    require(lo <= hi && hi <= p, "bad_setspec",
            "range " + spec + " not within [0, p]");
    BitVec bits(p);
    for (u64 v = lo; v < hi; ++v) bits.set(v);
    return FpSet(prime, std::move(bits));
  }

  std::vector<u64> elems;
  for (const auto& part : detail::split(spec, ',')) {
    u64 v = parse_u64(part, "element list");
    require(v < p, "bad_setspec", "element " + part + " outside [0, p)");
    elems.push_back(v);
  }
  return FpSet(prime, elems);
}

inline nlohmann::ordered_json set_to_json(const FpSet& s) {
  nlohmann::ordered_json j;
  j["p"] = s.modulus();
  j["elements"] = s.elements();
  return j;
}

inline FpSet set_from_json(const nlohmann::json& j) {
  require(j.contains("p") && j.contains("elements"), "parse", "set JSON wants {p, elements}");
  Prime prime(j.at("p").get<u64>());
  return FpSet(prime, j.at("elements").get<std::vector<u64>>());
}

}  // namespace afc
