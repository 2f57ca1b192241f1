#include "ualgeo/systems.hpp"

#include "ualgeo/error.hpp"

namespace ualgeo {

  std::string_view to_string(PolicyKind kind) noexcept {
    switch (kind) {
      case PolicyKind::exhaustive:
        return "exhaustive";
      case PolicyKind::sample:
        return "sample";
      case PolicyKind::automatic:
        return "auto";
    }
    return "?";
  }

  PolicyKind parse_policy(std::string_view text) {
    if (text == "exhaustive") {
      return PolicyKind::exhaustive;
    }
    if (text == "sample") {
      return PolicyKind::sample;
    }
    if (text == "auto") {
      return PolicyKind::automatic;
    }
    fail(ErrorKind::invalid_input, "unknown policy \"" + std::string(text) + "\"");
  }

  std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    // Rejection sampling keeps the result unbiased and platform independent.
    std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t       x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    SplitMix64 g(seed ^ (stream * 0xd1b54a32d192ed03ULL));
    g();
    return g();
  }

  SystemEnumerator::SystemEnumerator(std::size_t         m,
                                     SystemPolicy const& policy,
                                     Limits const&       limits)
      : _pairs(off_diagonal_pairs(m)),
        _kind(policy.kind),
        _seed(policy.seed),
        _count(policy.count) {
    bool const fits = _pairs.size() < 64
                      && (std::uint64_t(1) << _pairs.size()) <= limits.systems;
    if (_kind == PolicyKind::automatic) {
      _kind = fits ? PolicyKind::exhaustive : PolicyKind::sample;
    }
    if (_kind == PolicyKind::exhaustive) {
      if (!fits) {
        fail(ErrorKind::limit_exceeded,
             std::to_string(_pairs.size())
                 + " off-diagonal pairs exceed the exhaustive system cap "
                 + std::to_string(limits.systems));
      }
      _count = std::uint64_t(1) << _pairs.size();
      _seed  = 0;
    } else if (_count == 0) {
      fail(ErrorKind::invalid_input, "sample count must be positive");
    }
  }

  EquationSystem SystemEnumerator::operator[](std::uint64_t i) const {
    std::vector<ElementPair> chosen;
    if (_kind == PolicyKind::exhaustive) {
      for (std::size_t b = 0; b < _pairs.size(); ++b) {
        if (i >> b & 1) {
          chosen.push_back(_pairs[b]);
        }
      }
    } else if (i != 0) {
      SplitMix64 g(mix_seed(_seed, i));
      for (std::size_t b = 0; b < _pairs.size(); ++b) {
        if (g() >> 63) {
          chosen.push_back(_pairs[b]);
        }
      }
    }
    return EquationSystem(chosen);
  }

}  // namespace ualgeo
