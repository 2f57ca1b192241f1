#ifndef UALGEO_SYSTEMS_HPP_
#define UALGEO_SYSTEMS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "limits.hpp"
#include "radical.hpp"

namespace ualgeo {

  enum class PolicyKind {
    exhaustive,  // every subset of the off-diagonal pairs
    sample,      // seeded pseudo-random subsets
    automatic,   // exhaustive when within the system cap, else sample
  };

  std::string_view to_string(PolicyKind kind) noexcept;
  PolicyKind       parse_policy(std::string_view text);

  struct SystemPolicy {
    PolicyKind    kind  = PolicyKind::automatic;
    std::uint64_t seed  = 0;
    std::uint64_t count = 10000;
  };

  // Indexable, deterministic stream of systems over a free algebra of size m.
  // Exhaustive: system i is the subset of off_diagonal_pairs(m) selected by the
  // bits of i, so system 0 is empty. Sample: system 0 is the empty system and
  // system i > 0 includes each pair independently with probability 1/2, drawn
  // from a generator seeded by (seed, i) alone.
  class SystemEnumerator {
   public:
    SystemEnumerator(std::size_t         m,
                     SystemPolicy const& policy,
                     Limits const&       limits = Limits::defaults());

    // The policy actually used (never automatic).
    PolicyKind kind() const noexcept {
      return _kind;
    }

    std::uint64_t seed() const noexcept {
      return _seed;
    }

    std::uint64_t count() const noexcept {
      return _count;
    }

    std::vector<ElementPair> const& pair_set() const noexcept {
      return _pairs;
    }

    EquationSystem operator[](std::uint64_t i) const;

   private:
    std::vector<ElementPair> _pairs;
    PolicyKind               _kind;
    std::uint64_t            _seed;
    std::uint64_t            _count;
  };

  // Seeded 64-bit generator shared by every sampled computation.
  class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : _state(seed) {}

    std::uint64_t operator()() noexcept {
      std::uint64_t z = (_state += 0x9e3779b97f4a7c15ULL);
      z               = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z               = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept;

   private:
    std::uint64_t _state;
  };

  std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace ualgeo

#endif  // UALGEO_SYSTEMS_HPP_
