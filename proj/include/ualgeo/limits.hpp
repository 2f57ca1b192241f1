#ifndef UALGEO_LIMITS_HPP_
#define UALGEO_LIMITS_HPP_

#include <cstddef>
#include <cstdint>

namespace ualgeo {

  // Size caps for every construction that can blow up. Exceeding one is always
  // reported as ErrorKind::limit_exceeded, never by silent truncation.
  struct Limits {
    std::size_t carrier           = 4096;      // direct powers, products
    std::uint64_t hom_nodes       = 10000000;  // homomorphism / isomorphism search
    std::size_t congruence_enum   = 8;         // all_congruences
    std::size_t free_elements     = 4096;      // build_free
    std::size_t free_points       = 4096;      // |A|^n for build_free
    std::uint64_t systems         = 1u << 20;  // exhaustive system enumeration
    std::size_t terms             = 1000000;   // enumerate_terms
    std::size_t interval          = 100000;    // congruence interval search
    std::size_t family            = 1u << 16;  // exact t_map family size

    static Limits const& defaults() noexcept {
      static Limits const d{};
      return d;
    }
  };

}  // namespace ualgeo

#endif  // UALGEO_LIMITS_HPP_
