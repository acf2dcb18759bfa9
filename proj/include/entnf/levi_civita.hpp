#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace entnf {

/// Completely antisymmetric symbol of order n, stored sparsely as the n!
/// permutations of (0, ..., n-1) with their signs.
class LeviCivita {
 public:
  struct Entry {
    std::vector<std::size_t> perm;
    int sign;
  };

  explicit LeviCivita(std::size_t order);

  /// Shared instance; orders are small so every symbol is cached.
  static const LeviCivita& of(std::size_t order);

  std::size_t order() const noexcept { return order_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// epsilon_{i_1 ... i_n}: 0 on repeated or out-of-range indices, else +-1.
  int operator()(std::span<const std::size_t> index) const;

 private:
  std::size_t order_;
  std::vector<Entry> entries_;
};

/// Sign of the permutation (-1, 0 when the entries are not distinct).
int permutation_sign(std::span<const std::size_t> p);

}  // namespace entnf
