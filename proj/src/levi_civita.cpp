#include "entnf/levi_civita.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace entnf {

int permutation_sign(std::span<const std::size_t> p) {
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

LeviCivita::LeviCivita(std::size_t order) : order_(order) {
  std::vector<std::size_t> perm(order);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    entries_.push_back({perm, permutation_sign(perm)});
  } while (std::next_permutation(perm.begin(), perm.end()));
}

const LeviCivita& LeviCivita::of(std::size_t order) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<LeviCivita>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<LeviCivita>(order);
  return *slot;
}

int LeviCivita::operator()(std::span<const std::size_t> index) const {
  if (index.size() != order_) return 0;
  for (auto i : index)
    if (i >= order_) return 0;
  return permutation_sign(index);
}

}  // namespace entnf
