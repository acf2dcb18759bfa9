#include "entnf/states.hpp"

#include <cmath>

namespace entnf::states {

namespace {

MultiTensor from_terms(const Dims& dims,
                       const std::vector<std::pair<std::vector<std::size_t>, double>>& terms) {
  MultiTensor psi(dims);
  for (const auto& [index, amp] : terms) psi(index) += amp;
  return psi;
}

}  // namespace

MultiTensor bell() {
  const double h = 1.0 / std::sqrt(2.0);
  return from_terms({2, 2}, {{{0, 0}, h}, {{1, 1}, h}});
}

MultiTensor ghz(std::size_t parties) {
  if (parties < 2) throw InvalidArgument("ghz needs at least two parties");
  const double h = 1.0 / std::sqrt(2.0);
  return from_terms(Dims(parties, 2), {{std::vector<std::size_t>(parties, 0), h},
                                       {std::vector<std::size_t>(parties, 1), h}});
}

MultiTensor w() {
  const double t = 1.0 / std::sqrt(3.0);
  return from_terms({2, 2, 2}, {{{0, 0, 1}, t}, {{0, 1, 0}, t}, {{1, 0, 0}, t}});
}

MultiTensor two_bell_product() {
  return from_terms({2, 2, 2, 2}, {{{0, 0, 0, 0}, 0.5},
                                   {{0, 0, 1, 1}, 0.5},
                                   {{1, 1, 0, 0}, 0.5},
                                   {{1, 1, 1, 1}, 0.5}});
}

MultiTensor ghz_224() {
  return from_terms({2, 2, 4}, {{{0, 0, 0}, 0.5},
                                {{0, 1, 1}, 0.5},
                                {{1, 0, 2}, 0.5},
                                {{1, 1, 3}, 0.5}});
}

MultiTensor ghz_223() {
  const double t = 1.0 / std::sqrt(3.0), s = 1.0 / std::sqrt(6.0);
  return from_terms({2, 2, 3}, {{{0, 0, 0}, t},
                                {{0, 1, 1}, s},
                                {{1, 0, 1}, s},
                                {{1, 1, 2}, t}});
}

MultiTensor unbounded_example(double a) {
  return from_terms({2, 2, 2, 2}, {{{0, 0, 0, 0}, a},
                                   {{1, 1, 1, 1}, a},
                                   {{0, 1, 1, 0}, 1.0},
                                   {{0, 1, 0, 1}, 1.0}});
}

MultiTensor basis(const Dims& dims, const std::vector<std::size_t>& index) {
  MultiTensor psi(dims);
  psi(index) = 1.0;
  return psi;
}

MultiTensor make(const CanonicalStateId& id) {
  MultiTensor psi;
  switch (id.name) {
    case Canonical::bell: psi = bell(); break;
    case Canonical::ghz: psi = ghz(id.parties); break;
    case Canonical::w: psi = w(); break;
    case Canonical::two_bell_product: psi = two_bell_product(); break;
    case Canonical::ghz_224: psi = ghz_224(); break;
    case Canonical::ghz_223: psi = ghz_223(); break;
    case Canonical::unbounded_example: psi = unbounded_example(id.a); break;
  }
  if (id.normalized && psi.norm() > 0.0) {
    psi = psi.normalized();
  } else if (!id.normalized && id.name == Canonical::w) {
    psi = psi.scaled(std::sqrt(3.0));  // |001> + |010> + |100>
  }
  return psi;
}

namespace {

const std::vector<std::pair<std::string, Canonical>>& table() {
  static const std::vector<std::pair<std::string, Canonical>> t = {
      {"bell", Canonical::bell},
      {"ghz", Canonical::ghz},
      {"w", Canonical::w},
      {"two_bell_product", Canonical::two_bell_product},
      {"ghz_224", Canonical::ghz_224},
      {"ghz_223", Canonical::ghz_223},
      {"unbounded_example", Canonical::unbounded_example}};
  return t;
}

}  // namespace

Canonical parse_name(const std::string& name) {
  for (const auto& [n, c] : table())
    if (n == name) return c;
  throw Error("unknown_state", "unknown state '" + name + "'");
}

std::string name_of(Canonical c) {
  for (const auto& [n, v] : table())
    if (v == c) return n;
  return "unknown";
}

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (const auto& entry : table()) out.push_back(entry.first);
  return out;
}

}  // namespace entnf::states
