#pragma once

#include <string>
#include <vector>

#include "entnf/tensor.hpp"

namespace entnf::states {

enum class Canonical { bell, ghz, w, two_bell_product, ghz_224, ghz_223, unbounded_example };

/// Identifies one canonical state. `parties` is used by `ghz` only, `a` by
/// `unbounded_example` only.
struct CanonicalStateId {
  Canonical name = Canonical::bell;
  std::size_t parties = 3;
  double a = 1.0;
  bool normalized = true;
};

MultiTensor make(const CanonicalStateId& id);

/// Parses names as used on the command line: bell, ghz, w, two_bell_product,
/// ghz_224, ghz_223, unbounded_example. Throws Error("unknown_state") otherwise.
Canonical parse_name(const std::string& name);
std::string name_of(Canonical c);
std::vector<std::string> names();

MultiTensor bell();
MultiTensor ghz(std::size_t parties);
MultiTensor w();
/// Bell pair on parties (1,2) times Bell pair on parties (3,4).
MultiTensor two_bell_product();
/// (|000> + |011> + |102> + |113>) / 2.
MultiTensor ghz_224();
/// |000>/sqrt3 + |011>/sqrt6 + |101>/sqrt6 + |112>/sqrt3.
MultiTensor ghz_223();
/// a(|0000> + |1111>) + |0110> + |0101>, unnormalized.
MultiTensor unbounded_example(double a);
/// Computational basis product state |i_1 ... i_p>.
MultiTensor basis(const Dims& dims, const std::vector<std::size_t>& index);

}  // namespace entnf::states
