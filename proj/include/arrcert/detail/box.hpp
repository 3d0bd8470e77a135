#pragma once

#include <memory>
#include <mutex>

namespace arrcert {
class IntersectionLattice;
}

namespace arrcert::detail {

/// Lazily computed per-arrangement data. Copies of an Arrangement share the
/// box, so derived data is computed at most once per underlying value.
struct LatticeBox {
  std::mutex mutex;
  std::shared_ptr<const IntersectionLattice> lattice;
  int rank = -1;
};

}  // namespace arrcert::detail
