#ifndef HELMFIELD_TEST_SUPPORT_HPP
#define HELMFIELD_TEST_SUPPORT_HPP

#include <cstring>

#include "helmfield/common.hpp"

namespace helmfield::testing {

// Bit-for-bit equality, the strongest determinism check available.
template <typename Derived>
bool bits_equal(const Eigen::MatrixBase<Derived>& a,
                const Eigen::MatrixBase<Derived>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const auto ea = a.eval();
  const auto eb = b.eval();
  return std::memcmp(ea.data(), eb.data(),
                     sizeof(typename Derived::Scalar) * ea.size()) == 0;
}

}  // namespace helmfield::testing

#endif
