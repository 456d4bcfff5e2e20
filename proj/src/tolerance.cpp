#include "graff/tolerance.hpp"

#include <atomic>

#include "graff/errors.hpp"

namespace graff {

namespace {
std::atomic<double> g_tolerance{1e-10};
}

double default_tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_default_tolerance(double tol) {
  if (!(tol > 0.0) || tol >= 1.0) throw InvalidArgument("tolerance must lie in (0, 1)");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

}  // namespace graff
