#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace yosida {

/// Selects between the OpenMP kernel and the serial reference loop.
///
/// Every data-parallel kernel in the library takes an `Execution` argument.
/// Per-item work is a pure function of the item index, so both policies
/// produce bit-identical results; the serial path is kept for testing and
/// for benchmarking the parallel one against.
enum class Execution { serial, parallel };

namespace detail {

// Runs body(i) for i in [0, count). Exceptions thrown by any iteration are
// captured and the first one is rethrown after the loop.
template <class Body>
void for_each_index(Execution exec, std::size_t count, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail
}  // namespace yosida
