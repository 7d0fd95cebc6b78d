#pragma once

#include <exception>

namespace sidonkit::detail {

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown after the loop.
class FirstException {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(sidonkit_first_exception)
      {
        if (!error_) error_ = std::current_exception();
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace sidonkit::detail
