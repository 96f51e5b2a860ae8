#ifndef NLR_PARALLEL_H_
#define NLR_PARALLEL_H_

#include <exception>
#include <mutex>

namespace nlr {

/// Thread count used by the OpenMP kernels. 0 restores the OpenMP default.
void set_num_threads(int threads);
int num_threads();

/// Reads NLR_THREADS from the environment; returns `fallback` when unset or
/// unparsable.
int threads_from_env(int fallback = 0);

/// Restores the previous thread count on destruction.
class ScopedThreads {
 public:
  explicit ScopedThreads(int threads);
  ~ScopedThreads();
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

 private:
  int previous_;
};

/// Exceptions must not escape an OpenMP region. Wrap each work unit in
/// run() and call rethrow() after the region; the first captured exception
/// is rethrown.
class ParallelErrors {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      const std::lock_guard<std::mutex> lock(mutex_);
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr first_;
};

}  // namespace nlr

#endif  // NLR_PARALLEL_H_
