#ifndef HOMCHECK_UTIL_HPP
#define HOMCHECK_UTIL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace homcheck {

std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Iterates non-blank lines of a TSV file. '#' lines go to on_comment when
/// given, otherwise they are skipped. Fields are tab-split and trimmed.
void for_each_tsv_row(
    const std::string& path,
    const std::function<void(const std::vector<std::string>&, std::size_t)>& on_row,
    const std::function<void(const std::string&, std::size_t)>& on_comment = nullptr);

/// Deterministic RNG used for sampling and fixture generation. All draws go
/// through our own bounded/shuffle routines so sequences are identical across
/// standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n);
  bool chance(double p);  // p in [0,1]

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// First k of a Fisher-Yates shuffle, returned sorted when sort_result.
  template <typename T>
  std::vector<T> sample(std::vector<T> v, std::size_t k, bool sort_result = true) {
    if (k > v.size()) k = v.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(v.size() - i));
      std::swap(v[i], v[j]);
    }
    v.resize(k);
    if (sort_result) std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

/// HOMCHECK_THREADS, clamped to [1, hardware]; 1 when unset or unparsable.
unsigned thread_cap();

/// Applies fn(i) for i in [0,n) using up to `threads` workers; results land in
/// index order, so output is independent of the thread count.
template <typename R>
std::vector<R> parallel_map(std::size_t n, unsigned threads,
                            const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  if (n == 0) return out;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        out[i] = fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace homcheck

#endif
