#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ewsat {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (malformed map, wrong regime, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An input exceeds a configured size guard (arity, n, k, enumeration size).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// An internal invariant failed. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Optional sink for human-readable diagnostics (statistics, fallbacks).
using DiagSink = std::function<void(const std::string&)>;

inline void emit(const DiagSink& sink, const std::string& msg) {
  if (sink) sink(msg);
}

inline std::vector<int> bits_to_list(const Bits& b) {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

inline Bits list_to_bits(std::size_t n, const std::vector<int>& list) {
  Bits b(n);
  for (int v : list) b.set(static_cast<std::size_t>(v));
  return b;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Calls `visit(const std::vector<int>&)` for every k-subset of [0, n) in
/// lexicographic order. Stops early when `visit` returns true; returns whether it did.
template <typename Visit>
bool for_each_combination(int n, int k, Visit&& visit) {
  if (k < 0 || k > n) return false;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(static_cast<const std::vector<int>&>(idx))) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace ewsat
