// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#include "exec.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "error.hpp"

namespace weillab {

ExecConfig ExecConfig::from_env() {
  ExecConfig cfg;
  if (const char* env = std::getenv("WEILLAB_BUDGET"); env && *env) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);  // accepts 1e9 as well as 1000000000
    if (end == env || *end != '\0' || !(v >= 1.0) || v > 1.8e19)
      fail(ErrorCode::InvalidArgument,
           std::string("WEILLAB_BUDGET is not a positive number: ") + env);
    cfg.budget = static_cast<std::uint64_t>(v);
  }
  return cfg;
}

void ExecConfig::charge(std::uint64_t points, const std::string& what) const {
  if (points > budget)
    fail(ErrorCode::BudgetExceeded,
         what + " needs " +
             (points == UINT64_MAX ? std::string("> 2^64") : std::to_string(points)) +
             " points, budget is " + std::to_string(budget));
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

void parallel_for(std::uint64_t n, unsigned threads,
                  const std::function<void(std::uint64_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!err) err = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const unsigned k = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (unsigned i = 0; i < k; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace weillab
