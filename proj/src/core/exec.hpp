// Copyright 2026 The weillab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace weillab {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ULL;

// Execution knobs shared by every enumeration. Results never depend on
// `threads`; only wall time does.
struct ExecConfig {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;

  // Default config with WEILLAB_BUDGET applied when set.
  static ExecConfig from_env();

  // Throws BudgetExceeded when `points` field elements would be enumerated.
  void charge(std::uint64_t points, const std::string& what) const;
};

// Saturating integer power; returns UINT64_MAX on overflow.
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) noexcept;

// Runs body(i) for i in [0, n) on up to `threads` workers. Exceptions from
// workers are rethrown on the caller (first one wins).
void parallel_for(std::uint64_t n, unsigned threads,
                  const std::function<void(std::uint64_t)>& body);

}  // namespace weillab
