// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#ifndef BOSETRAP_SELFTEST_HPP
#define BOSETRAP_SELFTEST_HPP

#include <functional>
#include <string>

namespace bosetrap {

/// Outcome of one self-test check.  `measured` is the observed
/// discrepancy (or watched quantity) that was compared against
/// `tolerance`.
struct SelfTestCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

using SelfTestReporter = std::function<void(const SelfTestCheck&)>;

/// Runs the cross-module oracle and invariant battery (partition
/// recursion vs permutation enumeration, normalizations, family
/// collapse, symmetry, fit recovery, extreme-parameter finiteness).
/// Each check is reported as it completes; returns the failure count.
int run_selftest(const SelfTestReporter& reporter = {});

}  // namespace bosetrap

#endif
