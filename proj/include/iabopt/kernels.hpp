#pragma once

#include <span>

#include "iabopt/channel.hpp"

namespace iabopt::kernels {

/// Signal, interference (+ noise) and SINR for a batch of links at one
/// power vector. OpenMP-parallel over links.
void link_budgets(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> powers_mw,
                  double noise_mw, std::span<LinkBudget> out);

/// Worst-case interference per link with every other frontend at its own
/// upper bound; used for big-M sizing.
void max_interference(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> upper_mw,
                      double noise_mw, std::span<double> out);

namespace serial {

// Single-threaded reference implementations; the tests compare them with the
// parallel kernels and the benchmark target times both.
void link_budgets(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> powers_mw,
                  double noise_mw, std::span<LinkBudget> out);
void max_interference(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> upper_mw,
                      double noise_mw, std::span<double> out);

}  // namespace serial

}  // namespace iabopt::kernels
