#include "iabopt/kernels.hpp"

#include <cstddef>

#include "iabopt/error.hpp"

namespace iabopt::kernels {

namespace {

void check_sizes(const GainMatrix& gains, std::size_t links, std::size_t powers, std::size_t out) {
    if (powers != gains.frontend_count())
        throw Error(ErrorCode::InvalidArgument, "power vector length differs from frontend count");
    if (out != links) throw Error(ErrorCode::InvalidArgument, "output span length differs from link count");
}

inline LinkBudget budget_of(const GainMatrix& gains, LinkRef link, std::span<const double> powers_mw,
                            double noise_mw) {
    LinkBudget b;
    b.signal_mw = gains.signal_mw(link, powers_mw);
    b.interference_mw = gains.interference_mw(link, powers_mw) + noise_mw;
    b.sinr_db = sinr_db(b.signal_mw, b.interference_mw);
    return b;
}

}  // namespace

void link_budgets(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> powers_mw,
                  double noise_mw, std::span<LinkBudget> out) {
    check_sizes(gains, links.size(), powers_mw.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(links.size());
#pragma omp parallel for schedule(static) if (n > 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = budget_of(gains, links[i], powers_mw, noise_mw);
}

void max_interference(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> upper_mw,
                      double noise_mw, std::span<double> out) {
    check_sizes(gains, links.size(), upper_mw.size(), out.size());
    const auto n = static_cast<std::ptrdiff_t>(links.size());
#pragma omp parallel for schedule(static) if (n > 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = gains.interference_mw(links[i], upper_mw) + noise_mw;
}

namespace serial {

void link_budgets(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> powers_mw,
                  double noise_mw, std::span<LinkBudget> out) {
    check_sizes(gains, links.size(), powers_mw.size(), out.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        const LinkRef link = links[i];
        // Same summation order as GainMatrix::interference_mw, noise last.
        double interference = 0.0;
        for (std::size_t r = 0; r < gains.frontend_count(); ++r)
            if (r != link.tx) interference += gains.interfering(link.rx_row, r) * powers_mw[r];
        interference += noise_mw;
        const double signal = gains.serving(link.rx_row, link.tx) * powers_mw[link.tx];
        out[i] = {signal, interference, sinr_db(signal, interference)};
    }
}

void max_interference(const GainMatrix& gains, std::span<const LinkRef> links, std::span<const double> upper_mw,
                      double noise_mw, std::span<double> out) {
    check_sizes(gains, links.size(), upper_mw.size(), out.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        double total = 0.0;
        for (std::size_t r = 0; r < gains.frontend_count(); ++r)
            if (r != links[i].tx) total += gains.interfering(links[i].rx_row, r) * upper_mw[r];
        out[i] = total + noise_mw;
    }
}

}  // namespace serial

}  // namespace iabopt::kernels
