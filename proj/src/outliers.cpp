#include "tradecast/outliers.hpp"

#include <cmath>

namespace tradecast {

namespace {

std::vector<double> diff_n(std::vector<double> v, int d) {
    for (int k = 0; k < d; ++k) {
        std::vector<double> w(v.size() - 1);
        for (std::size_t i = 0; i + 1 < v.size(); ++i) w[i] = v[i + 1] - v[i];
        v = std::move(w);
    }
    return v;
}

}  // namespace

MaxT classify_max(const std::vector<double>& t_ao, const std::vector<double>& t_ls) {
    if (t_ao.empty() || t_ao.size() != t_ls.size()) throw Error("classify_max: empty or mismatched input");
    MaxT best{OutlierKind::AO, 0, t_ao[0]};
    for (std::size_t i = 0; i < t_ao.size(); ++i) {
        if (std::abs(t_ao[i]) > std::abs(best.t)) best = {OutlierKind::AO, i, t_ao[i]};
    }
    for (std::size_t i = 0; i < t_ls.size(); ++i) {
        const double t = std::abs(t_ls[i]);
        if (t > std::abs(best.t) ||
            (t == std::abs(best.t) && best.kind == OutlierKind::AO && i == best.index)) {
            best = {OutlierKind::LS, i, t_ls[i]};
        }
    }
    return best;
}

std::vector<OutlierEvent> detect(const FittedModel& model, const Series& series,
                                 double critical, int max_events) {
    if (critical <= 0.0) throw Error("critical must be positive");
    if (max_events < 1) throw Error("max_events must be >= 1");

    const int n = static_cast<int>(series.size());
    const int d = model.spec.d;
    const int n_eff = n - d;
    if (n_eff < 3) throw TooShort("series too short for outlier detection");

    const double sigma = std::sqrt(model.sigma2);
    if (!(sigma > 0.0)) throw DegenerateVariance();

    // Signatures mapped through the model's innovation filter. The filter is
    // linear in the deviations, so signatures carry no mean term.
    auto filtered = [&](const std::vector<double>& level_sig) {
        return detail::uls_filter(diff_n(level_sig, d), model.ar, model.ma).residuals;
    };
    struct Candidate {
        OutlierKind kind;
        int t;                       // 0-based level index
        std::vector<double> x;       // filtered signature
        double sxx;
    };
    std::vector<Candidate> candidates;
    for (int t = 1; t < n; ++t) {    // both kinds start at the second observation
        std::vector<double> pulse(static_cast<std::size_t>(n), 0.0);
        pulse[static_cast<std::size_t>(t)] = 1.0;
        std::vector<double> step(static_cast<std::size_t>(n), 0.0);
        for (int s = t; s < n; ++s) step[static_cast<std::size_t>(s)] = 1.0;
        for (auto [kind, sig] : {std::pair{OutlierKind::AO, &pulse}, {OutlierKind::LS, &step}}) {
            Candidate c{kind, t, filtered(*sig), 0.0};
            for (double v : c.x) c.sxx += v * v;
            if (c.sxx > 1e-12) candidates.push_back(std::move(c));
        }
    }

    std::vector<OutlierEvent> events;
    std::vector<double> work = series.values;
    for (int round = 1; round <= max_events; ++round) {
        std::vector<double> w = diff_n(work, d);
        for (auto& v : w) v -= model.constant;
        const std::vector<double> e = detail::uls_filter(w, model.ar, model.ma).residuals;

        const Candidate* best = nullptr;
        double best_t = 0.0, best_w = 0.0;
        for (const auto& c : candidates) {
            double exy = 0.0;
            for (std::size_t i = 0; i < e.size(); ++i) exy += e[i] * c.x[i];
            const double omega = exy / c.sxx;
            const double t = omega * std::sqrt(c.sxx) / sigma;
            const bool wins =
                best == nullptr || std::abs(t) > std::abs(best_t) ||
                (std::abs(t) == std::abs(best_t) && c.kind == OutlierKind::LS &&
                 best->kind == OutlierKind::AO && c.t == best->t);
            if (wins) {
                best = &c;
                best_t = t;
                best_w = omega;
            }
        }
        if (best == nullptr || std::abs(best_t) < critical) break;

        events.push_back({best->kind, series.year_at(static_cast<std::size_t>(best->t)),
                          best_w, best_t, round});
        if (best->kind == OutlierKind::AO) {
            work[static_cast<std::size_t>(best->t)] -= best_w;
        } else {
            for (int s = best->t; s < n; ++s) work[static_cast<std::size_t>(s)] -= best_w;
        }
    }
    return events;
}

}  // namespace tradecast
