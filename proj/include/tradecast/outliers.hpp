#pragma once

#include <vector>

#include "tradecast/arima.hpp"

namespace tradecast {

enum class OutlierKind { AO, LS };

struct OutlierEvent {
    OutlierKind kind = OutlierKind::AO;
    int year = 0;
    double magnitude = 0.0;   // estimated effect omega on the level series
    double t_stat = 0.0;
    int iteration = 0;        // detection round, starting at 1
};

/// Iterative additive-outlier / level-shift search on a fitted model.
///
/// Each round maps the candidate pulse and step signatures through the
/// model's innovation filter, estimates the effect by least squares against
/// the current residuals, and takes the largest |t|. Detected effects are
/// removed from the working series and the residuals recomputed with the
/// model parameters held fixed. The t denominator is the model's innovation
/// scale sqrt(sigma2), held fixed across rounds.
///
/// Additive outliers are not searched at the first observation, where they
/// are indistinguishable from a level shift at the second; level shifts start
/// at the second observation.
std::vector<OutlierEvent> detect(const FittedModel& model, const Series& series,
                                 double critical = 2.5, int max_events = 5);

/// Index and kind of the globally largest |t|; an AO/LS tie at the same index
/// resolves to LS.
struct MaxT {
    OutlierKind kind = OutlierKind::AO;
    std::size_t index = 0;
    double t = 0.0;
};
MaxT classify_max(const std::vector<double>& t_ao, const std::vector<double>& t_ls);

}  // namespace tradecast
