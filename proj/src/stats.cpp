// Copyright 2026 The lexgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexgap/stats.hpp"

#include <algorithm>

#include <boost/math/special_functions/beta.hpp>

#include "lexgap/error.hpp"

namespace lexgap {

MeanStd mean_std(std::span<const double> values)
{
    MeanStd r;
    r.n = values.size();
    if (values.empty()) {
        return r;
    }
    CompensatedSum sum;
    for (double v : values) {
        sum.add(v);
    }
    const double mean = sum.value() / static_cast<double>(values.size());
    r.mean = mean;
    if (values.size() >= 2) {
        CompensatedSum ss;
        for (double v : values) {
            ss.add((v - mean) * (v - mean));
        }
        r.std = std::sqrt(ss.value() / static_cast<double>(values.size() - 1));
    }
    return r;
}

std::optional<double> median(std::vector<double> values)
{
    if (values.empty()) {
        return std::nullopt;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return (values[mid - 1] + values[mid]) / 2.0;
}

TestResult welch_t_test(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() < 2 || ys.size() < 2) {
        throw ValidationError("welch_t_test: each sample needs at least 2 values");
    }
    const auto x = mean_std(xs);
    const auto y = mean_std(ys);
    const double nx = static_cast<double>(xs.size());
    const double ny = static_cast<double>(ys.size());
    const double vx = *x.std * *x.std / nx;
    const double vy = *y.std * *y.std / ny;
    const double se2 = vx + vy;
    if (se2 == 0.0) {
        throw ValidationError("welch_t_test: zero pooled variance");
    }
    TestResult r;
    r.t_statistic = (*x.mean - *y.mean) / std::sqrt(se2);
    r.degrees_of_freedom = se2 * se2 / (vx * vx / (nx - 1.0) + vy * vy / (ny - 1.0));
    const double t2 = r.t_statistic * r.t_statistic;
    // P(|T| > |t|) = I_{df / (df + t^2)}(df / 2, 1 / 2)
    r.p_value = boost::math::ibeta(r.degrees_of_freedom / 2.0, 0.5, r.degrees_of_freedom / (r.degrees_of_freedom + t2));
    r.p_value = std::clamp(r.p_value, 0.0, 1.0);
    r.significant_at_5pct = r.p_value < 0.05;
    return r;
}

}  // namespace lexgap
