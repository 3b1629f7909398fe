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

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lexgap {

/// Neumaier-compensated running sum.
class CompensatedSum {
  public:
    void add(double v)
    {
        double t = sum_ + v;
        c_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + c_; }

  private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

/// Mean and sample standard deviation (n - 1 denominator). Either is absent
/// when undefined: mean needs n >= 1, std needs n >= 2.
struct MeanStd {
    std::optional<double> mean;
    std::optional<double> std;
    std::size_t n = 0;
};

MeanStd mean_std(std::span<const double> values);

/// Middle value (mean of the two middle values for even n); absent when empty.
std::optional<double> median(std::vector<double> values);

struct TestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;  // Welch–Satterthwaite
    double p_value = 1.0;             // two-sided
    bool significant_at_5pct = false;
};

/// Welch's unequal-variance two-sample t-test, two-sided, t = (mean(xs) -
/// mean(ys)) / sqrt(var(xs)/|xs| + var(ys)/|ys|). The p-value comes from the
/// regularized incomplete beta function. Throws ValidationError when a sample
/// has fewer than 2 values or both variances are zero.
TestResult welch_t_test(std::span<const double> xs, std::span<const double> ys);

}  // namespace lexgap
