#ifndef DFLUX_SUMMATION_HPP
#define DFLUX_SUMMATION_HPP

#include <cmath>

namespace dflux {

/// Neumaier-compensated accumulator. All diagnostic sums in this project go
/// through this type so that identity residuals stay at roundoff scale even
/// with ~1e6 terms, and so that results are deterministic for a fixed
/// accumulation order.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double v) : sum_(v) {}

    CompensatedSum& operator+=(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator-=(double v) { return (*this) += -v; }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Sum a range with compensation, left to right.
template <typename It>
double compensated_sum(It first, It last) {
    CompensatedSum acc;
    for (; first != last; ++first) acc += *first;
    return acc.value();
}

} // namespace dflux

#endif
