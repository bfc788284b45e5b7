#ifndef DFLUX_WEIGHT_HPP
#define DFLUX_WEIGHT_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace dflux {

/// Positive weight chi(x) controlling growth at spatial infinity. Either the
/// unit weight or the rational decay chi(x) = (1+x^2)^{-N} with N > 1/2.
/// The Lipschitz-ratio constant satisfies |chi'(x)| <= lipschitz_ratio * chi(x).
class WeightFunction {
public:
    enum class Kind { Unit, RationalDecay };

    static WeightFunction unit() { return WeightFunction(Kind::Unit, 0.0); }

    static WeightFunction rational_decay(double exponent) {
        if (!(exponent > 0.5)) {
            throw std::invalid_argument("rational-decay weight requires exponent N > 1/2");
        }
        return WeightFunction(Kind::RationalDecay, exponent);
    }

    /// Parse "unit" or "decay:N".
    static WeightFunction parse(const std::string& text) {
        if (text == "unit") return unit();
        if (text.rfind("decay:", 0) == 0) return rational_decay(std::stod(text.substr(6)));
        throw std::invalid_argument("unknown weight '" + text + "' (expected unit or decay:N)");
    }

    double operator()(double x) const {
        if (kind_ == Kind::Unit) return 1.0;
        return std::pow(1.0 + x * x, -exponent_);
    }

    Kind kind() const { return kind_; }
    bool is_unit() const { return kind_ == Kind::Unit; }
    double exponent() const { return exponent_; }

    /// C with |chi'| <= C*chi; the ratio 2N|x|/(1+x^2) peaks at |x| = 1.
    double lipschitz_ratio() const { return kind_ == Kind::Unit ? 0.0 : exponent_; }

    std::string name() const {
        if (kind_ == Kind::Unit) return "unit";
        std::string text = std::to_string(exponent_);
        text.erase(text.find_last_not_of('0') + 1);
        if (!text.empty() && text.back() == '.') text.pop_back();
        return "decay:" + text;
    }

private:
    WeightFunction(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

    Kind kind_;
    double exponent_;
};

} // namespace dflux

#endif
