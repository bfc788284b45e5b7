#ifndef DFLUX_QUADRATURE_HPP
#define DFLUX_QUADRATURE_HPP

#include <array>
#include <cstddef>

namespace dflux {

/// Gauss-Legendre rules on [-1,1]. 16 points for cell averages (exact for
/// polynomial data of degree <= 31), 8 for entropy-flux integrals, 4 for
/// per-segment weight integrals in the translation moduli.
struct GaussNode {
    double x;
    double w;
};

inline constexpr std::array<GaussNode, 4> kGauss4 = {{
    {-0.86113631159405257522, 0.34785484513745385737},
    {-0.33998104358485626480, 0.65214515486254614263},
    {0.33998104358485626480, 0.65214515486254614263},
    {0.86113631159405257522, 0.34785484513745385737},
}};

inline constexpr std::array<GaussNode, 8> kGauss8 = {{
    {-0.96028985649753623168, 0.10122853629037625915},
    {-0.79666647741362673959, 0.22238103445337447054},
    {-0.52553240991632898582, 0.31370664587788728734},
    {-0.18343464249564980494, 0.36268378337836198297},
    {0.18343464249564980494, 0.36268378337836198297},
    {0.52553240991632898582, 0.31370664587788728734},
    {0.79666647741362673959, 0.22238103445337447054},
    {0.96028985649753623168, 0.10122853629037625915},
}};

inline constexpr std::array<GaussNode, 16> kGauss16 = {{
    {-0.98940093499164993260, 0.02715245941175409485},
    {-0.94457502307323257608, 0.06225352393864789286},
    {-0.86563120238783174388, 0.09515851168249278481},
    {-0.75540440835500303390, 0.12462897125553387205},
    {-0.61787624440264374845, 0.14959598881657673208},
    {-0.45801677765722738634, 0.16915651939500253819},
    {-0.28160355077925891323, 0.18260341504492358887},
    {-0.09501250983763744019, 0.18945061045506849629},
    {0.09501250983763744019, 0.18945061045506849629},
    {0.28160355077925891323, 0.18260341504492358887},
    {0.45801677765722738634, 0.16915651939500253819},
    {0.61787624440264374845, 0.14959598881657673208},
    {0.75540440835500303390, 0.12462897125553387205},
    {0.86563120238783174388, 0.09515851168249278481},
    {0.94457502307323257608, 0.06225352393864789286},
    {0.98940093499164993260, 0.02715245941175409485},
}};

/// Integrate fn over [lo, hi] with an n-point Gauss rule.
template <std::size_t N, typename Fn>
double gauss_integrate(const std::array<GaussNode, N>& rule, double lo, double hi, Fn&& fn) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (const auto& node : rule) acc += node.w * fn(mid + half * node.x);
    return acc * half;
}

/// Composite rule: split [lo, hi] into `panels` equal panels.
template <std::size_t N, typename Fn>
double gauss_integrate_composite(const std::array<GaussNode, N>& rule, double lo, double hi,
                                 int panels, Fn&& fn) {
    double acc = 0.0;
    const double step = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        acc += gauss_integrate(rule, lo + p * step, lo + (p + 1) * step, fn);
    }
    return acc;
}

} // namespace dflux

#endif
