#include "dscm/scalar_math.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace dscm {

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0))
        throw InvalidParameter("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1)
        throw InvalidParameter("QuadratureSpec: max_subdivisions must be >= 1");
}

double q_function(double x) {
    // erfc-based evaluation keeps full relative accuracy deep into the tail,
    // which the BER integrals need (values down to ~1e-20 are meaningful).
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double gaussian_pdf(double x, double variance) {
    if (!(variance > 0.0))
        throw InvalidParameter("gaussian_pdf: variance must be positive");
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi / std::sqrt(variance) * std::exp(-x * x / (2.0 * variance));
}

namespace {

// 15-point Gauss-Kronrod pair (7-point Gauss embedded).
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const {
        if (error != o.error) return error > o.error;  // largest error first
        return a < o.a;
    }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double res_k = kWgk[7] * fv[7];
    double res_g = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        res_k += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) res_g += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    res_k *= h;
    res_g *= h;
    double err = std::abs(res_k - res_g);
    // standard QUADPACK-style error sharpening
    double res_abs = 0.0;
    for (int i = 0; i < 7; ++i) res_abs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    res_abs += kWgk[7] * std::abs(fv[7]);
    res_abs *= std::abs(h);
    if (res_abs > 0.0 && err > 0.0)
        err = res_abs * std::min(1.0, std::pow(200.0 * err / res_abs, 1.5));
    return {a, b, res_k, err};
}

double integrate_finite(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec) {
    std::multiset<Segment> segs;
    segs.insert(gk15(f, a, b));
    double total = segs.begin()->value;
    double total_err = segs.begin()->error;
    int used = 1;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (used >= spec.max_subdivisions) {
            throw ConvergenceFailure("integrate: subdivision budget exhausted (error bound " +
                                         std::to_string(total_err) + ")",
                                     total, total_err);
        }
        Segment worst = *segs.begin();
        segs.erase(segs.begin());
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            worst.error = 0.0;
            segs.insert(worst);
            total_err = 0.0;
            for (const auto& s : segs) total_err += s.error;
            continue;
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        segs.insert(left);
        segs.insert(right);
        ++used;
    }
    double sum = 0.0;
    for (const auto& s : segs) sum += s.value;
    return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureSpec& spec) {
    spec.validate();
    if (lower == upper) return 0.0;
    if (lower > upper) return -integrate(f, upper, lower, spec);

    const bool lo_inf = std::isinf(lower);
    const bool hi_inf = std::isinf(upper);
    if (!lo_inf && !hi_inf) return integrate_finite(f, lower, upper, spec);

    if (lo_inf && hi_inf) {
        // x = t/(1-t^2) maps (-1,1) onto the real line
        auto g = [&f](double t) {
            double u = 1.0 - t * t;
            double x = t / u;
            double jac = (1.0 + t * t) / (u * u);
            return f(x) * jac;
        };
        return integrate_finite(g, -1.0 + 1e-14, 1.0 - 1e-14, spec);
    }
    if (!lo_inf && hi_inf) {
        // x = a + t/(1-t) maps (0,1) onto (a, inf)
        auto g = [&f, lower](double t) {
            double u = 1.0 - t;
            return f(lower + t / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0 - 1e-14, spec);
    }
    // (-inf, b): mirror
    return integrate([&f](double x) { return f(-x); }, -upper, kInf, spec);
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    if (!(x_tol > 0)) throw InvalidParameter("bisect: x_tol must be positive");
    if (lo > hi) std::swap(lo, hi);
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw BracketingError("bisect: f(lo) and f(hi) have the same sign");
    while (hi - lo > x_tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // floating-point resolution
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace dscm
