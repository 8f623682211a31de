#include "railplan/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "railplan/errors.hpp"

namespace railplan {
namespace {

// Kronrod-15 abscissae on [-1,1]; odd indices are the embedded Gauss-7 nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a = 0.0;
    double b = 0.0;
    double integral = 0.0; // Kronrod-15 estimate
    double err = 0.0;      // |K15 - G7|

    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[j] * fsum;
        if (j & 1) gauss += kWg[j >> 1] * fsum;
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.integral = h * kron;
    s.err = std::abs(h * (kron - gauss));
    return s;
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f,
                          double a, double b,
                          double rel_tol, double abs_tol,
                          std::size_t max_subdivisions) {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw InvalidParameter("invalid-parameter: quadrature tolerances must be > 0");
    if (max_subdivisions < 1)
        throw InvalidParameter("invalid-parameter: max_subdivisions must be >= 1");
    if (!(a <= b))
        throw InvalidParameter("invalid-parameter: integration bounds must satisfy a <= b");
    if (a == b)
        return 0.0;

    std::priority_queue<Segment> heap;
    Segment first = evaluate_segment(f, a, b);
    double total = first.integral;
    double total_err = first.err;
    heap.push(first);

    std::size_t segments = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (!std::isfinite(total) || !std::isfinite(total_err))
            throw QuadratureError("quadrature-failure: integrand produced a non-finite value");
        if (segments >= max_subdivisions)
            throw QuadratureError("quadrature-failure: tolerance not met within max_subdivisions");

        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw QuadratureError("quadrature-failure: interval collapsed to machine precision");

        const Segment left = evaluate_segment(f, worst.a, mid);
        const Segment right = evaluate_segment(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++segments;
    }

    // Resum the converged segments with compensation; the incremental total
    // above carries O(segments) rounding.
    double sum = 0.0, comp = 0.0;
    while (!heap.empty()) {
        const double y = heap.top().integral - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        heap.pop();
    }
    return sum;
}

} // namespace railplan
