#include "bq/rk45.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bq {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                 e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

// Cubic Hermite interpolation of the state inside an accepted step, from the
// endpoint values and slopes.  theta in [0, 1].
void hermite(const std::vector<double>& y0, const std::vector<double>& f0,
             const std::vector<double>& y1, const std::vector<double>& f1,
             double h, double theta, std::vector<double>& out) {
    const double t2 = theta * theta;
    const double h00 = (1 + 2 * theta) * (1 - theta) * (1 - theta);
    const double h10 = theta * (1 - theta) * (1 - theta);
    const double h01 = t2 * (3 - 2 * theta);
    const double h11 = t2 * (theta - 1);
    out.resize(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i)
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
}

bool crossed(double prev, double curr, int direction) {
    if (direction >= 0 && prev < 0.0 && curr >= 0.0) return true;
    if (direction <= 0 && prev > 0.0 && curr <= 0.0) return true;
    return false;
}

}  // namespace

OdeResult integrate_dopri5(
    const OdeRhs& f, double t0, const std::vector<double>& y0, double t_end,
    const OdeOptions& opt, const std::vector<OdeEvent>& events,
    const std::vector<double>& sample_points,
    const std::function<void(double, const std::vector<double>&)>& on_sample) {
    if (!(t_end > t0))
        throw std::invalid_argument("integrate_dopri5: t_end must exceed t0");

    const std::size_t dim = y0.size();
    OdeResult res;
    res.t = t0;
    res.y = y0;

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
        k7(dim), ytmp(dim), ynew(dim), yint;
    f(t0, res.y, k1);

    std::vector<double> ev_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e)
        ev_prev[e] = events[e].value(res.t, res.y);

    std::size_t next_sample = 0;
    while (next_sample < sample_points.size() &&
           sample_points[next_sample] <= t0) {
        if (on_sample && sample_points[next_sample] == t0) on_sample(t0, res.y);
        ++next_sample;
    }

    double h = std::min(opt.initial_step, opt.max_step);
    h = std::min(h, t_end - t0);

    // Stop once the remaining span is below resolvable step size (the last
    // clipped step may land an ulp short of t_end).
    while (t_end - res.t > opt.min_step) {
        if (res.steps_accepted + res.steps_rejected >= opt.max_steps) {
            res.stop = OdeStop::step_failure;
            return res;
        }
        bool clipped_to_sample = false;
        double h_try = std::min(h, t_end - res.t);
        if (next_sample < sample_points.size()) {
            const double gap = sample_points[next_sample] - res.t;
            if (gap <= h_try * (1.0 + 1e-12)) {
                h_try = gap;
                clipped_to_sample = true;
            }
        }
        if (h_try < opt.min_step) {
            res.stop = OdeStop::step_failure;
            return res;
        }

        const double t = res.t;
        const std::vector<double>& y = res.y;
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h_try * a21 * k1[i];
        f(t + c2 * h_try, ytmp, k2);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * h_try, ytmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * h_try, ytmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                      a54 * k4[i]);
        f(t + c5 * h_try, ytmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                      a64 * k4[i] + a65 * k5[i]);
        f(t + h_try, ytmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] + h_try * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                      b5 * k5[i] + b6 * k6[i]);
        f(t + h_try, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double ei = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                       e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opt.abs_tol +
                              opt.rel_tol *
                                  std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / static_cast<double>(dim));

        if (err > 1.0) {
            ++res.steps_rejected;
            const double fac =
                std::max(0.2, 0.9 * std::pow(err, -0.2));
            h = std::max(h_try * fac, opt.min_step);
            continue;
        }

        // Accepted.
        ++res.steps_accepted;
        const double t_new = t + h_try;

        // Event check on [t, t_new].
        int fired = -1;
        double fired_theta = 1.0;
        for (std::size_t e = 0; e < events.size(); ++e) {
            const double g_new = events[e].value(t_new, ynew);
            if (crossed(ev_prev[e], g_new, events[e].direction)) {
                // Bisect the Hermite interpolant for the crossing point.
                double lo = 0.0, hi = 1.0, glo = ev_prev[e];
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    hermite(y, k1, ynew, k7, h_try, mid, yint);
                    const double gm = events[e].value(t + mid * h_try, yint);
                    const bool same_side =
                        (glo > 0.0 && gm > 0.0) || (glo < 0.0 && gm < 0.0);
                    if (same_side) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                const double theta = 0.5 * (lo + hi);
                if (fired < 0 || theta < fired_theta) {
                    fired = static_cast<int>(e);
                    fired_theta = theta;
                }
            }
            ev_prev[e] = g_new;
        }
        if (fired >= 0) {
            hermite(y, k1, ynew, k7, h_try, fired_theta, yint);
            res.stop = OdeStop::event;
            res.event_index = fired;
            res.t = t + fired_theta * h_try;
            res.y = yint;
            return res;
        }

        res.t = t_new;
        res.y = ynew;
        k1 = k7;  // first-same-as-last

        if (clipped_to_sample) {
            if (on_sample) on_sample(res.t, res.y);
            ++next_sample;
        }

        const double fac =
            std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2)));
        h = std::min(h_try * fac, opt.max_step);
    }

    res.stop = OdeStop::reached_end;
    return res;
}

}  // namespace bq
