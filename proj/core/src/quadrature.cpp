#include "bq/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace bq {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1] (positive half;
// nodes are symmetric).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod = 0.0;
    double error = 0.0;
};

PanelEstimate g7k15(const std::function<double(double)>& f, double a,
                    double b) {
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    const double fc = f(mid);
    double gauss = kWg[3] * fc;
    double kron = kWgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = hal * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    PanelEstimate est;
    est.kronrod = kron * hal;
    est.error = std::fabs((kron - gauss) * hal);
    return est;
}

}  // namespace

QuadResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals) {
    QuadResult res;
    if (a == b) return res;

    struct Interval {
        double a, b, value, error;
        long seq;  // insertion order, breaks error ties deterministically
    };
    auto worse = [](const Interval& x, const Interval& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.seq > y.seq;
    };
    std::priority_queue<Interval, std::vector<Interval>, decltype(worse)> heap(
        worse);

    long seq = 0;
    PanelEstimate whole = g7k15(f, a, b);
    heap.push({a, b, whole.kronrod, whole.error, seq++});
    double total = whole.kronrod;
    double total_err = whole.error;
    res.evaluations = 15;
    int intervals = 1;

    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (intervals >= max_intervals) {
            res.converged = false;
            break;
        }
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        PanelEstimate left = g7k15(f, worst.a, mid);
        PanelEstimate right = g7k15(f, mid, worst.b);
        res.evaluations += 30;
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.kronrod, left.error, seq++});
        heap.push({mid, worst.b, right.kronrod, right.error, seq++});
        ++intervals;
    }
    res.value = total;
    res.error_estimate = total_err;
    return res;
}

void gauss_legendre_rule(int n, std::vector<double>& nodes,
                         std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
    static std::mutex mtx;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>>
        cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<double> xs(n), ws(n);
        // Newton iteration on P_n, one root per half; symmetry fills the rest.
        const int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                // Legendre recurrence for P_n(x) and P_n'(x).
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double pk =
                        ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::fabs(step) < 1e-15) break;
            }
            // One clean-up evaluation for the weight.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            xs[i] = -x;
            xs[n - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            ws[i] = w;
            ws[n - 1 - i] = w;
        }
        if (n % 2 == 1) xs[n / 2] = 0.0;
        it = cache.emplace(n, std::make_pair(std::move(xs), std::move(ws)))
                 .first;
    }
    nodes = it->second.first;
    weights = it->second.second;
}

double fixed_gauss_legendre(const std::function<double(double)>& f, double a,
                            double b, int n) {
    if (a == b) return 0.0;
    std::vector<double> xs, ws;
    gauss_legendre_rule(n, xs, ws);
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += ws[i] * f(mid + hal * xs[i]);
    return acc * hal;
}

double composite_simpson(const std::function<double(double)>& f, double a,
                         double b, int panels) {
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("composite_simpson: panels must be even and >= 2");
    const double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i)
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace bq
