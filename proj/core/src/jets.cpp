#include "bq/jets.hpp"

#include <cmath>

namespace bq {

namespace {

// Binomial coefficients up to kJetOrder, computed once.
const double* binomial_row(int m) {
    static const auto table = [] {
        std::array<std::array<double, kJetOrder + 1>, kJetOrder + 1> t{};
        for (int i = 0; i <= kJetOrder; ++i) {
            t[i][0] = 1.0;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0.0);
        }
        return t;
    }();
    return table[static_cast<std::size_t>(m)].data();
}

}  // namespace

Jet jet_constant(double a) {
    Jet j;
    j.d[0] = a;
    return j;
}

Jet jet_add(const Jet& a, const Jet& b) {
    Jet r;
    for (int m = 0; m <= kJetOrder; ++m) r[m] = a[m] + b[m];
    return r;
}

Jet jet_sub(const Jet& a, const Jet& b) {
    Jet r;
    for (int m = 0; m <= kJetOrder; ++m) r[m] = a[m] - b[m];
    return r;
}

Jet jet_scale(const Jet& a, double s) {
    Jet r;
    for (int m = 0; m <= kJetOrder; ++m) r[m] = a[m] * s;
    return r;
}

Jet jet_mul(const Jet& a, const Jet& b) {
    Jet r;
    for (int m = 0; m <= kJetOrder; ++m) {
        const double* binom = binomial_row(m);
        double acc = 0.0;
        for (int j = 0; j <= m; ++j) acc += binom[j] * a[j] * b[m - j];
        r[m] = acc;
    }
    return r;
}

Jet jet_div(const Jet& a, const Jet& b) {
    // q = a/b via the Leibniz recurrence: a[m] = sum_j C(m,j) q[j] b[m-j].
    Jet q;
    for (int m = 0; m <= kJetOrder; ++m) {
        const double* binom = binomial_row(m);
        double acc = a[m];
        for (int j = 0; j < m; ++j) acc -= binom[j] * q[j] * b[m - j];
        q[m] = acc / b[0];
    }
    return q;
}

Jet jet_shift(const Jet& a) {
    Jet r;
    for (int m = 0; m < kJetOrder; ++m) r[m] = a[m + 1];
    r[kJetOrder] = 0.0;  // order lost by shifting
    return r;
}

void sech2_tanh_jets(double theta, double k, Jet& s, Jet& u) {
    s = Jet{};
    u = Jet{};
    if (std::fabs(theta) > 350.0) {
        // sech^2 underflows; tanh saturates.
        u[0] = theta > 0.0 ? 1.0 : -1.0;
        return;
    }
    const double ch = std::cosh(theta);
    s[0] = 1.0 / (ch * ch);
    u[0] = std::tanh(theta);
    // d/dx sech^2 = -2k sech^2 tanh and d/dx tanh = k sech^2 close under
    // differentiation, giving the jet recurrence below.
    for (int m = 0; m < kJetOrder; ++m) {
        const double* binom = binomial_row(m);
        double acc = 0.0;
        for (int j = 0; j <= m; ++j) acc += binom[j] * s[j] * u[m - j];
        s[m + 1] = -2.0 * k * acc;
        u[m + 1] = k * s[m];
    }
}

BackgroundJets background_jets(const ModelParams& p, double t, double x) {
    p.validate_corrector();
    BackgroundJets bg;
    bg.c = p.celerity_from_alpha();
    const double k = p.k();
    Jet s, u;
    sech2_tanh_jets(k * (x - bg.c * t), k, s, u);
    bg.zeta1 = jet_scale(s, p.alpha);
    bg.h = bg.zeta1;
    for (int m = 0; m <= kJetOrder; ++m) bg.h[m] *= p.epsilon;
    bg.h[0] += 1.0;
    bg.v1 = jet_div(jet_scale(bg.zeta1, bg.c), bg.h);
    bg.w = jet_scale(jet_shift(bg.v1), -bg.c);
    return bg;
}

}  // namespace bq
