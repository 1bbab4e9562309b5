// Closed-form reference solitary waves and the rescaling that puts every
// member of the family on a common nondimensional plot.
#pragma once

#include <span>
#include <vector>

#include "bq/types.hpp"

namespace bq {

// sech^2 with underflow clamp: |arg| > 350 returns exactly 0, so profiles
// evaluated far in the tails are exact zeros instead of denormal noise.
double sech2(double arg);

// Green-Naghdi solitary wave of speed c:
//   zeta(x) = (c^2-1)/eps * sech^2( sqrt(3(c^2-1)/(4 c^2 eps)) * x ).
double gn_amplitude(double celerity, double epsilon);
double gn_wavenumber(double celerity, double epsilon);
double gn_profile(double celerity, double epsilon, double x);

// Standard (first-order) Boussinesq solitary wave with amplitude parameter
// alpha:  zeta1 = alpha*sech^2(k(x-ct)),  v1 = c*zeta1/(1+eps*zeta1),
// k = sqrt(3*alpha/4), c = sqrt(1/(1-alpha*eps)).
struct ReferenceWave {
    double zeta = 0.0;
    double v = 0.0;
};
ReferenceWave boussinesq_solitary(const ModelParams& p, double t, double x);

// Amplitude parameter of the standard-Boussinesq family with speed c:
// inverts c = sqrt(1/(1-alpha*eps)).
double alpha_from_celerity(double celerity, double epsilon);

// Rescale a profile to solitary-wave similarity variables:
//   Z = eps*zeta / (c^2-1),   X = x * sqrt(3(c^2-1)/(4 c^2 eps)).
// A Green-Naghdi profile becomes exactly sech^2(X) under this map.
struct RescaledProfile {
    std::vector<double> X;
    std::vector<double> Z;
};
RescaledProfile rescale_profile(std::span<const double> x,
                                std::span<const double> zeta, double celerity,
                                double epsilon);

}  // namespace bq
