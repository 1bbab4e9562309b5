// Explicit Dormand-Prince 5(4) integrator with step-size control, event
// location, and clip-to-sample output.
//
// Event handling brackets a sign change of the event function inside the
// accepted step using a cubic Hermite interpolant of the state (endpoint
// values and derivatives), then bisects the interpolant.  That is accurate
// enough for the shooting classification used here; the final profile is
// never interpolated, because the stepper can instead clip its step to land
// exactly on requested sample points ("clip-to-sample").
#pragma once

#include <functional>
#include <vector>

namespace bq {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-4;
    double max_step = 1.0;
    double min_step = 1e-14;
    long max_steps = 2000000;
};

enum class OdeStop {
    reached_end,   // integrated to t_end without event
    event,         // an event function crossed zero
    step_failure,  // step size underflow / step budget exhausted
};

struct OdeEvent {
    // Event fires when value crosses zero in the stated direction:
    //  direction < 0: from positive to negative; > 0: negative to positive;
    //  0: either.
    std::function<double(double, const std::vector<double>&)> value;
    int direction = 0;
};

struct OdeResult {
    OdeStop stop = OdeStop::reached_end;
    int event_index = -1;   // which event fired (if stop == event)
    double t = 0.0;         // final time (event time if an event fired)
    std::vector<double> y;  // state at t
    long steps_accepted = 0;
    long steps_rejected = 0;
};

using OdeRhs = std::function<void(double, const std::vector<double>&,
                                  std::vector<double>&)>;

// Integrate y' = f(t, y) from (t0, y0) to t_end (t_end > t0).
//
// If sample_points is non-empty (strictly increasing, inside [t0, t_end]),
// steps are clipped so the integrator lands exactly on each point and
// on_sample is called with the exact RK state there.  Events are checked on
// every accepted step.
OdeResult integrate_dopri5(
    const OdeRhs& f, double t0, const std::vector<double>& y0, double t_end,
    const OdeOptions& opt, const std::vector<OdeEvent>& events = {},
    const std::vector<double>& sample_points = {},
    const std::function<void(double, const std::vector<double>&)>& on_sample =
        {});

}  // namespace bq
