#include "galton/schedule.hpp"

#include <cmath>
#include <sstream>

namespace galton {

long long round_half_away(double x) {
    return static_cast<long long>(x < 0 ? std::ceil(x - 0.5) : std::floor(x + 0.5));
}

GridMap to_grid_units(const TargetSpec& spec, bool* mean_outside_interval) {
    if (!(spec.l > 0.0)) throw std::invalid_argument("to_grid_units: l must be > 0");
    if (!(spec.sigma_hat_sq > 0.0))
        throw std::invalid_argument("to_grid_units: sigma_hat_sq must be > 0");
    if (spec.n1 < 1 || spec.nm < spec.n1)
        throw std::invalid_argument("to_grid_units: need nm >= n1 >= 1");
    if (spec.c < 0) throw std::invalid_argument("to_grid_units: c must be >= 0");
    if (mean_outside_interval)
        *mean_outside_interval = spec.mu_hat < spec.x0 || spec.mu_hat > spec.x0 + spec.l;

    GridMap g;
    g.resolution = uint64_t{1} << spec.nm;
    const double n = static_cast<double>(g.resolution);
    g.delta_x = spec.l / n;
    g.mu = n * spec.mu_hat / spec.l;
    g.sigma_sq = n * n * spec.sigma_hat_sq / (spec.l * spec.l);
    return g;
}

long long exact_iteration_count(const GridMap& grid) {
    return round_half_away(4.0 * grid.sigma_sq);
}

namespace {

double pow4(int e) { return std::ldexp(1.0, 2 * e); }
double pow2(int e) { return std::ldexp(1.0, e); }

} // namespace

double predicted_variance_at_stage(const Schedule& s, int i) {
    if (i < 1 || i > s.m) throw std::out_of_range("predicted_variance_at_stage");
    const double pq = s.p * (1.0 - s.p);
    double v = 0.25 * (pow4(i - 1) - 1.0) / 3.0;
    for (int k = 1; k <= i; ++k)
        v += pow4(i - k) * pq * static_cast<double>(s.t[k - 1]);
    return v;
}

double predicted_mean_at_stage(const Schedule& s, int i) {
    if (i < 1 || i > s.m) throw std::out_of_range("predicted_mean_at_stage");
    double mu = 0.5 * (pow2(i - 1) - 1.0);
    for (int k = 1; k <= i; ++k)
        mu += pow2(i - k) * s.p * static_cast<double>(s.t[k - 1]);
    return mu;
}

double predicted_variance(const Schedule& s) { return predicted_variance_at_stage(s, s.m); }
double predicted_mean(const Schedule& s) { return predicted_mean_at_stage(s, s.m); }

long long support_upper_bound(const Schedule& s, int i) {
    long long bound = 0;
    for (int r = 1; r <= i; ++r) {
        if (r > 1) bound = 2 * bound + 1;
        bound += s.t[r - 1];
    }
    return bound;
}

int guard_qubits_needed(const Schedule& s) {
    const long long top = support_upper_bound(s, s.m);
    int width = s.nm();
    int guard = 0;
    while ((width + guard) < 62 && top >= (1ll << (width + guard))) ++guard;
    return guard;
}

namespace {

void finalize(Schedule& s, const GridMap& grid) {
    s.stage_qubits.clear();
    for (int r = 1; r <= s.m; ++r) s.stage_qubits.push_back(s.n1 + r - 1);
    s.boundary_flagged = false;
    for (int r = 1; r <= s.m; ++r)
        if (support_upper_bound(s, r) >= (1ll << s.stage_qubits[r - 1]) - 1)
            s.boundary_flagged = true;
    const ShiftAmount sh = shift_amount(s, grid);
    s.alpha = sh.alpha;
    s.integer_shift = sh.integer_shift;
}

} // namespace

Schedule plan_schedule(const GridMap& grid, int n1, int nm, int c) {
    if (n1 < 1 || nm < n1) throw std::invalid_argument("plan_schedule: need nm >= n1 >= 1");
    if (c < 0) throw std::invalid_argument("plan_schedule: c must be >= 0");

    Schedule s;
    s.n1 = n1;
    s.m = nm - n1 + 1;
    s.t.assign(s.m, c);
    s.t[0] = 0;

    const double baseline = 0.25 * (pow4(s.m - 1) - 1.0) / 3.0;
    if (grid.sigma_sq < baseline - 1e-9) {
        std::ostringstream msg;
        msg << "plan_schedule: requested grid variance " << grid.sigma_sq
            << " is below the scaling-cascade baseline " << baseline
            << " (minimum achievable with this n1..nm)";
        throw infeasible_target(msg.str(), baseline);
    }

    // Invert the closed form for t_1 with t_2..t_m = c.
    double rest = 0.0;
    for (int k = 2; k <= s.m; ++k) rest += pow4(s.m - k) * 0.25 * c;
    const double t1_real = (grid.sigma_sq - baseline - rest) * 4.0 / pow4(s.m - 1);
    s.t[0] = std::max(0ll, round_half_away(t1_real));

    // Greedy integer tuning of the later stages, coarsest first.
    for (int k = 2; k <= s.m; ++k) {
        const double unit = pow4(s.m - k) * 0.25;
        const double residual = grid.sigma_sq - predicted_variance(s);
        long long delta = round_half_away(residual / unit);
        if (s.t[k - 1] + delta < 0) delta = -s.t[k - 1];
        s.t[k - 1] += delta;
    }

    finalize(s, grid);
    return s;
}

ShiftAmount shift_amount(const Schedule& s, const GridMap& grid) {
    ShiftAmount out;
    out.alpha = grid.mu - predicted_mean(s);
    out.integer_shift = round_half_away(out.alpha);
    out.residual = out.alpha - static_cast<double>(out.integer_shift);
    return out;
}

} // namespace galton
