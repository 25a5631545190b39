#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace galton {

/// Distribution target in continuous-domain units.
struct TargetSpec {
    double mu_hat = 0.0;       ///< mean, same units as the interval
    double sigma_hat_sq = 1.0; ///< variance, > 0
    double x0 = 0.0;           ///< interval left endpoint
    double l = 1.0;            ///< interval length, > 0
    int n1 = 1;                ///< initial qubit count
    int nm = 1;                ///< final qubit count, >= n1
    int c = 2;                 ///< per-stage correction iterations
};

/// Target converted to integer-grid units (grid of N = 2^nm points).
struct GridMap {
    uint64_t resolution = 0; ///< N = 2^nm
    double delta_x = 0.0;    ///< l / N
    double mu = 0.0;         ///< N * mu_hat / l
    double sigma_sq = 0.0;   ///< N^2 * sigma_hat_sq / l^2
};

/// Iteration schedule for the qubit-scaling walk.
///
/// Stage r (1-based) runs on n1 + r - 1 qubits and applies t[r-1] walk
/// steps; a |+> qubit is appended between stages. p is the per-step bias
/// of the walk (fixed at 1/2).
struct Schedule {
    int n1 = 1;
    int m = 1;
    std::vector<long long> t;
    double p = 0.5;
    double alpha = 0.0;       ///< real mean shift (target mean - produced mean)
    long long integer_shift = 0; ///< round(alpha), half away from zero
    std::vector<int> stage_qubits;
    bool boundary_flagged = false; ///< walk support can reach 2^{n_r}-1 at some stage

    int nm() const { return n1 + m - 1; }
};

struct infeasible_target : std::runtime_error {
    double min_achievable;
    explicit infeasible_target(const std::string& msg, double min_var)
        : std::runtime_error(msg), min_achievable(min_var) {}
};

/// Unit conversion onto the integer grid. Rejects non-positive l or variance;
/// sets *mean_outside_interval (if given) when mu_hat falls outside
/// [x0, x0 + l] (modular wraparound territory -- warn, not reject).
GridMap to_grid_units(const TargetSpec& spec, bool* mean_outside_interval = nullptr);

/// Iterations for the single-stage walk: round(4 * sigma_sq). A single step
/// with p = 1/2 contributes variance p(1-p) = 1/4.
long long exact_iteration_count(const GridMap& grid);

/// Closed-form variance of the scheduled walk at the final stage:
/// (4^{m-1}-1)/12 + sum_k 4^{m-k} p(1-p) t_k.
double predicted_variance(const Schedule& s);

/// Closed-form mean: (2^{m-1}-1)/2 + sum_k 2^{m-k} p t_k.
double predicted_mean(const Schedule& s);

/// Same closed forms evaluated for a prefix of i stages (i in [1, m]).
double predicted_variance_at_stage(const Schedule& s, int i);
double predicted_mean_at_stage(const Schedule& s, int i);

/// Plans [t_1..t_m] for the requested grid-unit variance: t_2..t_m start at
/// c, t_1 comes from inverting the closed form (rounded half away from
/// zero), then later stages are greedily tuned by integer amounts to close
/// the residual. Throws infeasible_target when sigma_sq is below the pure
/// cascade baseline (4^{m-1}-1)/12.
Schedule plan_schedule(const GridMap& grid, int n1, int nm, int c);

struct ShiftAmount {
    double alpha = 0.0;          ///< exact real shift
    long long integer_shift = 0; ///< applied shift, round half away from zero
    double residual = 0.0;       ///< alpha - integer_shift (sub-bin offset)
};

/// Shift taking the produced mean to the grid-unit target mean.
ShiftAmount shift_amount(const Schedule& s, const GridMap& grid);

/// Largest basis label the walk can reach at stage i (unbounded-walk bound:
/// S_1 = t_1, S_r = 2 S_{r-1} + 1 + t_r).
long long support_upper_bound(const Schedule& s, int i);

/// Guard qubits needed so the final-stage adder never wraps.
int guard_qubits_needed(const Schedule& s);

long long round_half_away(double x);

} // namespace galton
