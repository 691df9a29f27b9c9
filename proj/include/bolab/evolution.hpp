#ifndef BOLAB_EVOLUTION_HPP
#define BOLAB_EVOLUTION_HPP

#include "bolab/field.hpp"

#include <string>
#include <vector>

namespace bolab {

/// Free dispersive propagator e^{t dx|D|}: multiplier e^{i t xi |xi|}.
SampledField free_propagate(const SampledField& f, double t);

struct Snapshot {
    double time = 0.0;
    SampledField field;
    double mean = 0.0;
    double l2 = 0.0;
};

struct Trajectory {
    Grid1D grid;
    std::vector<Snapshot> snapshots;

    double l2_drift() const;   // max |l2(t) - l2(0)|
    double mean_drift() const; // max |mean(t) - mean(0)|
};

struct EvolveOptions {
    double dt = 0.0;            // 0 picks dt from the stability constraint
    double dealias = 2.0 / 3.0; // retained fraction of the band, in [1/2, 2/3]
    double conservation_tol = 1e-6;
    /// Relative energy allowed in the top 10% of frequencies of u0.
    double highfreq_tol = 1e-8;
};

/// Integrating-factor RK4 for du/dt = dx|D|u - dx(u^2) with the quadratic
/// term dealiased by spectral truncation. Snapshots are recorded at the
/// requested output times (each must be a multiple of the step within
/// rounding). Throws numerical_error on blow-up or conservation drift.
Trajectory bo_evolve(const SampledField& u0, const std::vector<double>& output_times,
                     const EvolveOptions& opt = {});

/// Convenience: evolve to a single time T and return the final field.
SampledField bo_evolve_to(const SampledField& u0, double T, const EvolveOptions& opt = {});

/// Hardy-mass monotonicity data: (||Pi u0||_2, ||Pi u_t||_2). The evolved
/// field comes from whatever evolution is exact for the data at hand (the
/// multisoliton engine or bo_evolve).
std::pair<double, double> contraction_check(const SampledField& u0, const SampledField& u_t);

/// One CSV per snapshot (x, u) plus a JSON manifest with times, grid and
/// conservation diagnostics. Returns the list of files written.
std::vector<std::string> write_trajectory(const Trajectory& traj, const std::string& out_dir,
                                          const std::string& stem = "snapshot");

} // namespace bolab

#endif
