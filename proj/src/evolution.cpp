#include "bolab/evolution.hpp"

#include "bolab/engine.hpp"
#include "bolab/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace bolab {

SampledField free_propagate(const SampledField& f, double t) {
    const Grid1D& g = f.grid;
    const Fft& fft = fft_for(g.n);
    std::vector<cplx> hat = fft.forward(f.values);
    for (int k = 0; k < g.n; ++k) {
        const double xi = g.xi(k);
        hat[k] *= std::polar(1.0, t * xi * std::abs(xi));
    }
    return SampledField(g, fft.inverse(hat));
}

double Trajectory::l2_drift() const {
    if (snapshots.empty()) return 0.0;
    double d = 0.0;
    for (const Snapshot& s : snapshots) d = std::max(d, std::abs(s.l2 - snapshots[0].l2));
    return d;
}

double Trajectory::mean_drift() const {
    if (snapshots.empty()) return 0.0;
    double d = 0.0;
    for (const Snapshot& s : snapshots) d = std::max(d, std::abs(s.mean - snapshots[0].mean));
    return d;
}

namespace {

struct Stepper {
    const Grid1D& g;
    const Fft& fft;
    std::vector<double> sym;   // xi |xi|
    std::vector<char> keep;    // dealias mask
    std::vector<double> xi_d;  // xi, masked
    std::vector<cplx> u, sq;

    Stepper(const Grid1D& grid, double dealias)
        : g(grid), fft(fft_for(grid.n)), sym(grid.n), keep(grid.n), xi_d(grid.n),
          u(grid.n), sq(grid.n) {
        const double cut = dealias * g.nyquist();
        for (int k = 0; k < g.n; ++k) {
            const double xi = g.xi(k);
            sym[k] = xi * std::abs(xi);
            keep[k] = std::abs(xi) <= cut ? 1 : 0;
            xi_d[k] = xi;
        }
    }

    // N(uhat) = -i xi fft(u^2), truncated
    void nonlinear(const std::vector<cplx>& uhat, std::vector<cplx>& out) {
        fft.inverse(uhat.data(), u.data());
        for (int j = 0; j < g.n; ++j) {
            const double ur = u[j].real();
            sq[j] = cplx(ur * ur);
        }
        fft.forward(sq.data(), out.data());
        for (int k = 0; k < g.n; ++k)
            out[k] = keep[k] ? cplx(0.0, -xi_d[k]) * out[k] : cplx(0.0);
    }
};

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& c : v) m = std::max(m, std::abs(c));
    return m;
}

} // namespace

Trajectory bo_evolve(const SampledField& u0, const std::vector<double>& output_times,
                     const EvolveOptions& opt) {
    const Grid1D& g = u0.grid;
    if (opt.dealias < 0.5 - 1e-12 || opt.dealias > 2.0 / 3.0 + 1e-12)
        throw std::invalid_argument("bo_evolve: dealias fraction outside [1/2, 2/3]");
    for (size_t i = 0; i < output_times.size(); ++i) {
        if (output_times[i] < 0.0 || (i > 0 && output_times[i] <= output_times[i - 1]))
            throw std::invalid_argument("bo_evolve: output times must increase and be >= 0");
    }

    const double xi_max = opt.dealias * g.nyquist();
    double dt = opt.dt;
    if (dt <= 0.0) dt = 1.0 / (xi_max * xi_max);
    if (dt * xi_max * xi_max > 1.5 + 1e-9)
        throw std::invalid_argument("bo_evolve: dt does not resolve the stiffest retained mode");

    const Fft& fft = fft_for(g.n);
    std::vector<cplx> uhat = fft.forward(u0.values);

    // spectral-accuracy guard: initial energy in the top 10% of the band
    {
        double top = 0.0, tot = 0.0;
        for (int k = 0; k < g.n; ++k) {
            const double e = std::norm(uhat[k]);
            tot += e;
            if (std::abs(g.xi(k)) >= 0.9 * g.nyquist()) top += e;
        }
        if (tot > 0.0 && top > opt.highfreq_tol * tot)
            throw std::invalid_argument(
                "bo_evolve: initial field has too much energy near Nyquist "
                "(refine the grid)");
    }

    Stepper st(g, opt.dealias);
    Trajectory traj;
    traj.grid = g;

    auto record = [&](double time) {
        Snapshot s;
        s.time = time;
        s.field = SampledField(g, fft.inverse(uhat));
        for (cplx& v : s.field.values) v = cplx(v.real());
        s.mean = uhat[0].real() / g.n;
        s.l2 = norm_l2(s.field);
        traj.snapshots.push_back(std::move(s));
    };

    double t = 0.0;
    if (!output_times.empty() && output_times.front() == 0.0) record(0.0);
    const double l2_0 = norm_l2(u0);

    std::vector<cplx> a(g.n), b(g.n), c(g.n), d(g.n), stage(g.n);
    for (double T : output_times) {
        if (T == 0.0) continue;
        const long steps = std::max(1L, std::lround((T - t) / dt));
        const double h = (T - t) / steps;
        std::vector<cplx> E(g.n), E2(g.n);
        for (int k = 0; k < g.n; ++k) {
            E[k] = std::polar(1.0, st.sym[k] * h * 0.5);
            E2[k] = E[k] * E[k];
        }
        for (long s = 0; s < steps; ++s) {
            st.nonlinear(uhat, a);
            for (int k = 0; k < g.n; ++k) stage[k] = E[k] * (uhat[k] + 0.5 * h * a[k]);
            st.nonlinear(stage, b);
            for (int k = 0; k < g.n; ++k) stage[k] = E[k] * uhat[k] + 0.5 * h * b[k];
            st.nonlinear(stage, c);
            for (int k = 0; k < g.n; ++k) stage[k] = E2[k] * uhat[k] + h * E[k] * c[k];
            st.nonlinear(stage, d);
            for (int k = 0; k < g.n; ++k)
                uhat[k] = E2[k] * uhat[k] +
                          h / 6.0 * (E2[k] * a[k] + 2.0 * E[k] * (b[k] + c[k]) + d[k]);
        }
        t = T;
        if (!std::isfinite(max_abs(uhat)) || max_abs(uhat) > 1e12)
            throw numerical_error("bo_evolve: blow-up detected at t=" + std::to_string(t));
        record(t);
        const double drift = std::abs(traj.snapshots.back().l2 - l2_0);
        if (drift > opt.conservation_tol)
            throw numerical_error("bo_evolve: L2 conservation drift " +
                                  std::to_string(drift) + " at t=" + std::to_string(t));
    }
    return traj;
}

SampledField bo_evolve_to(const SampledField& u0, double T, const EvolveOptions& opt) {
    if (T == 0.0) return u0;
    Trajectory tr = bo_evolve(u0, {T}, opt);
    return std::move(tr.snapshots.back().field);
}

std::pair<double, double> contraction_check(const SampledField& u0, const SampledField& u_t) {
    const double in = std::sqrt(szego_project(u0).norm2_sq());
    const double out = std::sqrt(szego_project(u_t).norm2_sq());
    return {in, out};
}

std::vector<std::string> write_trajectory(const Trajectory& traj, const std::string& out_dir,
                                          const std::string& stem) {
    std::vector<std::string> files;
    nlohmann::json manifest;
    manifest["grid"] = {{"x_min", traj.grid.x_min},
                        {"x_max", traj.grid.x_max},
                        {"n", traj.grid.n}};
    manifest["times"] = nlohmann::json::array();
    manifest["l2"] = nlohmann::json::array();
    manifest["mean"] = nlohmann::json::array();
    manifest["files"] = nlohmann::json::array();

    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const Snapshot& s = traj.snapshots[i];
        const std::string name = stem + "_" + std::to_string(i) + ".csv";
        const std::string path = out_dir + "/" + name;
        CsvWriter csv(path, {"x", "u"});
        for (int j = 0; j < traj.grid.n; ++j)
            csv.row({traj.grid.x(j), s.field.values[j].real()});
        csv.close();
        files.push_back(path);
        manifest["times"].push_back(s.time);
        manifest["l2"].push_back(s.l2);
        manifest["mean"].push_back(s.mean);
        manifest["files"].push_back(name);
    }
    const std::string mpath = out_dir + "/" + stem + "_manifest.json";
    write_file_atomic(mpath, manifest.dump(2) + "\n");
    files.push_back(mpath);
    return files;
}

} // namespace bolab
