#include "smt/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "smt/coefficients.hpp"
#include "smt/interpolate.hpp"
#include "smt/specfun.hpp"

namespace smt {

SampledFn apply_D_power(const SampledFn& h, int r, const DiffMethod& method) {
    if (r < 0) throw std::invalid_argument("apply_D_power: r must be >= 0");
    validate(h);
    if (r == 0) return h;
    const std::vector<Rational> w = d_weights(r);
    SampledFn out;
    out.grid = h.grid;
    out.label = h.label;
    out.values.assign(h.grid.size(), 0.0);
    for (int j = 1; j <= r; ++j) {
        const SampledFn dj = differentiate(h, j, method);
        const double wj = static_cast<double>(w[static_cast<std::size_t>(j - 1)]);
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            const double t = h.grid.points[i];
            out.values[i] += wj * dj.values[i] / std::pow(t, 2 * r - j);
        }
    }
    return out;
}

SampledFn assemble_rhs(const SampledFn& h, int r, const DiffMethod& method) {
    if (r < 0) throw std::invalid_argument("assemble_rhs: r must be >= 0");
    validate(h);
    SampledFn out;
    out.grid = h.grid;
    out.label = "rhs";
    if (r == 0) {
        out.values = differentiate(h, 1, method).values;
        return out;
    }
    out.values.assign(h.grid.size(), 0.0);
    const std::vector<Rational> w = d_weights(r);
    std::vector<SampledFn> ders;  // orders 1..r+1
    ders.reserve(static_cast<std::size_t>(r) + 1);
    for (int j = 1; j <= r + 1; ++j) ders.push_back(differentiate(h, j, method));
    for (int j = 1; j <= r; ++j) {
        const double wj = static_cast<double>(w[static_cast<std::size_t>(j - 1)]);
        const auto& dj = ders[static_cast<std::size_t>(j - 1)].values;
        const auto& dj1 = ders[static_cast<std::size_t>(j)].values;
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            const double t = h.grid.points[i];
            out.values[i] += wj * (dj1[i] / std::pow(t, 2 * r - j) -
                                   (2 * r - j) * dj[i] / std::pow(t, 2 * r - j + 1));
        }
    }
    return out;
}

double detect_support_gap(const SampledFn& h, double threshold) {
    if (!(threshold >= 0.0)) throw std::invalid_argument("detect_support_gap: bad threshold");
    validate(h);
    double prefix_max = 0.0;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < h.values.size(); ++i) {
        prefix_max = std::max(prefix_max, std::abs(h.values[i]));
        if (prefix_max <= threshold) {
            best = i;
            found = true;
        } else {
            break;
        }
    }
    return found ? h.grid.points[best] : h.grid.points.front();
}

namespace {

struct SolveWindow {
    std::size_t i0 = 0;    // start index (t = eps' grid point)
    std::size_t iend = 0;  // last index with t <= 1 - eps
    double eps_prime = 0.0;
};

SolveWindow locate_window(const SampledFn& h, const InversionOptions& options) {
    SolveWindow w;
    if (options.eps_prime) {
        w.eps_prime = *options.eps_prime;
        if (w.eps_prime <= h.grid.front())
            w.i0 = 0;
        else
            w.i0 = h.grid.index_at_or_above(std::min(w.eps_prime, h.grid.back()));
        w.eps_prime = h.grid.points[w.i0];
    } else {
        double mx = 0.0;
        for (double v : h.values) mx = std::max(mx, std::abs(v));
        w.eps_prime = detect_support_gap(h, options.detect_threshold_rel * mx);
        w.i0 = h.grid.index_at_or_below(w.eps_prime);
    }
    const double t_end = 1.0 - options.eps;
    if (h.grid.front() > t_end)
        throw std::invalid_argument("inversion: no grid points at or below 1-eps");
    w.iend = h.grid.index_at_or_below(t_end);
    // A user-supplied gap that leaves no solve window is a configuration
    // error; an auto-detected one just means the data is all zero.
    if (options.eps_prime && w.i0 > w.iend)
        throw std::invalid_argument("inversion: empty solve window (eps_prime >= 1-eps)");
    return w;
}

// Shared ODE driver: solves sum_m (-1)^m a_m(t) y^(m)(t) = L(t) with zero
// state at the window start, y sampled at grid points; returns y over the
// full grid (zero outside the window).
std::vector<double> march_ivp(const SampledFn& L, const CoeffTable& table,
                              const Rational& prefactor, const SolveWindow& w) {
    const int K = table.K;
    const auto& ts = L.grid.points;
    std::vector<double> y(ts.size(), 0.0);

    auto a_eval = [&](int m, double t) { return ode_coeff_eval(table, m, t, prefactor); };

    if (K == 0) {
        for (std::size_t i = w.i0; i <= w.iend; ++i) {
            const double a0 = a_eval(0, ts[i]);
            if (a0 == 0.0) throw std::runtime_error("inversion: vanishing leading coefficient");
            y[i] = L.values[i] / a0;
        }
        return y;
    }

    auto rhs = [&](double t, const std::vector<double>& z, double Lval, std::vector<double>& dz) {
        const double aK = a_eval(K, t) * ((K % 2 != 0) ? -1.0 : 1.0);
        if (std::abs(aK) < 1e-300)
            throw std::runtime_error("inversion: vanishing leading coefficient");
        double acc = Lval;
        for (int m = 0; m < K; ++m) {
            const double am = a_eval(m, t) * ((m % 2 != 0) ? -1.0 : 1.0);
            acc -= am * z[static_cast<std::size_t>(m)];
        }
        for (int m = 0; m + 1 < K; ++m) dz[static_cast<std::size_t>(m)] = z[static_cast<std::size_t>(m) + 1];
        dz[static_cast<std::size_t>(K) - 1] = acc / aK;
    };

    std::vector<double> z(static_cast<std::size_t>(K), 0.0);
    std::vector<double> k1(z.size()), k2(z.size()), k3(z.size()), k4(z.size()), tmp(z.size());
    for (std::size_t i = w.i0; i < w.iend; ++i) {
        const double t0 = ts[i];
        const double t1 = ts[i + 1];
        const double dt = t1 - t0;
        const double tm = 0.5 * (t0 + t1);
        const double Lm = interpolate(L, tm);
        rhs(t0, z, L.values[i], k1);
        for (std::size_t m = 0; m < z.size(); ++m) tmp[m] = z[m] + 0.5 * dt * k1[m];
        rhs(tm, tmp, Lm, k2);
        for (std::size_t m = 0; m < z.size(); ++m) tmp[m] = z[m] + 0.5 * dt * k2[m];
        rhs(tm, tmp, Lm, k3);
        for (std::size_t m = 0; m < z.size(); ++m) tmp[m] = z[m] + dt * k3[m];
        rhs(t1, tmp, L.values[i + 1], k4);
        for (std::size_t m = 0; m < z.size(); ++m)
            z[m] += dt / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
        y[i + 1] = z[0];
    }
    return y;
}

// y sampled on the t-grid -> profile on ascending radii r = 1-t, restricted
// to the solve window and zero-extended over [1-eps', 1).
SampledFn profile_from_y(const Grid1D& tgrid, const std::vector<double>& y, const SolveWindow& w,
                         const std::string& label) {
    std::vector<double> radii;
    std::vector<double> vals;
    radii.reserve(w.iend + 1);
    vals.reserve(w.iend + 1);
    // Descending t = ascending r; indices iend..i0 give the solved band,
    // i0-1..0 the zero band near r = 1.
    for (std::size_t idx = w.iend + 1; idx-- > 0;) {
        radii.push_back(1.0 - tgrid.points[idx]);
        vals.push_back(idx >= w.i0 ? y[idx] : 0.0);
    }
    SampledFn out;
    out.grid = Grid1D::from_points(std::move(radii));
    out.values = std::move(vals);
    out.label = label;
    return out;
}

SampledFn scaled_h_radial(const SmtData& data) {
    SampledFn h = data.samples;
    for (std::size_t i = 0; i < h.values.size(); ++i)
        h.values[i] = h_from_smt(h.values[i], data.n, h.grid.points[i]);
    h.label = "h";
    return h;
}

SampledFn scaled_h_mode(const SmtData& data) {
    // Mode-data normalization: h = omega_{2k+2} t^{2k+1} / omega_{2k+1} * g
    // (no 4^k factor, unlike the radial scaling).
    const int k = (data.n - 3) / 2;
    const double c = surface_area(2 * k + 2) / surface_area(2 * k + 1);
    SampledFn h = data.samples;
    for (std::size_t i = 0; i < h.values.size(); ++i)
        h.values[i] *= c * std::pow(h.grid.points[i], 2 * k + 1);
    h.label = "h";
    return h;
}

void require_odd_dimension(const SmtData& data) {
    if (data.n < 3 || data.n % 2 == 0)
        throw std::invalid_argument("inversion: dimension must be odd >= 3");
}

}  // namespace

ReconstructionResult invert_radial(const SmtData& data, const InversionOptions& options) {
    require_odd_dimension(data);
    validate(data.samples);
    const int k = (data.n - 3) / 2;
    const SampledFn h = scaled_h_radial(data);
    const SolveWindow w = locate_window(h, options);
    const SampledFn L = assemble_rhs(h, 2 * k, options.diff);
    const CoeffTable table = ode_coeffs(k);
    const std::vector<double> y = march_ivp(L, table, radial_prefactor(k), w);
    ReconstructionResult result;
    result.profile = profile_from_y(h.grid, y, w, "f");
    result.eps_prime = w.eps_prime;
    result.method = "ode";
    result.ode_order = k;
    return result;
}

ReconstructionResult invert_mode(const SmtData& data, const InversionOptions& options) {
    require_odd_dimension(data);
    if (data.kind != SmtData::Kind::mode)
        throw std::invalid_argument("invert_mode: data must be a (q,s) mode");
    validate(data.samples);
    const int k = (data.n - 3) / 2;
    const int K = data.q + k;
    const SampledFn h = scaled_h_mode(data);
    const SolveWindow w = locate_window(h, options);
    const SampledFn L = assemble_rhs(h, data.q + 2 * k, options.diff);
    const CoeffTable table = ode_coeffs(K);
    const std::vector<double> y = march_ivp(L, table, mode_prefactor(data.q, k), w);
    ReconstructionResult result;
    result.profile = profile_from_y(h.grid, y, w, "f_mode");
    // f_{q,s}(r) = r^q * ftilde(r).
    for (std::size_t i = 0; i < result.profile.values.size(); ++i)
        result.profile.values[i] *= std::pow(result.profile.grid.points[i], data.q);
    result.eps_prime = w.eps_prime;
    result.method = "ode";
    result.ode_order = K;
    result.q = data.q;
    result.s = data.s;
    return result;
}

namespace {

// Cumulative integral of samples from the window start: Simpson steps with
// the midpoint from local cubic interpolation. acc[i] = integral from t[i0].
std::vector<double> cumulative_integral(const SampledFn& f, std::size_t i0, std::size_t iend) {
    std::vector<double> acc(f.grid.size(), 0.0);
    for (std::size_t i = i0; i < iend; ++i) {
        const double t0 = f.grid.points[i];
        const double t1 = f.grid.points[i + 1];
        const double mid = interpolate(f, 0.5 * (t0 + t1));
        acc[i + 1] = acc[i] + (t1 - t0) / 6.0 * (f.values[i] + 4.0 * mid + f.values[i + 1]);
    }
    return acc;
}

}  // namespace

ReconstructionResult analytic_invert_k1(const SmtData& data, const InversionOptions& options) {
    if (data.n != 5) throw std::invalid_argument("analytic_invert_k1: requires n = 5 data");
    validate(data.samples);
    const SampledFn h = scaled_h_radial(data);
    const SolveWindow w = locate_window(h, options);
    const SampledFn L = assemble_rhs(h, 2, options.diff);

    SampledFn integrand;
    integrand.grid = L.grid;
    integrand.values.resize(L.values.size());
    for (std::size_t i = 0; i < L.values.size(); ++i) {
        const double t = L.grid.points[i];
        integrand.values[i] = (1.0 - t) * std::exp(t) * L.values[i];
    }
    const std::vector<double> acc = cumulative_integral(integrand, w.i0, w.iend);

    std::vector<double> y(L.grid.size(), 0.0);
    for (std::size_t i = w.i0; i <= w.iend; ++i) {
        const double t = L.grid.points[i];
        const double omt = 1.0 - t;
        y[i] = t * std::exp(-t) / (8.0 * omt * omt * omt) * acc[i];
    }
    ReconstructionResult result;
    result.profile = profile_from_y(h.grid, y, w, "f");
    result.eps_prime = w.eps_prime;
    result.method = "analytic-k1";
    result.ode_order = 1;
    return result;
}

N7Homogeneous n7_homogeneous(double t) {
    // Both solutions are real/imaginary parts of Z = e^{lam t} P(t) / (1-t)^5
    // with lam = (-3 + i sqrt3)/2 and P = (t - 2t^2) - i sqrt3 t:
    // f1 = Re Z, f2 = -Im Z.
    using cd = std::complex<double>;
    const double s3 = std::sqrt(3.0);
    const cd lam(-1.5, 0.5 * s3);
    const cd P(t - 2.0 * t * t, -s3 * t);
    const cd Pp(1.0 - 4.0 * t, -s3);
    const cd Ppp(-4.0, 0.0);
    const double omt = 1.0 - t;
    const double g5 = std::pow(omt, -5);
    const double g6 = g5 / omt;
    const double g7 = g6 / omt;
    const cd e = std::exp(lam * t);
    const cd Z = e * P * g5;
    const cd Zp = e * ((lam * P + Pp) * g5 + 5.0 * P * g6);
    const cd Zpp = e * ((lam * lam * P + 2.0 * lam * Pp + Ppp) * g5 +
                        (10.0 * lam * P + 10.0 * Pp) * g6 + 30.0 * P * g7);
    N7Homogeneous out;
    out.f1 = Z.real();
    out.f1p = Zp.real();
    out.f1pp = Zpp.real();
    out.f2 = -Z.imag();
    out.f2p = -Zp.imag();
    out.f2pp = -Zpp.imag();
    out.wronskian = 2.0 * s3 * t * t * t * std::exp(-3.0 * t) * std::pow(omt, -9);
    return out;
}

N5Kernel n5_kernel(double t) {
    const double omt = 1.0 - t;
    N5Kernel out;
    out.y = t * std::exp(-t) / (omt * omt * omt);
    out.yp = std::exp(-t) * (1.0 + t + t * t) / (omt * omt * omt * omt);
    return out;
}

ReconstructionResult analytic_invert_k2(const SmtData& data, const InversionOptions& options) {
    if (data.n != 7) throw std::invalid_argument("analytic_invert_k2: requires n = 7 data");
    validate(data.samples);
    const SampledFn h = scaled_h_radial(data);
    const SolveWindow w = locate_window(h, options);
    const SampledFn L = assemble_rhs(h, 4, options.diff);

    SampledFn g1, g2;  // f2*L*R and f1*L*R
    g1.grid = L.grid;
    g2.grid = L.grid;
    g1.values.resize(L.values.size());
    g2.values.resize(L.values.size());
    for (std::size_t i = 0; i < L.values.size(); ++i) {
        const double t = L.grid.points[i];
        const N7Homogeneous hm = n7_homogeneous(t);
        const double omt = 1.0 - t;
        const double R = t * t * L.values[i] / (128.0 * omt * omt * omt * hm.wronskian);
        g1.values[i] = hm.f2 * R;
        g2.values[i] = hm.f1 * R;
    }
    const std::vector<double> acc1 = cumulative_integral(g1, w.i0, w.iend);
    const std::vector<double> acc2 = cumulative_integral(g2, w.i0, w.iend);

    std::vector<double> y(L.grid.size(), 0.0);
    for (std::size_t i = w.i0; i <= w.iend; ++i) {
        const N7Homogeneous hm = n7_homogeneous(L.grid.points[i]);
        y[i] = -hm.f1 * acc1[i] + hm.f2 * acc2[i];
    }
    ReconstructionResult result;
    result.profile = profile_from_y(h.grid, y, w, "f");
    result.eps_prime = w.eps_prime;
    result.method = "analytic-k2";
    result.ode_order = 2;
    return result;
}

FieldSamples recombine(const std::vector<ReconstructionResult>& modes, const SphereGrid& grid) {
    if (modes.empty()) throw std::invalid_argument("recombine: no modes");
    const Grid1D& radii = modes.front().profile.grid;
    for (const auto& m : modes) {
        if (m.profile.grid.points != radii.points)
            throw std::invalid_argument("recombine: inconsistent radial grids");
    }
    FieldSamples out;
    out.grid = grid;
    out.radii = radii;
    const std::size_t nt = grid.theta.size();
    const std::size_t np = grid.phi.size();
    const std::size_t nr = radii.size();
    out.values.assign(nt * np * nr, 0.0);
    for (const auto& m : modes) {
        for (std::size_t i = 0; i < nt; ++i) {
            for (std::size_t j = 0; j < np; ++j) {
                const double yv = real_sph_harm(m.q, m.s, grid.theta[i], grid.phi[j]);
                double* row = &out.values[(i * np + j) * nr];
                for (std::size_t l = 0; l < nr; ++l) row[l] += yv * m.profile.values[l];
            }
        }
    }
    return out;
}

ErrorMetrics error_metrics(const SampledFn& rec, const std::function<double(double)>& truth,
                           double a, double b) {
    if (!(a < b)) throw std::invalid_argument("error_metrics: need a < b");
    validate(rec);
    const auto& r = rec.grid.points;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= a && r[i] <= b) idx.push_back(i);
    if (idx.size() < 2) throw std::invalid_argument("error_metrics: interval holds < 2 samples");

    double num = 0.0, den = 0.0, mx = 0.0;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        const std::size_t i = idx[pos];
        // Trapezoid weight of node i within [a,b].
        double wgt = 0.0;
        if (pos + 1 < idx.size()) wgt += 0.5 * (r[idx[pos + 1]] - r[i]);
        if (pos > 0) wgt += 0.5 * (r[i] - r[idx[pos - 1]]);
        const double tv = truth(r[i]);
        const double dv = rec.values[i] - tv;
        num += wgt * dv * dv;
        den += wgt * tv * tv;
        mx = std::max(mx, std::abs(dv));
    }
    ErrorMetrics m;
    m.interval_lo = a;
    m.interval_hi = b;
    m.max_abs = mx;
    if (den > 0.0) {
        m.rel_l2 = std::sqrt(num / den);
    } else {
        m.rel_l2 = std::sqrt(num);
        m.absolute = true;
    }
    return m;
}

}  // namespace smt
