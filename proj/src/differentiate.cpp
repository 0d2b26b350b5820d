#include "smt/differentiate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smt {

DiffMethod DiffMethod::parse(const std::string& text) {
    DiffMethod m;
    std::string head = text;
    std::string params;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        head = text.substr(0, pos);
        params = text.substr(pos + 1);
    }
    if (head == "polyfit" || head == "local-polyfit") {
        m.kind = Kind::local_polyfit;
    } else if (head == "stencil" || head == "central-stencil") {
        m.kind = Kind::central_stencil;
    } else {
        throw std::invalid_argument("DiffMethod: unknown method '" + head + "'");
    }
    std::istringstream in(params);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("DiffMethod: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const int value = std::stoi(item.substr(eq + 1));
        if (key == "degree" && m.kind == Kind::local_polyfit)
            m.degree = value;
        else if (key == "window" && m.kind == Kind::local_polyfit)
            m.window = value;
        else if (key == "width" && m.kind == Kind::central_stencil)
            m.width = value;
        else
            throw std::invalid_argument("DiffMethod: unknown parameter '" + key + "'");
    }
    return m;
}

std::string DiffMethod::to_string() const {
    std::ostringstream out;
    if (kind == Kind::local_polyfit) {
        out << "polyfit";
        if (degree > 0 || window > 0) {
            out << ':';
            bool first = true;
            if (degree > 0) {
                out << "degree=" << degree;
                first = false;
            }
            if (window > 0) out << (first ? "" : ",") << "window=" << window;
        }
    } else {
        out << "stencil";
        if (width > 0) out << ":width=" << width;
    }
    return out.str();
}

std::vector<double> stencil_weights(double z, const std::vector<double>& x, int d) {
    // Fornberg's recursion for the weights of all derivatives 0..d at z.
    const int n = static_cast<int>(x.size()) - 1;
    if (n < d) throw std::invalid_argument("stencil_weights: need more than d points");
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n) + 1,
                                       std::vector<double>(static_cast<std::size_t>(d) + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, d);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[static_cast<std::size_t>(i)] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 *
                        (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                         c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
                        c2;
                }
                c[static_cast<std::size_t>(i)][0] =
                    -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
                    c3;
            }
            c[static_cast<std::size_t>(j)][0] *= c4 / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = c[i][static_cast<std::size_t>(d)];
    return w;
}

namespace {

SampledFn polyfit_derivative(const SampledFn& s, int d, int degree, int window) {
    const auto& ts = s.grid.points;
    const int n = static_cast<int>(ts.size());
    if (window > n) throw std::invalid_argument("differentiate: window exceeds grid size");
    if (degree < d) throw std::invalid_argument("differentiate: fit degree below derivative order");
    if (degree + 1 > window)
        throw std::invalid_argument("differentiate: window too small for fit degree");

    SampledFn out;
    out.grid = s.grid;
    out.label = s.label;
    out.values.resize(static_cast<std::size_t>(n));

    const int half = window / 2;
    double dfact = 1.0;
    for (int j = 2; j <= d; ++j) dfact *= j;

    Eigen::MatrixXd V(window, degree + 1);
    Eigen::VectorXd y(window);
    for (int i = 0; i < n; ++i) {
        const int lo = std::min(std::max(0, i - half), n - window);
        const double scale = std::max(std::abs(ts[static_cast<std::size_t>(lo)] -
                                               ts[static_cast<std::size_t>(i)]),
                                      std::abs(ts[static_cast<std::size_t>(lo + window - 1)] -
                                               ts[static_cast<std::size_t>(i)]));
        for (int r = 0; r < window; ++r) {
            const double xs =
                (ts[static_cast<std::size_t>(lo + r)] - ts[static_cast<std::size_t>(i)]) / scale;
            double p = 1.0;
            for (int cidx = 0; cidx <= degree; ++cidx) {
                V(r, cidx) = p;
                p *= xs;
            }
            y(r) = s.values[static_cast<std::size_t>(lo + r)];
        }
        const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(y);
        out.values[static_cast<std::size_t>(i)] = dfact * coef(d) / std::pow(scale, d);
    }
    return out;
}

SampledFn stencil_derivative(const SampledFn& s, int d, int width) {
    const auto& ts = s.grid.points;
    const int n = static_cast<int>(ts.size());
    if (!s.grid.uniform)
        throw std::invalid_argument("differentiate: central-stencil requires a uniform grid");
    if (width > n) throw std::invalid_argument("differentiate: stencil width exceeds grid size");
    if (width <= d) throw std::invalid_argument("differentiate: stencil width must exceed d");

    SampledFn out;
    out.grid = s.grid;
    out.label = s.label;
    out.values.resize(static_cast<std::size_t>(n));

    const int half = width / 2;
    std::vector<double> xs(static_cast<std::size_t>(width));
    for (int i = 0; i < n; ++i) {
        const int lo = std::min(std::max(0, i - half), n - width);
        for (int r = 0; r < width; ++r) xs[static_cast<std::size_t>(r)] = ts[static_cast<std::size_t>(lo + r)];
        const std::vector<double> w = stencil_weights(ts[static_cast<std::size_t>(i)], xs, d);
        double acc = 0.0;
        for (int r = 0; r < width; ++r)
            acc += w[static_cast<std::size_t>(r)] * s.values[static_cast<std::size_t>(lo + r)];
        out.values[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

}  // namespace

SampledFn differentiate(const SampledFn& s, int d, const DiffMethod& method) {
    if (d < 1) throw std::invalid_argument("differentiate: d must be >= 1");
    validate(s);
    if (method.kind == DiffMethod::Kind::local_polyfit) {
        return polyfit_derivative(s, d, method.effective_degree(d), method.effective_window(d));
    }
    return stencil_derivative(s, d, method.effective_width(d));
}

}  // namespace smt
