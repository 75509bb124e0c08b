#include "mzrecoil/quadrature.hpp"

#include <cmath>

namespace mzr {

namespace {

using cplx = std::complex<double>;

struct SimpsonStep {
    cplx whole;
    cplx fa, fm, fb;
};

cplx simpson(const cplx& fa, const cplx& fm, const cplx& fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

cplx recurse(const std::function<cplx(double)>& f, double a, double b, cplx fa, cplx fm, cplx fb,
             cplx whole, double tol, int depth, int max_depth, bool& converged) {
    const double m = 0.5 * (a + b);
    const cplx flm = f(0.5 * (a + m));
    const cplx frm = f(0.5 * (m + b));
    const cplx left = simpson(fa, flm, fm, a, m);
    const cplx right = simpson(fm, frm, fb, m, b);
    const cplx delta = left + right - whole;
    if (std::abs(delta.real()) <= 15.0 * tol && std::abs(delta.imag()) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth >= max_depth) {
        converged = false;
        return left + right + delta / 15.0;
    }
    return recurse(f, a, m, fa, flm, fm, left, tol / 2, depth + 1, max_depth, converged) +
           recurse(f, m, b, fm, frm, fb, right, tol / 2, depth + 1, max_depth, converged);
}

} // namespace

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                      int max_depth) {
    if (a == b) return {0.0, 0.0};
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    bool converged = true;
    const cplx whole = simpson(fa, fm, fb, a, b);
    const cplx result = recurse(f, a, b, fa, fm, fb, whole, abs_tol, 0, max_depth, converged);
    if (!converged)
        throw numeric_error("adaptive_simpson: no convergence at depth " +
                            std::to_string(max_depth) + " on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    return result;
}

double adaptive_simpson_real(const std::function<double(double)>& f, double a, double b,
                             double abs_tol, int max_depth) {
    return adaptive_simpson([&](double t) { return cplx(f(t), 0.0); }, a, b, abs_tol, max_depth)
        .real();
}

void simpson_nodes(double a, double b, int n, std::vector<double>& nodes,
                   std::vector<double>& weights) {
    if (n < 3 || n % 2 == 0) throw contract_error("simpson_nodes: n must be odd and >= 3");
    nodes.resize(n);
    weights.resize(n);
    const double h = (b - a) / (n - 1);
    for (int i = 0; i < n; ++i) {
        nodes[i] = a + h * i;
        double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        weights[i] = w * h / 3.0;
    }
}

} // namespace mzr
