#include "phonocool/quadrature.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phonocool/errors.hpp"

namespace phonocool::quad {

namespace {

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& f, double a, double b) {
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err);
    return {a, b, v, err};
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const AdaptiveOptions& opts) {
    if (!(b > a)) return {};
    std::priority_queue<Piece> heap;
    heap.push(kronrod(f, a, b));
    double total = heap.top().value;
    double err = heap.top().error;
    int count = 1;
    while (err > opts.abs_tol) {
        if (count >= opts.max_intervals) {
            std::ostringstream os;
            os << "adaptive quadrature did not converge on [" << a << ", " << b
               << "]: estimate " << err << " > tolerance " << opts.abs_tol;
            throw NumericalError(os.str(), err);
        }
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw NumericalError("adaptive quadrature hit interval resolution limit", err);
        }
        Piece lo = kronrod(f, worst.a, mid);
        Piece hi = kronrod(f, mid, worst.b);
        total += lo.value + hi.value - worst.value;
        err += lo.error + hi.error - worst.error;
        heap.push(lo);
        heap.push(hi);
        ++count;
    }
    // Re-sum to shed the drift from incremental updates.
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {total, err, count};
}

} // namespace phonocool::quad
