#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

#include "bucklab/errors.hpp"

namespace bucklab {

/// Closed interval known to contain a root (f changes sign across it).
template <typename Scalar>
struct SignChange {
    Scalar lo = 0;
    Scalar hi = 0;
    Scalar f_lo = 0;
    Scalar f_hi = 0;
};

/// Walk [start, stop] in increments of `step` and return the first interval
/// with a sign change (or an exact zero, returned as a degenerate interval).
template <typename F, typename Scalar>
std::optional<SignChange<Scalar>> find_sign_change(F&& f, Scalar start, Scalar step,
                                                   Scalar stop) {
    if (!(step > Scalar(0))) throw std::invalid_argument("scan step must be positive");
    Scalar x0 = start;
    Scalar f0 = f(x0);
    if (f0 == Scalar(0)) return SignChange<Scalar>{x0, x0, f0, f0};
    while (x0 < stop) {
        const Scalar x1 = x0 + step;
        const Scalar f1 = f(x1);
        if (f1 == Scalar(0)) return SignChange<Scalar>{x1, x1, f1, f1};
        if ((f0 < Scalar(0)) != (f1 < Scalar(0))) return SignChange<Scalar>{x0, x1, f0, f1};
        x0 = x1;
        f0 = f1;
    }
    return std::nullopt;
}

/// Bisect a sign change down to interval width <= xtol (or to adjacent
/// doubles if xtol is below machine resolution at the root). Returns the
/// candidate among {lo, mid, hi} with the smallest |f|, so the residual at
/// the returned point is as small as the final interval allows.
template <typename F, typename Scalar>
Scalar bisect(F&& f, Scalar lo, Scalar hi, Scalar f_lo, Scalar f_hi, Scalar xtol) {
    if (lo == hi) return lo;
    if ((f_lo < Scalar(0)) == (f_hi < Scalar(0)))
        throw NoCrossing("bisect: endpoints have the same sign");
    while (hi - lo > xtol) {
        const Scalar mid = lo + (hi - lo) / Scalar(2);
        if (mid <= lo || mid >= hi) break;  // interval is two adjacent doubles
        const Scalar fm = f(mid);
        if (fm == Scalar(0)) return mid;
        if ((fm < Scalar(0)) == (f_lo < Scalar(0))) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    const Scalar fm = f(mid);
    Scalar best = mid;
    Scalar fb = std::abs(fm);
    if (std::abs(f_lo) < fb) {
        best = lo;
        fb = std::abs(f_lo);
    }
    if (std::abs(f_hi) < fb) best = hi;
    return best;
}

template <typename F, typename Scalar>
Scalar bisect(F&& f, Scalar lo, Scalar hi, Scalar xtol) {
    return bisect(f, lo, hi, f(lo), f(hi), xtol);
}

/// Golden-section minimization of a unimodal function on [lo, hi] down to an
/// argument interval of width xtol. Returns (argmin, min).
template <typename F, typename Scalar>
std::pair<Scalar, Scalar> golden_min(F&& f, Scalar lo, Scalar hi, Scalar xtol) {
    static const Scalar invphi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar a = lo, b = hi;
    Scalar c = b - invphi * (b - a);
    Scalar d = a + invphi * (b - a);
    Scalar fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace bucklab
